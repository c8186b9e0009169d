//! The 2-chain diagram: first- and second-kind states joined by ladder edges.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use super::fixtures::{self, Drawn};
use super::{build_chain, label, shifted, Direction, Ladder, Spectrum, State, WeightedState};
use crate::arith::{parse_alpha, AlphaRat};
use crate::error::Result;
use crate::model::{CubicAlgebraData, Model, SeedType, Status};

#[derive(Clone, Debug, PartialEq)]
pub enum EdgeCoeff {
    Exact(AlphaRat),
    /// Nonzero, with a coefficient that depends on the antiderivative constant.
    Proportional,
}

impl EdgeCoeff {
    fn text(&self) -> String {
        match self {
            EdgeCoeff::Exact(c) => c.to_string(),
            EdgeCoeff::Proportional => "proportional".into(),
        }
    }
}

/// What a ladder does to one node.
#[derive(Clone, Debug, PartialEq)]
pub enum Action {
    Zero,
    To {
        label: String,
        coeff: EdgeCoeff,
    },
    /// Nonzero, onto no node of the diagram.
    Out,
}

impl Action {
    pub fn describe(&self) -> String {
        match self {
            Action::Zero => "0".into(),
            Action::To { label, coeff } => format!("{} {label}", coeff.text()),
            Action::Out => "outside".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DiagramNode {
    pub label: String,
    pub weight: AlphaRat,
    pub kind: &'static str,
}

#[derive(Clone, Debug)]
pub struct DiagramEdge {
    pub from: String,
    pub op: Ladder,
    pub action: Action,
}

#[derive(Clone, Debug)]
pub struct ChainDiagram {
    pub ty: SeedType,
    pub depth: u32,
    pub nodes: Vec<DiagramNode>,
    pub edges: Vec<DiagramEdge>,
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\""))
}

impl ChainDiagram {
    pub fn edge(&self, from: &str, op: Ladder) -> Option<&Action> {
        self.edges
            .iter()
            .find(|e| e.from == from && e.op == op)
            .map(|e| &e.action)
    }

    pub fn node(&self, l: &str) -> Option<&DiagramNode> {
        self.nodes.iter().find(|n| n.label == l)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph chains_{} {{", self.ty);
        let _ = writeln!(s, "  rankdir=LR;");
        for n in &self.nodes {
            let _ = writeln!(
                s,
                "  {} [weight={}, kind={}];",
                quote(&n.label),
                quote(&n.weight.to_string()),
                quote(n.kind)
            );
        }
        for (i, e) in self.edges.iter().enumerate() {
            let from = quote(&e.from);
            let op = quote(e.op.as_str());
            match &e.action {
                Action::Zero => {
                    let z = quote(&format!("zero{i}"));
                    let _ = writeln!(s, "  {z} [shape=point, label=\"0\"];");
                    let _ = writeln!(s, "  {from} -> {z} [op={op}, coeff=\"zero\"];");
                }
                Action::To { label, coeff } => {
                    let _ = writeln!(
                        s,
                        "  {from} -> {} [op={op}, coeff={}];",
                        quote(label),
                        quote(&coeff.text())
                    );
                }
                Action::Out => {
                    let o = quote(&format!("{} {}", e.op, e.from));
                    let _ = writeln!(s, "  {o} [shape=plaintext];");
                    let _ = writeln!(s, "  {from} -> {o} [op={op}, coeff=\"outside\"];");
                }
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> Value {
        let nodes: Vec<Value> = self
            .nodes
            .iter()
            .map(|n| json!({"label": n.label, "weight": n.weight.to_string(), "kind": n.kind}))
            .collect();
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|e| {
                let (to, coeff) = match &e.action {
                    Action::Zero => (Value::Null, json!("zero")),
                    Action::To { label, coeff } => (json!(label), json!(coeff.text())),
                    Action::Out => (Value::Null, json!("outside")),
                };
                json!({"from": e.from, "op": e.op.as_str(), "to": to, "coeff": coeff})
            })
            .collect();
        json!({
            "schema": "xladder/1",
            "type": self.ty.to_string(),
            "depth": self.depth,
            "nodes": nodes,
            "edges": edges,
        })
    }
}

fn kind(ws: &WeightedState) -> &'static str {
    if ws.is_generalized() {
        "generalized"
    } else if ws.state.is_second_kind() {
        "tilde"
    } else {
        "psi"
    }
}

fn classify(
    m: &Model,
    ws: &WeightedState,
    op: Ladder,
    nodes: &BTreeMap<String, WeightedState>,
) -> Action {
    let img = ws.state.apply(op.operator(m)).simplified();
    if img.is_zero() {
        return Action::Zero;
    }
    let w = shifted(&ws.weight, op.step());
    let target = match &img {
        State::First(_) => label("psi", &w),
        State::Second(_) => label("tilde", &w),
    };
    let Some(t) = nodes.get(&target) else {
        return Action::Out;
    };
    if let Some(c) = img.ratio_to(&t.state) {
        return Action::To {
            label: target,
            coeff: EdgeCoeff::Exact(c),
        };
    }
    // a second-kind image onto a tilde node with another anchor is fixed only
    // up to first-chain states
    if let (State::Second(a), State::Second(b)) = (&img, &t.state) {
        if a.f.ratio_to(b.anchor()).is_some() && a.anchor() != b.anchor() {
            return Action::To {
                label: target,
                coeff: EdgeCoeff::Proportional,
            };
        }
    }
    Action::Out
}

/// Both chains of type `ty`: the roster, their partners and `depth - 1` further
/// steps along every generator, with every ladder edge classified exactly.
pub fn chain_diagram(
    m: &Model,
    data: &CubicAlgebraData,
    sp: &Spectrum,
    depth: u32,
) -> Result<ChainDiagram> {
    let mut nodes: BTreeMap<String, WeightedState> = BTreeMap::new();
    for ws in sp.named.values().chain(sp.tildes.values()) {
        nodes.insert(ws.label.clone(), ws.clone());
    }
    for g in fixtures::generators(m.ty) {
        let w = parse_alpha(g.weight)?;
        let l = label(if g.tilde { "tilde" } else { "psi" }, &w);
        let Some(start) = nodes.get(&l).cloned() else {
            continue;
        };
        let dir = if g.up { Direction::Up } else { Direction::Down };
        let chain = build_chain(m, data, &start, dir, depth.saturating_sub(1))?;
        for e in chain.elements.into_iter().skip(1) {
            nodes.entry(e.label.clone()).or_insert(e);
        }
    }
    for ws in &sp.generalized {
        nodes.insert(ws.label.clone(), ws.clone());
    }
    let mut out_nodes: Vec<DiagramNode> = nodes
        .values()
        .map(|ws| DiagramNode {
            label: ws.label.clone(),
            weight: ws.weight.clone(),
            kind: kind(ws),
        })
        .collect();
    out_nodes.sort_by(|a, b| (a.kind, &a.label).cmp(&(b.kind, &b.label)));
    let mut edges = Vec::new();
    for n in &out_nodes {
        let ws = &nodes[&n.label];
        for op in [Ladder::B, Ladder::BDag] {
            edges.push(DiagramEdge {
                from: n.label.clone(),
                op,
                action: classify(m, ws, op, &nodes),
            });
        }
    }
    Ok(ChainDiagram {
        ty: m.ty,
        depth,
        nodes: out_nodes,
        edges,
    })
}

/// One drawn edge of a figure window against the computed diagram.
#[derive(Clone, Debug)]
pub struct WindowCheck {
    pub node: String,
    pub op: Ladder,
    pub drawn: Drawn,
    pub computed: Option<Action>,
    pub status: Status,
}

/// Compares the diagram with the hand-encoded figure window of its type.
pub fn compare_window(d: &ChainDiagram) -> Vec<WindowCheck> {
    let window = fixtures::figure_window(d.ty);
    let in_window = |l: &str| window.iter().any(|(n, _, _)| n == l);
    let mut out = Vec::new();
    for (node, b, bd) in &window {
        for (op, drawn) in [(Ladder::B, b), (Ladder::BDag, bd)] {
            let computed = d.edge(node, op).cloned();
            let ok = match (drawn, &computed) {
                (_, None) => false,
                (Drawn::Zero, Some(a)) => *a == Action::Zero,
                (Drawn::To(t), Some(Action::To { label, .. })) => label == t,
                (Drawn::To(_), Some(_)) => false,
                (Drawn::Out, Some(Action::Out)) => true,
                (Drawn::Out, Some(Action::To { label, .. })) => !in_window(label),
                (Drawn::Out, Some(Action::Zero)) => false,
                (Drawn::Undrawn, Some(a)) => *a == Action::Zero,
            };
            let status = if ok {
                Status::Pass
            } else if computed.is_some() {
                Status::PrintedMismatch
            } else {
                Status::Fail
            };
            out.push(WindowCheck {
                node: node.clone(),
                op,
                drawn: drawn.clone(),
                computed,
                status,
            });
        }
    }
    out
}
