//! Registry of verification items: every identity the engine decides, grouped
//! in suites and reported with its printed counterpart.

use std::fmt;
use std::str::FromStr;

use astro_float::BigFloat;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{format_poly, parse_alpha, rat, AlphaRat, NHPoly, Poly, Rational, Ring, XRat};
use crate::error::{Error, Result};
use crate::model::{
    algebra_discrepancies, closed_form_potential, cubic_algebra, fn_poly, generic_chain_coeffs,
    gn_poly, schrodinger, shift_poly, table_discrepancies, CubicAlgebraData, Discrepancy, Model,
    SeedType, Status,
};
use crate::numeric::{radius_estimate, sample_points_where, Jet, Num, NumModel, Point, TOLERANCE};
use crate::spectra::{
    build_chain, chain_diagram, compare_window, diagonal_arrows, fixtures, generalized_arrows,
    label, wronskian_is_one, Action, Chain, Direction, Ladder, Spectrum, State, WeightedState,
};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Suite {
    Algebra,
    Generic,
    ZeroModes,
    Chains,
    SecondChain,
    Diagram,
    Numeric,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Algebra,
        Suite::Generic,
        Suite::ZeroModes,
        Suite::Chains,
        Suite::SecondChain,
        Suite::Diagram,
        Suite::Numeric,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Generic => "generic",
            Suite::ZeroModes => "zero-modes",
            Suite::Chains => "chains",
            Suite::SecondChain => "second-chain",
            Suite::Diagram => "diagram",
            Suite::Numeric => "numeric",
        }
    }

    fn needs_spectrum(&self) -> bool {
        !matches!(self, Suite::Algebra | Suite::Generic)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Suite {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Item {
    pub suite: Suite,
    pub identity: String,
    #[serde(rename = "type")]
    pub ty: String,
    pub status: Status,
    pub computed: String,
    pub printed: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerificationReport {
    pub items: Vec<Item>,
}

impl VerificationReport {
    pub fn count(&self, s: Status) -> usize {
        self.items.iter().filter(|i| i.status == s).count()
    }

    pub fn has_failures(&self) -> bool {
        self.count(Status::Fail) > 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": "xladder/1",
            "items": self.items,
            "summary": {
                "pass": self.count(Status::Pass),
                "fail": self.count(Status::Fail),
                "printed-mismatch": self.count(Status::PrintedMismatch),
            },
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for i in &self.items {
            s.push_str(&format!(
                "[{}] {} {}: {}\n",
                i.ty,
                i.suite,
                i.identity,
                i.status.as_str()
            ));
            if i.status != Status::Pass {
                s.push_str(&format!("    computed: {}\n", i.computed));
                if let Some(p) = &i.printed {
                    s.push_str(&format!("    printed:  {p}\n"));
                }
            }
        }
        s.push_str(&format!(
            "pass {}, fail {}, printed-mismatch {}\n",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::PrintedMismatch)
        ));
        s
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    /// Data-parallel execution; ignored without the `parallel` feature.
    pub parallel: bool,
    pub points: usize,
    pub seed: u64,
    pub chain_depth: u32,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            parallel: true,
            points: 5,
            seed: 20240611,
            chain_depth: 5,
        }
    }
}

/// Maps `f` over `xs`, on the Rayon pool when enabled.
pub fn par_map<T: Sync, R: Send>(
    parallel: bool,
    xs: &[T],
    f: impl Fn(&T) -> R + Sync + Send,
) -> Vec<R> {
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return xs.par_iter().map(f).collect();
    }
    let _ = parallel;
    xs.iter().map(f).collect()
}

struct Ctx {
    ty: SeedType,
    items: Vec<Item>,
}

impl Ctx {
    fn push(
        &mut self,
        suite: Suite,
        identity: impl Into<String>,
        ok: bool,
        computed: impl Into<String>,
    ) {
        self.items.push(Item {
            suite,
            identity: identity.into(),
            ty: self.ty.to_string(),
            status: Status::from_bool(ok),
            computed: computed.into(),
            printed: None,
        });
    }

    fn discrepancy(&mut self, suite: Suite, d: Discrepancy) {
        self.items.push(Item {
            suite,
            identity: d.location,
            ty: self.ty.to_string(),
            status: d.status,
            computed: d.computed,
            printed: d.printed,
        });
    }

    fn error(&mut self, suite: Suite, what: &str, e: &Error) {
        self.push(suite, what, false, e.to_string());
    }
}

fn exact(ok: bool) -> &'static str {
    if ok {
        "exact"
    } else {
        "residual nonzero"
    }
}

fn algebra_suite(c: &mut Ctx, m: &Model, data: &Result<CubicAlgebraData>) {
    let su = Suite::Algebra;
    let e = &m.energy;
    let ok = m.big_a_dag.compose(&m.big_a).shift(e) == m.h_plus;
    c.push(su, "A†A+E=H+", ok, exact(ok));
    let ok = m.big_a.compose(&m.big_a_dag).shift(e) == schrodinger(closed_form_potential(m.ty));
    c.push(su, "AA†+E=H−", ok, exact(ok));
    let ok = m.h.compose(&m.big_a) == m.big_a.compose(&m.h_plus);
    c.push(su, "H−A=AH+", ok, exact(ok));
    let ok = m.h.commutator(&m.b) == m.b.scale(&AlphaRat::int(-2));
    c.push(su, "[H,B]=−2B", ok, exact(ok));
    let ok = m.h.commutator(&m.b_dag) == m.b_dag.scale(&AlphaRat::int(2));
    c.push(su, "[H,B†]=+2B†", ok, exact(ok));
    let data = match data {
        Ok(d) => d,
        Err(err) => return c.error(su, "cubic closure", err),
    };
    c.push(
        su,
        "ladder step = 2",
        data.a == rat(2, 1),
        data.a.to_string(),
    );
    let ok = data.s.degree() == Some(3) && data.s.lead() == AlphaRat::int(2);
    c.push(
        su,
        "[B,B†]=S(H) cubic, leading 2",
        ok,
        format_poly(&data.s, "H"),
    );
    let ok = data.r.degree() == Some(4);
    c.push(su, "B†B=R(H) quartic", ok, format_poly(&data.r, "H"));
    let ok = data.r_raised.degree() == Some(4) && data.raised_product_holds();
    c.push(
        su,
        "BB†=R(H+2) quartic",
        ok,
        format_poly(&data.r_raised, "H"),
    );
    let ok = data.closure_difference_holds();
    c.push(su, "S(H)=R(H+2)−R(H)", ok, exact(ok));
    for d in algebra_discrepancies(m, data) {
        c.discrepancy(su, d);
    }
}

/// `f_n(H)` at fixed `n`, as a polynomial in `H`.
pub fn at_n(p: &NHPoly, n: u32) -> Poly<AlphaRat> {
    let n = AlphaRat::int(n.into());
    p.map(|c| c.eval(&n))
}

/// `[c, (c^dagger)^k] (c^dagger)^-(k-1)` expanded term by term: each commutator
/// `[c, c^dagger] = S(H)` is moved right through the remaining `c^dagger`,
/// picking up `S(H) c^dagger = c^dagger S(H + step)`. The lowering dual uses
/// `[c^dagger, c] = -S(H)` and `S(H) c = c S(H - step)`.
pub fn commutator_expansion(
    b: &[AlphaRat; 4],
    step: &AlphaRat,
    k: u32,
    raising: bool,
) -> Poly<AlphaRat> {
    let s = Poly::new(b.to_vec());
    let mut acc = Poly::zero();
    for j in 0..k {
        let shift = step.times(&AlphaRat::int((k - 1 - j).into()));
        if raising {
            acc = acc.add(&shift_poly(&s, &shift));
        } else {
            acc = acc.sub(&shift_poly(&s, &shift.negate()));
        }
    }
    acc
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-50..=50), rng.gen_range(1..=12))
}

/// Random structure constants `(step, b0..b3)` with a nonzero step.
pub fn random_structure(rng: &mut ChaCha8Rng) -> (AlphaRat, [AlphaRat; 4]) {
    let mut step = random_rational(rng);
    while step.is_zero() {
        step = random_rational(rng);
    }
    let b = std::array::from_fn(|_| AlphaRat::from(random_rational(rng)));
    (AlphaRat::from(step), b)
}

fn generic_suite(opts: &Options) -> Vec<Item> {
    let mut c = Ctx {
        ty: SeedType::I,
        items: Vec::new(),
    };
    let su = Suite::Generic;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (mut f_ok, mut g_ok, mut base_ok) = (true, true, true);
    for _ in 0..20 {
        let (step, b) = random_structure(&mut rng);
        let t = generic_chain_coeffs(&step, &b);
        let (f, g) = (t.f_poly(), t.g_poly());
        let s = Poly::new(b.to_vec());
        base_ok &= at_n(&f, 0).is_zero()
            && at_n(&g, 0).is_zero()
            && at_n(&f, 1) == s
            && at_n(&g, 1) == s.neg();
        for k in 1..=4 {
            f_ok &= at_n(&f, k) == commutator_expansion(&b, &step, k, true);
            g_ok &= at_n(&g, k) == commutator_expansion(&b, &step, k, false);
        }
    }
    c.push(
        su,
        "f_0=g_0=0, f_1=S, g_1=−S (20 tuples)",
        base_ok,
        exact(base_ok),
    );
    c.push(
        su,
        "[c,(c†)^k]=(c†)^(k−1)f_k(H), k=1..4 (20 tuples)",
        f_ok,
        exact(f_ok),
    );
    c.push(
        su,
        "[c†,c^k]=c^(k−1)g_k(H), k=1..4 (20 tuples)",
        g_ok,
        exact(g_ok),
    );
    for d in table_discrepancies() {
        c.discrepancy(su, d);
    }
    for i in &mut c.items {
        i.ty = "generic".into();
    }
    c.items
}

fn zero_mode_suite(c: &mut Ctx, m: &Model, sp: &Spectrum) {
    let su = Suite::ZeroModes;
    for (op, list) in [(Ladder::B, &sp.lowering), (Ladder::BDag, &sp.raising)] {
        for z in list {
            let ok = op.operator(m).apply(z.psi()).is_zero();
            c.push(su, format!("{op} {} = 0", z.name), ok, exact(ok));
            let ok = z.state.holds(&m.h);
            let rel = match &z.state.companion {
                None => format!("H {} = ({}) {}", z.name, z.state.weight, z.name),
                Some(k) => format!(
                    "H {} = ({}) {} + ({}) {}",
                    z.name, z.state.weight, z.name, k.coefficient, k.state.label
                ),
            };
            c.push(su, format!("H on {} (computed)", z.name), ok, rel);
        }
    }
    for d in sp.printed_checks(m) {
        c.discrepancy(su, d);
    }
    match generalized_arrows(m, sp) {
        Err(e) => c.error(su, "generalized relations", &e),
        Ok(rels) => {
            for g in rels {
                let computed = match &g.in_printed_basis {
                    Some((w, k)) => format!("({w}) {} + ({k}) companion", g.mode),
                    None => "not in the printed span".into(),
                };
                c.items.push(Item {
                    suite: su,
                    identity: format!("H {} (printed generalized relation)", g.label),
                    ty: c.ty.to_string(),
                    status: g.h_status,
                    computed,
                    printed: Some(g.printed_h.clone()),
                });
                for img in &g.images {
                    let comps: Vec<String> = img
                        .components
                        .iter()
                        .map(|k| match &k.coefficient {
                            Some(x) => format!("({x}) {}", k.label),
                            None => format!("[{}]", k.label),
                        })
                        .collect();
                    let printed: Vec<String> = img
                        .printed_support
                        .iter()
                        .map(|w| label("psi", w))
                        .collect();
                    c.items.push(Item {
                        suite: su,
                        identity: format!("{} {} support", img.op, g.label),
                        ty: c.ty.to_string(),
                        status: img.status,
                        computed: if comps.is_empty() {
                            "0".into()
                        } else {
                            comps.join(" + ")
                        },
                        printed: Some(if printed.is_empty() {
                            "0".into()
                        } else {
                            printed.join(" + ")
                        }),
                    });
                }
            }
        }
    }
}

/// Generator states of the roster, with their chains built to `depth`.
pub fn roster_chains(
    m: &Model,
    data: &CubicAlgebraData,
    sp: &Spectrum,
    depth: u32,
) -> Result<Vec<(bool, Chain)>> {
    let mut out = Vec::new();
    for g in fixtures::generators(m.ty) {
        let w = parse_alpha(g.weight)?;
        let l = label(if g.tilde { "tilde" } else { "psi" }, &w);
        let start = sp
            .named
            .get(&l)
            .or_else(|| sp.tildes.get(&l))
            .ok_or_else(|| Error::StructuralViolation(format!("generator {l} not constructed")))?;
        let dir = if g.up { Direction::Up } else { Direction::Down };
        out.push((g.printed, build_chain(m, data, start, dir, depth)?));
    }
    Ok(out)
}

fn chain_name(printed: bool, ch: &Chain) -> String {
    let tag = if printed { "" } else { " (figure only)" };
    format!("chain {} {}{tag}", ch.start.label, ch.direction.as_str())
}

fn chain_suite(
    c: &mut Ctx,
    m: &Model,
    data: &CubicAlgebraData,
    chains: &[(bool, Chain)],
    depth: u32,
) {
    let su = Suite::Chains;
    let (f, g) = (fn_poly(data), gn_poly(data));
    let s = &data.s;
    for n in 1..=depth {
        let step = AlphaRat::int(2);
        let ok = at_n(&f, n).sub(&at_n(&f, n - 1))
            == shift_poly(s, &step.times(&AlphaRat::int((n - 1).into())));
        c.push(
            su,
            format!("f_n consistency n={n}"),
            ok,
            format_poly(&at_n(&f, n), "H"),
        );
        let ok = at_n(&g, n).sub(&at_n(&g, n - 1))
            == shift_poly(s, &step.times(&AlphaRat::int(1 - n as i64))).neg();
        c.push(
            su,
            format!("g_n consistency n={n}"),
            ok,
            format_poly(&at_n(&g, n), "H"),
        );
    }
    for (printed, ch) in chains {
        let name = chain_name(*printed, ch);
        let ok = ch.weights_hold(m);
        let ws: Vec<String> = ch.elements.iter().map(|e| e.weight.to_string()).collect();
        c.push(
            su,
            format!("{name}: weights step ±2, eigenvalues"),
            ok,
            ws.join(", "),
        );
        for b in &ch.back {
            let kind = ch.direction.coeff_kind();
            c.push(
                su,
                format!("{name}: back-action n={} against {kind}_n", b.n),
                b.holds,
                format!(
                    "{kind}_{}({}) = {}; ratio {}",
                    b.n,
                    ch.start.weight,
                    b.predicted,
                    b.computed.as_ref().map_or("none".into(), |x| x.to_string())
                ),
            );
        }
        if let Some(t) = ch.truncated_at {
            c.push(su, format!("{name}: terminates at n={t}"), true, "zero");
        }
    }
}

fn second_chain_suite(c: &mut Ctx, m: &Model, sp: &Spectrum) {
    let su = Suite::SecondChain;
    for (l, t) in &sp.tildes {
        c.push(
            su,
            format!("{l} eigenstate"),
            t.holds(&m.h),
            format!("weight {}", t.weight),
        );
        let psi = sp
            .named
            .get(&l.replacen("tilde", "psi", 1))
            .and_then(|p| p.first());
        let ok = match (&t.state, psi) {
            (State::Second(s), Some(p)) => wronskian_is_one(p, s),
            _ => false,
        };
        c.push(
            su,
            format!("W[{}, {l}]=1", l.replacen("tilde", "psi", 1)),
            ok,
            exact(ok),
        );
    }
    match diagonal_arrows(m, sp) {
        Err(e) => c.error(su, "diagonal arrows", &e),
        Ok(arrows) => {
            for a in arrows {
                let computed = match &a.coefficient {
                    Some(x) => format!("({x}) {}", a.to),
                    None => "not proportional".into(),
                };
                let from = match &a.printed_from {
                    Some(p) => format!(" (printed as {p})"),
                    None => String::new(),
                };
                c.items.push(Item {
                    suite: su,
                    identity: format!("{} {} ∝ {}{from}", a.op, a.from, a.to),
                    ty: c.ty.to_string(),
                    status: a.status,
                    computed,
                    printed: Some(match &a.printed {
                        Some(p) => format!("({p}) {}", a.to),
                        None => format!("∝ {}", a.to),
                    }),
                });
            }
        }
    }
}

fn drawn_text(d: &fixtures::Drawn) -> String {
    match d {
        fixtures::Drawn::Zero => "0".into(),
        fixtures::Drawn::To(t) => t.clone(),
        fixtures::Drawn::Out => "outside the window".into(),
        fixtures::Drawn::Undrawn => "no arrow".into(),
    }
}

fn diagram_suite(c: &mut Ctx, m: &Model, data: &CubicAlgebraData, sp: &Spectrum) {
    let su = Suite::Diagram;
    let d = match chain_diagram(m, data, sp, 3) {
        Ok(d) => d,
        Err(e) => return c.error(su, "chain diagram", &e),
    };
    for w in compare_window(&d) {
        c.items.push(Item {
            suite: su,
            identity: format!("{} {}", w.op, w.node),
            ty: c.ty.to_string(),
            status: w.status,
            computed: w
                .computed
                .as_ref()
                .map_or("missing".into(), Action::describe),
            printed: Some(drawn_text(&w.drawn)),
        });
    }
}

/// Smallest accepted convergence radius of the anchors' `1/psi^2` at a sample point.
pub const MIN_RADIUS: f64 = 0.25;

/// Named residuals at one point.
type Residuals = Vec<(String, BigFloat)>;

fn poly_value(num: &mut Num, p: &Poly<AlphaRat>, a0: &Rational, h: &BigFloat) -> Result<BigFloat> {
    let mut acc = num.int(0);
    for c in p.coeffs().iter().rev() {
        let c = num.rational(&c.eval(a0)?);
        acc = acc
            .mul(
                h,
                crate::numeric::PRECISION,
                astro_float::RoundingMode::ToEven,
            )
            .add(
                &c,
                crate::numeric::PRECISION,
                astro_float::RoundingMode::ToEven,
            );
    }
    Ok(acc)
}

fn power(num: &Num, nm: &NumModel, raising: bool, k: u32, f: &Jet) -> Jet {
    (0..k).fold(f.clone(), |acc, _| nm.ladder(num, raising, &acc))
}

fn state_jet(num: &mut Num, ws: &WeightedState, pt: &Point, n: usize, c: &BigFloat) -> Result<Jet> {
    num.any_state(&ws.state, pt, n, c)
}

/// Every exact identity of the operator, algebra, zero-mode, chain and
/// second-chain suites, re-evaluated in 128-bit arithmetic at `pt`.
fn numeric_point(
    m: &Model,
    data: &CubicAlgebraData,
    sp: &Spectrum,
    chains: &[(bool, Chain)],
    pt: &Point,
    seed: u64,
) -> Result<Residuals> {
    let mut num = Num::new()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = 28;
    let nm = NumModel::new(&mut num, m, pt, full)?;
    let mut out: Residuals = Vec::new();
    let zero = |n: usize, num: &Num| num.constant(num.int(0), n);

    // operator identities
    let f = num.random(&mut rng, 14);
    let af = num.apply(&nm.big_a, &f);
    let ef = num.scale(&f, &nm.energy);
    let l = num.add(&num.apply(&nm.big_a_dag, &af), &ef);
    out.push((
        "A†A+E=H+".into(),
        num.residual(&l, &num.apply(&nm.h_plus, &f), &[&f]),
    ));
    let l = num.add(&num.apply(&nm.big_a, &num.apply(&nm.big_a_dag, &f)), &ef);
    out.push((
        "AA†+E=H−".into(),
        num.residual(&l, &num.apply(&nm.h, &f), &[&f]),
    ));
    let l = num.apply(&nm.h, &af);
    let r = num.apply(&nm.big_a, &num.apply(&nm.h_plus, &f));
    out.push(("H−A=AH+".into(), num.residual(&l, &r, &[])));
    for (raising, name, sign) in [(false, "[H,B]=−2B", -2), (true, "[H,B†]=+2B†", 2)] {
        let bf = nm.ladder(&num, raising, &f);
        let t1 = num.apply(&nm.h, &bf);
        let t2 = nm.ladder(&num, raising, &num.apply(&nm.h, &f));
        let l = num.sub(&t1, &t2);
        let r = num.scale(&bf, &num.int(sign));
        out.push((name.into(), num.residual(&l, &r, &[&t1, &t2])));
    }

    // cubic closure
    let f = num.random(&mut rng, 16);
    let bbd = nm.b(&num, &nm.b_dag(&num, &f));
    let bdb = nm.b_dag(&num, &nm.b(&num, &f));
    let l = num.sub(&bbd, &bdb);
    let r = num.apply_poly(&data.s, &nm.h, &f, pt)?;
    out.push(("[B,B†]=S(H)".into(), num.residual(&l, &r, &[&bbd, &bdb])));
    let r = num.apply_poly(&data.r, &nm.h, &f, pt)?;
    out.push(("B†B=R(H)".into(), num.residual(&bdb, &r, &[])));
    let r = num.apply_poly(&data.r_raised, &nm.h, &f, pt)?;
    out.push(("BB†=R(H+2)".into(), num.residual(&bbd, &r, &[])));
    let h = num.rational(&random_rational(&mut rng));
    let two = num.int(2);
    let p = crate::numeric::PRECISION;
    let rm = astro_float::RoundingMode::ToEven;
    let s_h = poly_value(&mut num, &data.s, &pt.a, &h)?;
    let r_h2 = poly_value(&mut num, &data.r, &pt.a, &h.add(&two, p, rm))?;
    let r_h = poly_value(&mut num, &data.r, &pt.a, &h)?;
    let one = |v: BigFloat, num: &Num| num.constant(v, 1);
    let r_diff = r_h2.sub(&r_h, p, rm);
    out.push((
        "S(H)=R(H+2)−R(H)".into(),
        num.residual(
            &one(s_h, &num),
            &one(r_diff, &num),
            &[&one(r_h2, &num), &one(r_h, &num)],
        ),
    ));

    // realization of the generic commutator identities
    let (fp, gp) = (fn_poly(data), gn_poly(data));
    for k in 1..=4u32 {
        let n = 4 * k as usize + 8;
        let f = num.random(&mut rng, n);
        for (raising, poly, name) in [
            (true, &fp, "[B,(B†)^k]=(B†)^(k−1)f_k(H)"),
            (false, &gp, "[B†,B^k]=B^(k−1)g_k(H)"),
        ] {
            let pk = power(&num, &nm, raising, k, &f);
            let t1 = nm.ladder(&num, !raising, &pk);
            let t2 = power(&num, &nm, raising, k, &nm.ladder(&num, !raising, &f));
            let l = num.sub(&t1, &t2);
            let fk = num.apply_poly(&at_n(poly, k), &nm.h, &f, pt)?;
            let r = power(&num, &nm, raising, k - 1, &fk);
            out.push((format!("{name}, k={k}"), num.residual(&l, &r, &[&t1, &t2])));
        }
    }

    // zero modes
    let c0 = num.rational(&random_rational(&mut rng));
    for (op, list) in [(Ladder::B, &sp.lowering), (Ladder::BDag, &sp.raising)] {
        for z in list {
            let psi = num.state(z.psi(), pt, 12)?;
            let img = nm.ladder(&num, op == Ladder::BDag, &psi);
            out.push((
                format!("{op} {} = 0", z.name),
                num.residual(&img, &zero(img.len(), &num), &[&psi]),
            ));
            let w = num.rational(&z.state.weight.eval(&pt.a)?);
            let mut r = num.scale(&psi, &w);
            if let Some(k) = &z.state.companion {
                let cj = state_jet(&mut num, &k.state, pt, 12, &c0)?;
                let kc = num.rational(&k.coefficient.eval(&pt.a)?);
                r = num.add(&r, &num.scale(&cj, &kc));
            }
            let l = num.apply(&nm.h, &psi);
            out.push((
                format!("H on {} (computed)", z.name),
                num.residual(&l, &r, &[]),
            ));
        }
    }

    // chains: every element from its closed form, one ladder per identity
    for (printed, ch) in chains {
        let name = chain_name(*printed, ch);
        let c = num.rational(&random_rational(&mut rng));
        let raising = ch.direction == Direction::Up;
        let jets = ch
            .elements
            .iter()
            .map(|e| state_jet(&mut num, e, pt, 16, &c))
            .collect::<Result<Vec<_>>>()?;
        let mut eig = num.int(0);
        let mut gen = num.int(0);
        for k in 0..jets.len() {
            let w = num.rational(&ch.elements[k].weight.eval(&pt.a)?);
            let hr = num.residual(&num.apply(&nm.h, &jets[k]), &num.scale(&jets[k], &w), &[]);
            if hr.cmp(&eig) == Some(1) {
                eig = hr;
            }
            if k == 0 {
                continue;
            }
            let (prev, next) = (&jets[k - 1], &jets[k]);
            let g = num.residual(&nm.ladder(&num, raising, prev), next, &[prev]);
            if g.cmp(&gen) == Some(1) {
                gen = g;
            }
            let b = &ch.back[k - 1];
            let back = nm.ladder(&num, !raising, next);
            let pred = num.rational(&b.predicted.eval(&pt.a)?);
            out.push((
                format!(
                    "{name}: back-action n={} against {}_n",
                    b.n,
                    ch.direction.coeff_kind()
                ),
                num.residual(&back, &num.scale(prev, &pred), &[prev, next]),
            ));
        }
        if let (Some(t), Some(last)) = (ch.truncated_at, jets.last()) {
            let img = nm.ladder(&num, raising, last);
            out.push((
                format!("{name}: terminates at n={t}"),
                num.residual(&img, &zero(img.len(), &num), &[last]),
            ));
        }
        out.push((format!("{name}: weights step ±2, eigenvalues"), eig));
        out.push((
            format!("{name}: elements generated by {}", ch.direction.ladder()),
            gen,
        ));
    }

    // second chain
    let mut tilde_jets = std::collections::BTreeMap::new();
    for (l, t) in &sp.tildes {
        let c = num.rational(&random_rational(&mut rng));
        let tj = state_jet(&mut num, t, pt, 14, &c)?;
        let w = num.rational(&t.weight.eval(&pt.a)?);
        let r = num.residual(&num.apply(&nm.h, &tj), &num.scale(&tj, &w), &[]);
        out.push((format!("{l} eigenstate"), r));
        let pl = l.replacen("tilde", "psi", 1);
        if let Some(p) = sp.named.get(&pl) {
            let pj = state_jet(&mut num, p, pt, 14, &c)?;
            let wr = num.sub(
                &num.mul(&pj, &num.derivative(&tj)),
                &num.mul(&num.derivative(&pj), &tj),
            );
            let one = num.constant(num.int(1), wr.len());
            out.push((format!("W[{pl}, {l}]=1"), num.residual(&wr, &one, &[])));
        }
        tilde_jets.insert(l.clone(), tj);
    }
    for a in diagonal_arrows(m, sp)? {
        let Some(coeff) = &a.coefficient else {
            continue;
        };
        let (Some(tj), Some(target)) = (tilde_jets.get(&a.from), sp.named.get(&a.to)) else {
            continue;
        };
        let img = nm.ladder(&num, a.op == Ladder::BDag, tj);
        let c = num.rational(&coeff.eval(&pt.a)?);
        let t = state_jet(&mut num, target, pt, 14, &c0)?;
        out.push((
            format!("{} {} ∝ {}", a.op, a.from, a.to),
            num.residual(&img, &num.scale(&t, &c), &[]),
        ));
    }
    Ok(out)
}

/// Maximum residual of every identity over the sample points of one type.
pub fn numeric_residuals(
    m: &Model,
    data: &CubicAlgebraData,
    sp: &Spectrum,
    chains: &[(bool, Chain)],
    opts: &Options,
) -> Result<Vec<(String, BigFloat)>> {
    // keep x0 at least 1/4 away from the complex zeros of every anchor, where
    // g + f I loses digits to cancellation against the poles of I
    let anchors: Vec<XRat> = sp
        .tildes
        .values()
        .filter_map(|t| match &t.state {
            State::Second(s) => Some(s.inverse_square().terms().into_iter().map(|q| q.r)),
            State::First(_) => None,
        })
        .flatten()
        .collect();
    let accept = |pt: &Point| {
        anchors
            .iter()
            .all(|r| radius_estimate(r, pt, 16).is_ok_and(|rad| rad >= MIN_RADIUS))
    };
    let pts = sample_points_where(m.ty, opts.points, opts.seed ^ (m.ty as u64 + 1), accept);
    let idx: Vec<usize> = (0..pts.len()).collect();
    let per_point = par_map(opts.parallel, &idx, |&i| {
        numeric_point(
            m,
            data,
            sp,
            chains,
            &pts[i],
            opts.seed.wrapping_add(i as u64),
        )
    });
    let mut acc: Vec<(String, BigFloat)> = Vec::new();
    for r in per_point {
        for (name, v) in r? {
            match acc.iter_mut().find(|(n, _)| *n == name) {
                Some((_, x)) => {
                    if v.cmp(x) == Some(1) || v.is_nan() {
                        *x = v;
                    }
                }
                None => acc.push((name, v)),
            }
        }
    }
    Ok(acc)
}

fn numeric_suite(
    c: &mut Ctx,
    m: &Model,
    data: &CubicAlgebraData,
    sp: &Spectrum,
    chains: &[(bool, Chain)],
    opts: &Options,
) {
    let su = Suite::Numeric;
    match numeric_residuals(m, data, sp, chains, opts) {
        Err(e) => c.error(su, "numeric evaluation", &e),
        Ok(rs) => {
            let mut num = match Num::new() {
                Ok(n) => n,
                Err(e) => return c.error(su, "numeric evaluation", &e),
            };
            for (name, v) in rs {
                let ok = !v.is_nan() && num.below(&v, TOLERANCE);
                let shown = num.show(&v);
                c.push(
                    su,
                    name,
                    ok,
                    format!("max relative residual {shown} over {} points", opts.points),
                );
            }
        }
    }
}

fn type_items(ty: SeedType, suites: &[Suite], opts: &Options) -> Vec<Item> {
    let m = Model::new(ty);
    let mut c = Ctx {
        ty,
        items: Vec::new(),
    };
    let data = cubic_algebra(&m);
    if suites.contains(&Suite::Algebra) {
        algebra_suite(&mut c, &m, &data);
    }
    if !suites.iter().any(Suite::needs_spectrum) {
        return c.items;
    }
    let data = match data {
        Ok(d) => d,
        Err(e) => {
            c.error(Suite::Chains, "cubic closure", &e);
            return c.items;
        }
    };
    let sp = match Spectrum::build(&m) {
        Ok(s) => s,
        Err(e) => {
            c.error(Suite::ZeroModes, "zero-mode cascade", &e);
            return c.items;
        }
    };
    let chains = roster_chains(&m, &data, &sp, opts.chain_depth);
    for &su in suites {
        match su {
            Suite::ZeroModes => zero_mode_suite(&mut c, &m, &sp),
            Suite::Chains => match &chains {
                Ok(ch) => chain_suite(&mut c, &m, &data, ch, opts.chain_depth),
                Err(e) => c.error(su, "chains", e),
            },
            Suite::SecondChain => second_chain_suite(&mut c, &m, &sp),
            Suite::Diagram => diagram_suite(&mut c, &m, &data, &sp),
            Suite::Numeric => match &chains {
                Ok(ch) => numeric_suite(&mut c, &m, &data, &sp, ch, opts),
                Err(e) => c.error(su, "chains", e),
            },
            Suite::Algebra | Suite::Generic => {}
        }
    }
    c.items
}

/// Runs the selected suites for the selected types. Items come out grouped by
/// type in the order given, then by suite.
pub fn verify(types: &[SeedType], suites: &[Suite], opts: &Options) -> VerificationReport {
    let mut suites: Vec<Suite> = suites.to_vec();
    suites.sort();
    suites.dedup();
    let mut items = Vec::new();
    if suites.contains(&Suite::Generic) {
        items.extend(generic_suite(opts));
    }
    let per_type = par_map(opts.parallel, types, |&ty| type_items(ty, &suites, opts));
    for v in per_type {
        items.extend(v);
    }
    VerificationReport { items }
}

/// Weight of a state label such as `psi(-a-3)`.
pub fn label_weight(l: &str) -> Option<AlphaRat> {
    let open = l.find('(')?;
    let inner = l.get(open + 1..l.len().checked_sub(1)?)?;
    parse_alpha(inner).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::shifted;

    #[test]
    fn expansion_k1_is_s() {
        let b = [
            AlphaRat::int(1),
            AlphaRat::int(2),
            AlphaRat::int(3),
            AlphaRat::int(4),
        ];
        let s = Poly::new(b.to_vec());
        assert_eq!(commutator_expansion(&b, &AlphaRat::int(2), 1, true), s);
        assert_eq!(
            commutator_expansion(&b, &AlphaRat::int(2), 1, false),
            s.neg()
        );
        assert!(commutator_expansion(&b, &AlphaRat::int(2), 0, true).is_zero());
    }

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::ALL {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        assert!("operators".parse::<Suite>().is_err());
    }

    #[test]
    fn generic_suite_passes() {
        let items = generic_suite(&Options::default());
        assert!(items.iter().all(|i| i.status != Status::Fail));
    }

    #[test]
    fn label_weight_reads_labels() {
        assert_eq!(
            label_weight("psi(-a-3)").unwrap(),
            shifted(&AlphaRat::alpha().negate(), -3)
        );
        assert!(label_weight("psi").is_none());
    }
}
