use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use xladder::arith::{format_poly, parse_alpha, parse_rational, AlphaRat, Rational};
use xladder::model::{cubic_algebra, fn_poly, gn_poly, nh_eval, printed, Model, SeedType};
use xladder::numeric::{Num, Point};
use xladder::spectra::{
    build_chain, chain_diagram, coincidences, label, Direction, Spectrum, WeightedState,
};
use xladder::verify::{at_n, verify, Options, Suite};

#[derive(Parser)]
#[command(
    name = "xladder",
    version,
    about = "Exact checks of the fourth-order ladders of the X1 Laguerre operators"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    F,
    G,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification suites and print the report.
    Verify {
        /// I, II, III or all.
        #[arg(long = "type", default_value = "all")]
        ty: String,
        /// Suite name or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Run sequentially.
        #[arg(long)]
        sequential: bool,
    },
    /// List the zero modes of B and B^dagger.
    ZeroModes {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// One induced chain, or the whole 2-chain diagram when no start is given.
    Chain {
        #[arg(long = "type")]
        ty: String,
        /// State label such as `psi(a+1)`, `tilde(-a-3)` or a bare weight.
        #[arg(long, allow_hyphen_values = true)]
        start: Option<String>,
        #[arg(long, default_value = "up")]
        direction: String,
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long, default_value_t = 3)]
        depth: u32,
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
    },
    /// Chain coefficients f_n or g_n.
    Coeffs {
        #[arg(long = "type", default_value = "I")]
        ty: String,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Base weight; the polynomial in H when absent.
        #[arg(long, allow_hyphen_values = true)]
        base: Option<String>,
        /// `n` or `lo..hi`.
        #[arg(long)]
        n: String,
        /// Rational value of the parameter.
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Evaluate a state at a point in 128-bit arithmetic.
    Eval {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, allow_hyphen_values = true)]
        state: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        alpha: String,
        /// Value of the antiderivative I at x, for second-kind states.
        #[arg(long, default_value = "0")]
        constant: String,
    },
}

enum CliError {
    Usage(String),
    Failed(anyhow::Error),
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Failed(e)
    }
}

impl From<xladder::Error> for CliError {
    fn from(e: xladder::Error) -> Self {
        CliError::Failed(e.into())
    }
}

type Out = Result<ExitCode, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn seed_type(s: &str) -> Result<SeedType, CliError> {
    s.parse()
        .map_err(|_| usage(format!("unknown type {s:?}; expected I, II or III")))
}

fn types(s: &str) -> Result<Vec<SeedType>, CliError> {
    if s == "all" {
        Ok(SeedType::ALL.to_vec())
    } else {
        Ok(vec![seed_type(s)?])
    }
}

fn rational(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).ok_or_else(|| usage(format!("not a rational number: {s:?}")))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn cmd_verify(ty: &str, suite: &str, format: Format, sequential: bool) -> Out {
    let tys = types(ty)?;
    let suites = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse::<Suite>().map_err(|e| usage(e.to_string()))?]
    };
    let opts = Options {
        parallel: !sequential,
        ..Options::default()
    };
    let report = verify(&tys, &suites, &opts);
    match format {
        Format::Json => print_json(&report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    Ok(if report.has_failures() {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    })
}

fn mode_json(z: &xladder::spectra::ZeroMode) -> Value {
    json!({
        "name": z.name,
        "stage": z.stage,
        "weight": z.state.weight.to_string(),
        "kind": z.state.kind(),
        "companion": z.state.companion.as_ref().map(|c| json!({
            "state": c.state.label,
            "coefficient": c.coefficient.to_string(),
        })),
        "state": z.psi().to_string(),
        "printed_ratio": z.printed_ratio.as_ref().map(|r| r.to_string()),
    })
}

fn cmd_zero_modes(ty: &str, format: Format) -> Out {
    let ty = seed_type(ty)?;
    let m = Model::new(ty);
    let sp = Spectrum::build(&m)?;
    let co = coincidences(&sp.lowering, &sp.raising);
    match format {
        Format::Json => print_json(&json!({
            "schema": "xladder/1",
            "type": ty.to_string(),
            "lowering": sp.lowering.iter().map(mode_json).collect::<Vec<_>>(),
            "raising": sp.raising.iter().map(mode_json).collect::<Vec<_>>(),
            "coincidences": co.iter().map(|c| json!({
                "raising": c.raising, "lowering": c.lowering, "ratio": c.ratio.to_string(),
            })).collect::<Vec<_>>(),
        })),
        Format::Text => {
            for (title, list) in [
                ("lowering (B psi = 0)", &sp.lowering),
                ("raising (Bdag phi = 0)", &sp.raising),
            ] {
                println!("{title}: {} modes", list.len());
                for z in list {
                    let rel = match &z.state.companion {
                        None => format!("H {} = ({}) {}", z.name, z.state.weight, z.name),
                        Some(c) => format!(
                            "H {} = ({}) {} + ({}) {}",
                            z.name, z.state.weight, z.name, c.coefficient, c.state.label
                        ),
                    };
                    println!(
                        "  {} [{}, stage {}]: {}",
                        z.name,
                        z.state.kind(),
                        z.stage,
                        rel
                    );
                    println!("    {}", z.psi());
                }
            }
            for c in &co {
                println!("coincidence: {} = ({}) {}", c.raising, c.ratio, c.lowering);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn find_state<'s>(sp: &'s Spectrum, start: &str) -> Option<&'s WeightedState> {
    let s: String = start.chars().filter(|c| !c.is_whitespace()).collect();
    let (kind, w) = match s.split_once('(') {
        Some((k, rest)) => (k.to_string(), rest.strip_suffix(')')?.to_string()),
        None => ("psi".to_string(), s),
    };
    let w = parse_alpha(&w).ok()?;
    let l = label(&kind, &w);
    sp.named.get(&l).or_else(|| sp.tildes.get(&l))
}

fn roster(sp: &Spectrum) -> String {
    sp.named
        .keys()
        .chain(sp.tildes.keys())
        .cloned()
        .collect::<Vec<_>>()
        .join(", ")
}

fn cmd_chain(
    ty: &str,
    start: Option<&str>,
    direction: &str,
    n: u32,
    depth: u32,
    emit: Emit,
) -> Out {
    let ty = seed_type(ty)?;
    let dir: Direction = direction
        .parse()
        .map_err(|e: xladder::Error| usage(e.to_string()))?;
    let m = Model::new(ty);
    let data = cubic_algebra(&m)?;
    let sp = Spectrum::build(&m)?;
    let Some(start) = start else {
        let d = chain_diagram(&m, &data, &sp, depth)?;
        match emit {
            Emit::Dot => print!("{}", d.to_dot()),
            Emit::Json => print_json(&d.to_json()),
        }
        return Ok(ExitCode::SUCCESS);
    };
    let ws = find_state(&sp, start)
        .ok_or_else(|| usage(format!("unknown state {start:?}; roster: {}", roster(&sp))))?;
    let ch = build_chain(&m, &data, ws, dir, n)?;
    match emit {
        Emit::Json => print_json(&json!({
            "schema": "xladder/1",
            "type": ty.to_string(),
            "start": ch.start.label,
            "direction": dir.as_str(),
            "elements": ch.elements.iter().map(|e| json!({
                "label": e.label, "weight": e.weight.to_string(), "state": e.state.to_string(),
            })).collect::<Vec<_>>(),
            "back_actions": ch.back.iter().map(|b| json!({
                "n": b.n,
                "predicted": b.predicted.to_string(),
                "computed": b.computed.as_ref().map(|c| c.to_string()),
                "holds": b.holds,
            })).collect::<Vec<_>>(),
            "truncated_at": ch.truncated_at,
        })),
        Emit::Dot => {
            println!("digraph chain {{");
            println!("  rankdir=LR;");
            for e in &ch.elements {
                println!("  \"{}\" [weight=\"{}\"];", e.label, e.weight);
            }
            let op = dir.ladder();
            for (k, w) in ch.elements.windows(2).enumerate() {
                let back = &ch.back[k];
                println!(
                    "  \"{}\" -> \"{}\" [op=\"{}\", coeff=\"1\"];",
                    w[0].label,
                    w[1].label,
                    op.as_str()
                );
                println!(
                    "  \"{}\" -> \"{}\" [op=\"{}\", coeff=\"{}\"];",
                    w[1].label,
                    w[0].label,
                    op.opposite().as_str(),
                    back.predicted
                );
            }
            println!("}}");
        }
    }
    Ok(if ch.back_actions_hold() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn n_range(s: &str) -> Result<Vec<u32>, CliError> {
    let bad = || usage(format!("bad n range {s:?}; expected n or lo..hi"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ),
        None => {
            let v: u32 = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(usage(format!("empty n range {s:?}")));
    }
    Ok((lo..=hi).collect())
}

fn cmd_coeffs(ty: &str, kind: Kind, base: Option<&str>, n: &str, alpha: Option<&str>) -> Out {
    let ty = seed_type(ty)?;
    let ns = n_range(n)?;
    let a0 = alpha.map(rational).transpose()?;
    let base = base
        .map(|b| parse_alpha(b).map_err(|e| usage(format!("bad base weight {b:?}: {e}"))))
        .transpose()?;
    let m = Model::new(ty);
    let data = cubic_algebra(&m)?;
    let (poly, printed_poly, name) = match kind {
        Kind::F => (fn_poly(&data), printed::f_n(ty), "f"),
        Kind::G => (gn_poly(&data), printed::g_n(ty), "g"),
    };
    let mut mismatches = 0;
    for k in ns {
        let (value, printed_value) = match &base {
            Some(b) => (nh_eval(&poly, k, b), nh_eval(&printed_poly, k, b)),
            None => {
                let p = at_n(&poly, k);
                let q = at_n(&printed_poly, k);
                let flag = if p == q { "" } else { "  [printed-mismatch]" };
                if p != q {
                    mismatches += 1;
                }
                let shown = match &a0 {
                    Some(a) => {
                        let vals = p
                            .coeffs()
                            .iter()
                            .map(|c| c.eval(a).map(AlphaRat::from))
                            .collect::<Result<Vec<_>, _>>()?;
                        format_poly(&xladder::arith::Poly::new(vals), "H")
                    }
                    None => format_poly(&p, "H"),
                };
                println!("{name}_{k}(H) = {shown}{flag}");
                continue;
            }
        };
        let flag = if value == printed_value {
            ""
        } else {
            mismatches += 1;
            "  [printed-mismatch]"
        };
        let shown = match &a0 {
            Some(a) => value.eval(a)?.to_string(),
            None => value.to_string(),
        };
        println!("{name}_{k} = {shown}{flag}");
    }
    if mismatches > 0 {
        eprintln!("{mismatches} value(s) differ from the printed {name}_n^{ty}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_eval(ty: &str, state: &str, x: &str, alpha: &str, constant: &str) -> Out {
    let ty = seed_type(ty)?;
    let pt = Point {
        x: rational(x)?,
        a: rational(alpha)?,
    };
    let c = rational(constant)?;
    let m = Model::new(ty);
    let sp = Spectrum::build(&m)?;
    let ws = find_state(&sp, state)
        .ok_or_else(|| usage(format!("unknown state {state:?}; roster: {}", roster(&sp))))?;
    let mut num = Num::new()?;
    let cv = num.rational(&c);
    let jet = num.any_state(&ws.state, &pt, 2, &cv)?;
    let v = num.show(&jet.0[0]);
    let d = num.show(&jet.0[1]);
    println!(
        "{} at x={}, a={}: value {v}, derivative {d}",
        ws.label, pt.x, pt.a
    );
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Out {
    match cli.cmd {
        Cmd::Verify {
            ty,
            suite,
            format,
            sequential,
        } => cmd_verify(&ty, &suite, format, sequential),
        Cmd::ZeroModes { ty, format } => cmd_zero_modes(&ty, format),
        Cmd::Chain {
            ty,
            start,
            direction,
            n,
            depth,
            emit,
        } => cmd_chain(&ty, start.as_deref(), &direction, n, depth, emit),
        Cmd::Coeffs {
            ty,
            kind,
            base,
            n,
            alpha,
        } => cmd_coeffs(&ty, kind, base.as_deref(), &n, alpha.as_deref()),
        Cmd::Eval {
            ty,
            state,
            x,
            alpha,
            constant,
        } => cmd_eval(&ty, &state, &x, &alpha, &constant),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
