//! Acceptance criteria 1 to 8. Prints one PASS/FAIL line per criterion.
//!
//! Criteria that fail only because a printed value disagrees with the exact
//! computation are reported as FAIL but do not abort the run; any engine-level
//! `fail` item, or a failing criterion that has no printed counterpart, does.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use xladder::arith::{AlphaRat, Poly, Rational};
use xladder::model::{generic_chain_coeffs, SeedType, Status};
use xladder::verify::{at_n, random_structure, verify, Item, Options, Suite};

// Letters of the generic algebra, in normal order.
const CDAG: u8 = 0;
const H: u8 = 1;
const C: u8 = 2;

type Word = Vec<u8>;
type Elem = BTreeMap<Word, Rational>;

fn add_term(e: &mut Elem, w: Word, c: Rational) {
    if c.is_zero() {
        return;
    }
    let slot = e.entry(w.clone()).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        e.remove(&w);
    }
}

/// Normal orders words into `cdag^i H^j c^l` using
/// `H cdag = cdag H + step cdag`, `c H = H c + step c`, `c cdag = cdag c + S(H)`.
fn normal_order(e: Elem, step: &Rational, s: &[Rational]) -> Elem {
    let mut out = Elem::new();
    let mut work: Vec<(Word, Rational)> = e.into_iter().collect();
    while let Some((w, c)) = work.pop() {
        let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) else {
            add_term(&mut out, w, c);
            continue;
        };
        let (pre, post) = (&w[..i], &w[i + 2..]);
        let splice = |mid: &[u8]| -> Word { pre.iter().chain(mid).chain(post).copied().collect() };
        match (w[i], w[i + 1]) {
            (H, CDAG) => {
                work.push((splice(&[CDAG, H]), c.clone()));
                work.push((splice(&[CDAG]), c * step));
            }
            (C, H) => {
                work.push((splice(&[H, C]), c.clone()));
                work.push((splice(&[C]), c * step));
            }
            (C, CDAG) => {
                work.push((splice(&[CDAG, C]), c.clone()));
                for (j, sj) in s.iter().enumerate() {
                    work.push((splice(&vec![H; j]), &c * sj));
                }
            }
            _ => unreachable!(),
        }
    }
    out
}

fn word(parts: &[(u8, usize)]) -> Word {
    parts
        .iter()
        .flat_map(|&(l, n)| std::iter::repeat_n(l, n))
        .collect()
}

fn single(w: Word) -> Elem {
    let mut e = Elem::new();
    e.insert(w, Rational::one());
    e
}

fn sub(a: &Elem, b: &Elem) -> Elem {
    let mut out = a.clone();
    for (w, c) in b {
        add_term(&mut out, w.clone(), -c.clone());
    }
    out
}

/// `prefix^n p(H)` with `p` given by rational coefficients.
fn times_poly(prefix: u8, n: usize, p: &Poly<AlphaRat>) -> Elem {
    let mut e = Elem::new();
    for (j, c) in p.coeffs().iter().enumerate() {
        add_term(
            &mut e,
            word(&[(prefix, n), (H, j)]),
            c.as_rational().expect("rational coefficient"),
        );
    }
    e
}

fn rational(a: &AlphaRat) -> Rational {
    a.as_rational().expect("rational structure constant")
}

/// Brute-force commutators `[c, cdag^k]` and `[cdag, c^k]` against the library's
/// `f_k`, `g_k` for 20 random structures.
fn criterion_3(seed: u64) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for t in 0..20 {
        let (step_a, b) = random_structure(&mut rng);
        let step = rational(&step_a);
        let s: Vec<Rational> = b.iter().map(rational).collect();
        let table = generic_chain_coeffs(&step_a, &b);
        let (f, g) = (table.f_poly(), table.g_poly());
        let s_poly = Poly::new(b.to_vec());
        if !at_n(&f, 0).is_zero() || !at_n(&g, 0).is_zero() {
            bad.push(format!("tuple {t}: f_0 or g_0 nonzero"));
        }
        if at_n(&f, 1) != s_poly {
            bad.push(format!("tuple {t}: f_1 != S"));
        }
        for k in 1..=4usize {
            let lhs = sub(
                &normal_order(single(word(&[(C, 1), (CDAG, k)])), &step, &s),
                &normal_order(single(word(&[(CDAG, k), (C, 1)])), &step, &s),
            );
            let rhs = normal_order(times_poly(CDAG, k - 1, &at_n(&f, k as u32)), &step, &s);
            if lhs != rhs {
                bad.push(format!("tuple {t}: [c,(c†)^{k}]"));
            }
            let lhs = sub(
                &normal_order(single(word(&[(CDAG, 1), (C, k)])), &step, &s),
                &normal_order(single(word(&[(C, k), (CDAG, 1)])), &step, &s),
            );
            let rhs = normal_order(times_poly(C, k - 1, &at_n(&g, k as u32)), &step, &s);
            if lhs != rhs {
                bad.push(format!("tuple {t}: [c†,c^{k}]"));
            }
        }
    }
    if bad.is_empty() {
        (
            true,
            "20 tuples, k=1..4, both sides agree with normal ordering".into(),
        )
    } else {
        (false, bad.join("; "))
    }
}

struct Verdict {
    n: u32,
    pass: bool,
    printed_only: bool,
    detail: String,
}

fn of_suite(items: &[Item], suite: Suite) -> Vec<&Item> {
    items.iter().filter(|i| i.suite == suite).collect()
}

fn mismatches(items: &[&Item]) -> Vec<String> {
    items
        .iter()
        .filter(|i| i.status == Status::PrintedMismatch)
        .map(|i| format!("[{}] {}", i.ty, i.identity))
        .collect()
}

fn fails(items: &[&Item]) -> Vec<String> {
    items
        .iter()
        .filter(|i| i.status == Status::Fail)
        .map(|i| format!("[{}] {}: {}", i.ty, i.identity, i.computed))
        .collect()
}

/// All items pass; printed mismatches fail the criterion but are marked as such.
fn exact_match(n: u32, items: &[&Item], what: &str) -> Verdict {
    let (f, m) = (fails(items), mismatches(items));
    let pass = f.is_empty() && m.is_empty() && !items.is_empty();
    let detail = if pass {
        format!("{} {what} items pass", items.len())
    } else if f.is_empty() && !items.is_empty() {
        format!("printed values not reproduced: {}", m.join(", "))
    } else {
        format!("engine failures: {}", f.join(", "))
    };
    Verdict {
        n,
        pass,
        printed_only: f.is_empty() && !items.is_empty(),
        detail,
    }
}

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let opts = Options::default();
    let mut verdicts = Vec::new();

    let t0 = Instant::now();
    let alg = verify(&SeedType::ALL, &[Suite::Algebra], &opts);
    let elapsed = t0.elapsed();
    let ids = [
        "A†A+E=H+",
        "AA†+E=H−",
        "H−A=AH+",
        "[H,B]=−2B",
        "[H,B†]=+2B†",
    ];
    let ops: Vec<&Item> = alg
        .items
        .iter()
        .filter(|i| ids.contains(&i.identity.as_str()))
        .collect();
    let ok = ops.len() == 15
        && ops.iter().all(|i| i.status == Status::Pass)
        && elapsed < Duration::from_secs(60);
    verdicts.push(Verdict {
        n: 1,
        pass: ok,
        printed_only: false,
        detail: format!(
            "{} of 15 identities exact in {:.1?}",
            ops.iter().filter(|i| i.status == Status::Pass).count(),
            elapsed
        ),
    });

    let closure_ids = [
        "ladder step = 2",
        "[B,B†]=S(H) cubic, leading 2",
        "B†B=R(H) quartic",
        "BB†=R(H+2) quartic",
        "S(H)=R(H+2)−R(H)",
    ];
    let closure: Vec<&Item> = alg
        .items
        .iter()
        .filter(|i| closure_ids.contains(&i.identity.as_str()))
        .collect();
    let flagged = |id: &str| {
        alg.items
            .iter()
            .any(|i| i.ty == "I" && i.identity == id && i.status == Status::PrintedMismatch)
    };
    let closure_ok = closure.len() == 15 && closure.iter().all(|i| i.status == Status::Pass);
    let (r_flag, f_flag) = (flagged("R^I"), flagged("f_n^I"));
    verdicts.push(Verdict {
        n: 2,
        pass: closure_ok && r_flag && f_flag,
        printed_only: false,
        detail: format!(
            "closure {} for all types; R^I flagged {r_flag}; f_n^I flagged {f_flag}",
            if closure_ok { "exact" } else { "broken" }
        ),
    });

    let (ok, detail) = criterion_3(opts.seed);
    verdicts.push(Verdict {
        n: 3,
        pass: ok,
        printed_only: false,
        detail,
    });

    let suites = [
        Suite::ZeroModes,
        Suite::Chains,
        Suite::SecondChain,
        Suite::Diagram,
        Suite::Numeric,
    ];
    let rep = verify(&SeedType::ALL, &suites, &opts);

    verdicts.push(exact_match(
        4,
        &of_suite(&rep.items, Suite::ZeroModes),
        "zero-mode",
    ));

    let mut chains = exact_match(5, &of_suite(&rep.items, Suite::Chains), "chain");
    chains.printed_only = false;
    verdicts.push(chains);

    verdicts.push(exact_match(
        6,
        &of_suite(&rep.items, Suite::SecondChain),
        "second-chain",
    ));
    verdicts.push(exact_match(
        7,
        &of_suite(&rep.items, Suite::Diagram),
        "diagram window",
    ));

    let num = of_suite(&rep.items, Suite::Numeric);
    let worst = num
        .iter()
        .filter_map(|i| i.computed.split_whitespace().nth(3)?.parse::<f64>().ok())
        .fold(0.0f64, f64::max);
    let mut v = exact_match(8, &num, "numeric");
    v.printed_only = false;
    if v.pass {
        v.detail = format!(
            "{} items, worst relative residual {worst:.1e} at 128 bits",
            num.len()
        );
    }
    verdicts.push(v);

    let mut abort = false;
    for v in &verdicts {
        println!(
            "criterion {}: {} ({})",
            v.n,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
        abort |= !v.pass && !v.printed_only;
    }
    let engine = fails(&alg.items.iter().chain(&rep.items).collect::<Vec<_>>());
    if !engine.is_empty() {
        println!("engine failures: {}", engine.join(", "));
        abort = true;
    }
    if abort {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
