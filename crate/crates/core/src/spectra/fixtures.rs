//! Printed zero modes, added states, arrow coefficients, rosters and figure
//! windows, transcribed per seed type.

use crate::arith::{parse_alpha, parse_xrat, rat, AlphaRat, Rational};
use crate::model::SeedType;
use crate::space::{Exponent, StateSum};

use super::{label, Ladder};

/// `exp(s x^2) x^(p + q a) r(x)` as printed. `s = None` marks a Gaussian
/// whose printed exponent is unreadable and must be re-derived.
#[derive(Clone, Debug)]
pub struct PrintedState {
    pub name: &'static str,
    pub s: Option<Rational>,
    pub p: Rational,
    pub q: i64,
    pub r: &'static str,
}

impl PrintedState {
    pub fn with_gaussian(&self, s: Rational) -> StateSum {
        let r = parse_xrat(self.r).expect("static expression");
        StateSum::term(s, Exponent::new(self.p.clone(), self.q), r)
    }

    /// Candidate states: the printed one, or both Gaussians if unreadable.
    pub fn candidates(&self) -> Vec<StateSum> {
        match &self.s {
            Some(s) => vec![self.with_gaussian(s.clone())],
            None => vec![
                self.with_gaussian(rat(-1, 4)),
                self.with_gaussian(rat(1, 4)),
            ],
        }
    }
}

/// Printed `H psi = weight psi + coeff companion`.
#[derive(Clone, Debug)]
pub struct PrintedAction {
    pub name: &'static str,
    pub weight: &'static str,
    pub companion: Option<(&'static str, &'static str)>,
}

impl PrintedAction {
    pub fn weight(&self) -> AlphaRat {
        parse_alpha(self.weight).expect("static expression")
    }
}

fn ps(
    name: &'static str,
    s: Option<(i64, i64)>,
    p: (i64, i64),
    q: i64,
    r: &'static str,
) -> PrintedState {
    PrintedState {
        name,
        s: s.map(|(n, d)| rat(n, d)),
        p: rat(p.0, p.1),
        q,
        r,
    }
}

const NEG: Option<(i64, i64)> = Some((-1, 4));
const POS: Option<(i64, i64)> = Some((1, 4));

fn act(name: &'static str, weight: &'static str) -> PrintedAction {
    PrintedAction {
        name,
        weight,
        companion: None,
    }
}

fn gen(
    name: &'static str,
    weight: &'static str,
    comp: &'static str,
    coeff: &'static str,
) -> PrintedAction {
    PrintedAction {
        name,
        weight,
        companion: Some((comp, coeff)),
    }
}

/// Printed zero modes of `B` (`psi_k`) and `B^dagger` (`phi_k`).
pub fn zero_modes(ty: SeedType, which: Ladder) -> Vec<PrintedState> {
    match (ty, which) {
        (SeedType::I, Ladder::B) => vec![
            ps("psi_1", NEG, (-1, 2), -1, "1/(2+x^2+2a)"),
            ps("psi_2", NEG, (-1, 2), -1, "(-x^4-4x^2(1+a))/(4(2+x^2+2a))"),
            ps("psi_3", NEG, (3, 2), 1, "(-x^2-2(2+a))/(4a(2+a)(2+x^2+2a))"),
            ps("psi_4", POS, (3, 2), 1, "-2/(2+x^2+2a)"),
        ],
        (SeedType::I, Ladder::BDag) => vec![
            ps("phi_1", NEG, (-1, 2), -1, "1/(2+x^2+2a)"),
            ps("phi_2", POS, (-1, 2), -1, "(x^2+2a)/(2+x^2+2a)"),
            ps("phi_3", POS, (3, 2), 1, "-1/(2a(2+x^2+2a))"),
            ps("phi_4", POS, (7, 2), 1, "(4+x^2+4a)/(4(2+a)(2+x^2+2a))"),
        ],
        (SeedType::II, Ladder::B) => vec![
            ps("psi_1", POS, (-1, 2), 1, "1/(-2+x^2+2a)"),
            ps("psi_2", NEG, (3, 2), -1, "1/(-2+x^2+2a)"),
            ps("psi_3", NEG, (-1, 2), 1, "(x^2+2a)/(2a(-2+x^2+2a))"),
            ps("psi_4", NEG, (7, 2), -1, "(x^2-4+4a)/(4(a-2)(-2+x^2+2a))"),
        ],
        (SeedType::II, Ladder::BDag) => vec![
            ps("phi_1", POS, (-1, 2), 1, "1/(-2+x^2+2a)"),
            ps("phi_2", POS, (3, 2), -1, "(-4+x^2+2a)/(2(a-2)(-2+x^2+2a))"),
            ps("phi_3", POS, (3, 2), 1, "(4-x^2-4a)/(8a(-2+x^2+2a))"),
            ps("phi_4", NEG, (3, 2), -1, "2/(-2+x^2+2a)"),
        ],
        (SeedType::III, Ladder::B) => vec![
            ps("psi_1", None, (-1, 2), 1, "1/(2+x^2-2a)"),
            ps("psi_2", None, (3, 2), -1, "(4+x^2-2a)/(2(a-2)(2+x^2-2a))"),
            ps("psi_3", None, (3, 2), 1, "(4+x^2-4a)/(8a(2+x^2-2a))"),
            ps("psi_4", None, (3, 2), -1, "-2/(2+x^2-2a)"),
        ],
        (SeedType::III, Ladder::BDag) => vec![
            ps("phi_1", None, (-1, 2), 1, "1/(2+x^2-2a)"),
            ps("phi_2", None, (3, 2), -1, "-1/(2+x^2-2a)"),
            ps("phi_3", None, (-1, 2), 1, "-(x^2-2a)/(2a(2+x^2-2a))"),
            ps("phi_4", None, (7, 2), -1, "(4+x^2-4a)/(4(a-2)(2+x^2-2a))"),
        ],
    }
}

/// Printed `H`-actions on the zero modes. Companions name printed states of
/// either list.
pub fn h_actions(ty: SeedType) -> Vec<PrintedAction> {
    match ty {
        SeedType::I => vec![
            act("psi_1", "-3-a"),
            gen("psi_2", "1-a", "psi_1", "-4a(1+a)"),
            act("psi_3", "1+a"),
            act("psi_4", "-1-a"),
            act("phi_1", "-3-a"),
            act("phi_2", "a-1"),
        ],
        SeedType::II => vec![
            act("psi_1", "3-a"),
            act("psi_2", "1-a"),
            act("psi_3", "1+a"),
            gen("psi_4", "5-a", "psi_2", "4a-4"),
            act("phi_1", "3-a"),
            act("phi_2", "a-1"),
            gen("phi_3", "-a-1", "psi_1", "2a-2"),
            act("phi_4", "-a+1"),
        ],
        SeedType::III => vec![
            act("psi_1", "-3+a"),
            act("psi_2", "1-a"),
            gen("psi_3", "1+a", "psi_1", "2+2a"),
            act("psi_4", "-1+a"),
            act("phi_1", "-3+a"),
            act("phi_2", "a-1"),
            act("phi_3", "-a-1"),
            gen("phi_4", "a-5", "psi_4", "-2+2a"),
        ],
    }
}

/// Printed coincidences between lowering and raising modes:
/// `(phi, psi, c)` with `phi = c psi`.
pub fn printed_coincidences(ty: SeedType) -> Vec<(&'static str, &'static str, &'static str)> {
    match ty {
        SeedType::I => vec![("phi_3", "psi_4", "1/(4a)"), ("phi_1", "psi_1", "1")],
        SeedType::II => vec![("phi_1", "psi_1", "1"), ("phi_4", "psi_2", "2")],
        SeedType::III => vec![("phi_2", "psi_4", "1/2"), ("phi_1", "psi_1", "1")],
    }
}

/// States added through their Schrodinger equation, with their weights.
pub fn added_states(ty: SeedType) -> Vec<(&'static str, PrintedState)> {
    match ty {
        SeedType::I => vec![(
            "-5-a",
            ps(
                "psi(-5-a)",
                POS,
                (3, 2),
                1,
                "(x^4+4x^2(1+a)+4(1+a)(2+a))/(2+x^2+2a)",
            ),
        )],
        SeedType::II => vec![
            (
                "5-a",
                ps(
                    "chi_1",
                    NEG,
                    (3, 2),
                    -1,
                    "-(x^4+4x^2(a-1)+4(a-2)(a-1))/(-2+x^2+2a)",
                ),
            ),
            (
                "-a-1",
                ps(
                    "chi_2",
                    POS,
                    (-1, 2),
                    1,
                    "(x^4+4x^2(a-1)+4(a-1)a)/(-2+x^2+2a)",
                ),
            ),
        ],
        SeedType::III => vec![
            (
                "a+1",
                ps(
                    "chi_1",
                    NEG,
                    (-1, 2),
                    1,
                    "(x^4-4x^2(a-1)+4(a-1)a)/(2+x^2-2a)",
                ),
            ),
            (
                "a-5",
                ps(
                    "chi_2",
                    POS,
                    (3, 2),
                    -1,
                    "(x^4-4x^2(a-1)+4(a-2)(a-1))/(2+x^2-2a)",
                ),
            ),
        ],
    }
}

/// Where a first-chain state of the roster comes from.
#[derive(Clone, Debug)]
pub enum Source {
    /// A printed zero mode, by name (`psi_k` lowering, `phi_k` raising).
    Mode(&'static str),
    /// An added state, by its printed name.
    Added(&'static str),
}

/// Named first-chain states of one type: `(weight, source)`.
pub fn named_states(ty: SeedType) -> Vec<(&'static str, Source)> {
    use Source::*;
    match ty {
        SeedType::I => vec![
            ("-5-a", Added("psi(-5-a)")),
            ("-3-a", Mode("psi_1")),
            ("-1-a", Mode("phi_3")),
            ("a-1", Mode("phi_2")),
            ("1+a", Mode("psi_3")),
        ],
        SeedType::II => vec![
            ("-a-1", Added("chi_2")),
            ("1-a", Mode("psi_2")),
            ("3-a", Mode("psi_1")),
            ("5-a", Added("chi_1")),
            ("a-1", Mode("phi_2")),
            ("a+1", Mode("psi_3")),
        ],
        SeedType::III => vec![
            ("-a-1", Mode("phi_3")),
            ("1-a", Mode("psi_2")),
            ("a-5", Added("chi_2")),
            ("a-3", Mode("psi_1")),
            ("a-1", Mode("psi_4")),
            ("a+1", Added("chi_1")),
        ],
    }
}

/// Generalized zero modes and the labels they carry in the diagrams.
pub fn generalized_names(ty: SeedType) -> Vec<(&'static str, String)> {
    let w = |s: &str| parse_alpha(s).expect("static expression");
    match ty {
        SeedType::I => vec![
            ("phi_4", label("hat", &w("-5-a"))),
            ("psi_2", label("hat", &w("-3-a"))),
        ],
        SeedType::II => vec![
            ("psi_4", label("gen", &w("5-a"))),
            ("phi_3", label("gen", &w("-a-1"))),
        ],
        SeedType::III => vec![
            ("psi_3", label("gen", &w("a+1"))),
            ("phi_4", label("gen", &w("a-5"))),
        ],
    }
}

/// A chain generator of the roster.
#[derive(Clone, Debug)]
pub struct Generator {
    pub tilde: bool,
    pub weight: &'static str,
    pub up: bool,
    /// False for chains the figures show but the printed roster omits.
    pub printed: bool,
}

fn g(tilde: bool, weight: &'static str, up: bool, printed: bool) -> Generator {
    Generator {
        tilde,
        weight,
        up,
        printed,
    }
}

pub fn generators(ty: SeedType) -> Vec<Generator> {
    match ty {
        SeedType::I => vec![
            g(false, "1+a", true, true),
            g(false, "-5-a", false, true),
            g(true, "-5-a", false, true),
            g(true, "-1-a", true, true),
            g(true, "1+a", true, true),
            g(false, "a-1", false, false),
        ],
        SeedType::II => vec![
            g(false, "-a-1", false, true),
            g(false, "5-a", true, true),
            g(false, "a+1", true, true),
            g(true, "-a-1", false, true),
            g(true, "5-a", true, true),
            g(true, "a+1", true, true),
            g(false, "a-1", false, false),
        ],
        SeedType::III => vec![
            g(false, "-a-1", false, true),
            g(false, "1-a", true, true),
            g(false, "a-5", false, true),
            g(false, "a+1", true, true),
            g(true, "-a-1", false, true),
            g(true, "1-a", true, true),
            g(true, "a-5", false, true),
            g(true, "a+1", true, true),
        ],
    }
}

/// Second-kind partners that are not chain generators.
pub fn added_tildes(ty: SeedType) -> Vec<&'static str> {
    match ty {
        SeedType::I => vec!["-3-a", "a-1"],
        SeedType::II => vec!["1-a", "3-a", "a-1"],
        SeedType::III => vec!["a-3", "a-1"],
    }
}

/// Printed arrow from a second-kind state to a first-chain state.
/// `coeff = None` where only proportionality is printed.
#[derive(Clone, Debug)]
pub struct PrintedArrow {
    pub from: &'static str,
    pub op: Ladder,
    pub to: &'static str,
    pub coeff: Option<&'static str>,
    /// The printed source label, when it differs from `from`.
    pub printed_from: Option<&'static str>,
}

fn arrow(
    from: &'static str,
    op: Ladder,
    to: &'static str,
    coeff: Option<&'static str>,
) -> PrintedArrow {
    PrintedArrow {
        from,
        op,
        to,
        coeff,
        printed_from: None,
    }
}

/// Diagonal arrows `op tilde(from) = coeff psi(to)`; weights as strings.
pub fn diagonal_arrows(ty: SeedType) -> Vec<PrintedArrow> {
    use Ladder::*;
    match ty {
        SeedType::I => vec![
            arrow("1+a", B, "a-1", None),
            arrow("-1-a", B, "-3-a", None),
            arrow("-5-a", BDag, "-3-a", None),
            arrow("-3-a", BDag, "-1-a", None),
            arrow("a-1", BDag, "1+a", None),
        ],
        SeedType::II => vec![
            arrow("3-a", BDag, "5-a", Some("1")),
            arrow("3-a", B, "1-a", Some("4-4a")),
            arrow("5-a", B, "3-a", Some("-1")),
            arrow("a-1", BDag, "a+1", Some("-4(a-2)(a-1)a")),
            arrow("a+1", B, "a-1", Some("4(a-2)(a-1)a")),
            arrow("-a-1", BDag, "1-a", Some("-1")),
            arrow("1-a", B, "-a-1", Some("1")),
        ],
        SeedType::III => vec![
            PrintedArrow {
                printed_from: Some("a-1"),
                ..arrow("-a-1", BDag, "1-a", Some("-4(a-2)(a-1)a"))
            },
            arrow("1-a", B, "-a-1", Some("4(a-2)(a-1)a")),
            arrow("a-5", BDag, "a-3", Some("1")),
            arrow("a-3", B, "a-5", Some("-1")),
            arrow("a-3", BDag, "a-1", Some("-2+2a")),
            arrow("a-1", B, "a-3", Some("2-2a")),
            arrow("a-1", BDag, "a+1", Some("1/2")),
            arrow("a+1", B, "a-1", Some("-1/2")),
        ],
    }
}

/// Printed relations for generalized states (type I only).
#[derive(Clone, Debug)]
pub struct PrintedGeneralized {
    pub mode: &'static str,
    pub h_weight: &'static str,
    /// `(weight of companion eigenstate, coefficient)`.
    pub h_companion: (&'static str, &'static str),
    /// Ladder that annihilates the state.
    pub zero: Ladder,
    /// Weights in the printed support of the other ladder's image.
    pub support: Vec<&'static str>,
}

pub fn generalized_relations(ty: SeedType) -> Vec<PrintedGeneralized> {
    match ty {
        SeedType::I => vec![
            PrintedGeneralized {
                mode: "phi_4",
                h_weight: "-5-a",
                h_companion: ("-5-a", "-1/(2+a)"),
                zero: Ladder::BDag,
                support: vec!["-7-a", "-1-a"],
            },
            PrintedGeneralized {
                mode: "psi_2",
                h_weight: "1-a",
                h_companion: ("-3-a", "-4a(1+a)"),
                zero: Ladder::B,
                support: vec!["3-a", "-1-a"],
            },
        ],
        _ => Vec::new(),
    }
}

/// Edge out of a window node as drawn in a figure.
#[derive(Clone, Debug, PartialEq)]
pub enum Drawn {
    Zero,
    /// To the window node with this label.
    To(String),
    /// A nonzero arrow leaving the window.
    Out,
    /// No arrow drawn.
    Undrawn,
}

/// One window node: `(label, B edge, Bdag edge)`.
pub type WindowNode = (String, Drawn, Drawn);

fn w(s: &str) -> AlphaRat {
    parse_alpha(s).expect("static expression")
}

fn p(s: &str) -> String {
    label("psi", &w(s))
}

fn t(s: &str) -> String {
    label("tilde", &w(s))
}

/// The window of the 2-chain figure for each type.
pub fn figure_window(ty: SeedType) -> Vec<WindowNode> {
    use Drawn::*;
    match ty {
        SeedType::I => vec![
            (p("-5-a"), Out, Zero),
            (p("-3-a"), Zero, Zero),
            (p("-1-a"), Zero, Zero),
            (p("a-1"), Out, Zero),
            (p("1+a"), Zero, Out),
            (t("-5-a"), Out, To(p("-3-a"))),
            (t("-3-a"), Undrawn, To(p("-1-a"))),
            (t("-1-a"), To(p("-3-a")), Out),
            (t("a-1"), Out, To(p("1+a"))),
            (t("1+a"), To(p("a-1")), Out),
        ],
        SeedType::II => vec![
            (p("-a-1"), Out, Zero),
            (p("1-a"), Zero, Zero),
            (p("3-a"), Zero, Zero),
            (p("5-a"), Zero, Out),
            (p("a-1"), Out, Zero),
            (p("a+1"), Zero, Out),
            (t("-a-1"), Out, To(p("1-a"))),
            (t("1-a"), To(p("-a-1")), Zero),
            (t("3-a"), To(p("1-a")), To(p("5-a"))),
            (t("5-a"), To(p("3-a")), Out),
            (t("a-1"), Out, To(p("a+1"))),
            (t("a+1"), To(p("a-1")), Out),
        ],
        SeedType::III => vec![
            (p("-a-1"), Out, Zero),
            (p("1-a"), Zero, Out),
            (p("a-5"), Out, Zero),
            (p("a-3"), Zero, Zero),
            (p("a-1"), Zero, Zero),
            (p("a+1"), Zero, Out),
            (t("-a-1"), Out, To(p("1-a"))),
            (t("1-a"), To(p("-a-1")), Out),
            (t("a-5"), Out, To(p("a-3"))),
            (t("a-3"), To(p("a-5")), To(p("a-1"))),
            (t("a-1"), To(p("a-3")), To(p("a+1"))),
            (t("a+1"), To(p("a-1")), Out),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse() {
        for ty in SeedType::ALL {
            for which in [Ladder::B, Ladder::BDag] {
                for s in zero_modes(ty, which) {
                    assert!(!s.candidates()[0].is_zero());
                }
            }
            for a in h_actions(ty) {
                a.weight();
            }
            for (wt, s) in added_states(ty) {
                w(wt);
                s.candidates();
            }
            assert!(!figure_window(ty).is_empty());
        }
    }

    #[test]
    fn window_labels_are_canonical() {
        assert_eq!(p("-3-a"), "psi(-a-3)");
        assert_eq!(t("1+a"), "tilde(a+1)");
    }
}
