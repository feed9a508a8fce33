//! Taylor jets of the 2x2 reduced matrix
//! `𝙱(μ̲+δ, ε) = [[α, iβ], [−iβ, γ]]` at the first isola.
//!
//! Two independent routes are provided. The term ledger evaluates the named
//! brackets one by one and sums them with fixed weights. [`reduced_entry`]
//! expands the projector series generically, summing every chain of the
//! requested order.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::basis::{big_omega, ModeIndex};
use crate::entanglement::{
    apply_chain, bracket, JetIndex, Link, Projector, SparseVec, LOWER, MU, UPPER,
};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    Alpha2,
    Beta1,
    Gamma2,
    Beta2,
    Beta3,
}

impl Group {
    pub fn slug(self) -> &'static str {
        match self {
            Group::Alpha2 => "alpha2",
            Group::Beta1 => "beta1",
            Group::Gamma2 => "gamma2",
            Group::Beta2 => "beta2",
            Group::Beta3 => "beta3",
        }
    }

    /// The monomial multiplying every entry of the group.
    pub fn monomial(self) -> &'static str {
        match self {
            Group::Beta2 => "δε²",
            Group::Beta3 => "ε⁴",
            _ => "ε²",
        }
    }

    pub fn parse(s: &str) -> Option<Group> {
        [
            Group::Alpha2,
            Group::Beta1,
            Group::Gamma2,
            Group::Beta2,
            Group::Beta3,
        ]
        .into_iter()
        .find(|g| g.slug() == s)
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

/// One step applied to a vector before it enters a bracket.
#[derive(Debug, Clone, PartialEq)]
pub enum Stage {
    /// `𝒫[A_q, …, A_1]` with the links listed in application order.
    Chain(Vec<Link>),
    Project(Projector),
}

#[derive(Debug, Clone, PartialEq)]
pub enum TermKind {
    /// `(𝓑 L f_source, R f_target)` with the stages of `L` and `R` applied in order.
    Bracket {
        outer: Link,
        source: ModeIndex,
        target: ModeIndex,
        left: Vec<Stage>,
        right: Vec<Stage>,
    },
    /// Coefficient of `f_target` in `S f_source`.
    Component {
        source: ModeIndex,
        target: ModeIndex,
        stages: Vec<Stage>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TermDef {
    pub group: Group,
    pub name: &'static str,
    pub kind: TermKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TermReport {
    pub group: Group,
    pub name: String,
    pub value: Complex64,
}

impl TermReport {
    pub fn key(&self) -> String {
        format!("{}/{}", self.group, self.name)
    }
}

fn run(stages: &[Stage], v: SparseVec) -> Result<SparseVec> {
    let mut v = v;
    for s in stages {
        v = match s {
            Stage::Chain(links) => apply_chain(links, &v)?,
            Stage::Project(q) => v.project(*q),
        };
    }
    Ok(v)
}

impl TermDef {
    pub fn evaluate(&self) -> Result<Complex64> {
        match &self.kind {
            TermKind::Bracket {
                outer,
                source,
                target,
                left,
                right,
            } => {
                let u = run(left, SparseVec::basis(*source))?;
                let v = run(right, SparseVec::basis(*target))?;
                Ok(bracket(*outer, &u, &v))
            }
            TermKind::Component {
                source,
                target,
                stages,
            } => Ok(run(stages, SparseVec::basis(*source))?.get(*target)),
        }
    }
}

fn e(n: u32, kappa: i32) -> Link {
    Link::new(0, n, kappa)
}

fn d(n: u32, kappa: i32) -> Link {
    Link::new(1, n, kappa)
}

fn chain(links: &[Link]) -> Stage {
    Stage::Chain(links.to_vec())
}

const P0: Stage = Stage::Project(Projector::P0);
const OFF: Stage = Stage::Project(Projector::Complement);

fn left(
    group: Group,
    name: &'static str,
    outer: Link,
    src: ModeIndex,
    tgt: ModeIndex,
    stages: Vec<Stage>,
) -> TermDef {
    TermDef {
        group,
        name,
        kind: TermKind::Bracket {
            outer,
            source: src,
            target: tgt,
            left: stages,
            right: Vec::new(),
        },
    }
}

fn right(
    group: Group,
    name: &'static str,
    outer: Link,
    src: ModeIndex,
    tgt: ModeIndex,
    stages: Vec<Stage>,
) -> TermDef {
    TermDef {
        group,
        name,
        kind: TermKind::Bracket {
            outer,
            source: src,
            target: tgt,
            left: Vec::new(),
            right: stages,
        },
    }
}

/// Every ledger entry except `𝐋`, which is derived from the others.
pub fn term_defs() -> Vec<TermDef> {
    use Group::*;
    let (lo, up) = (LOWER, UPPER);
    let b2 = |name, outer, stages| left(Beta2, name, outer, lo, up, stages);
    let b3 = |name, outer, stages| left(Beta3, name, outer, lo, up, stages);
    let b3r = |name, outer, stages| right(Beta3, name, outer, lo, up, stages);
    vec![
        left(Alpha2, "Aa", e(2, 0), up, up, vec![]),
        left(Alpha2, "Ab", e(1, 1), up, up, vec![chain(&[e(1, -1)])]),
        left(Alpha2, "Ac", e(1, -1), up, up, vec![chain(&[e(1, 1)])]),
        left(Beta1, "Ba", e(2, 2), lo, up, vec![]),
        left(Beta1, "Bb", e(1, 1), lo, up, vec![chain(&[e(1, 1)])]),
        left(Gamma2, "Ca", e(2, 0), lo, lo, vec![]),
        left(Gamma2, "Cb", e(1, 1), lo, lo, vec![chain(&[e(1, -1)])]),
        left(Gamma2, "Cc", e(1, -1), lo, lo, vec![chain(&[e(1, 1)])]),
        b2("Θ", d(2, 2), vec![]),
        b2("I", d(1, 1), vec![chain(&[e(1, 1)])]),
        b2("II", e(2, 2), vec![chain(&[d(0, 0)])]),
        b2("IIIa", e(1, 1), vec![chain(&[d(1, 1)])]),
        b2("IIIb", e(1, 1), vec![chain(&[e(1, 1), d(0, 0)])]),
        right(
            Beta2,
            "IIIc",
            d(0, 0),
            lo,
            up,
            vec![chain(&[e(1, -1), e(1, -1)]), OFF],
        ),
        b2("IIId", e(1, 1), vec![chain(&[d(0, 0), e(1, 1)])]),
        b2("IVa", d(0, 0), vec![chain(&[e(2, 2)]), OFF]),
        b2("IVb", d(0, 0), vec![chain(&[e(1, 1), e(1, 1)]), OFF]),
        right(
            Beta2,
            "IVc",
            e(1, 1),
            lo,
            up,
            vec![chain(&[d(0, 0), e(1, -1)])],
        ),
        b3("Θ", e(4, 2), vec![]),
        b3("I", e(3, 1), vec![chain(&[e(1, 1)])]),
        b3("II", e(3, 3), vec![chain(&[e(1, -1)])]),
        b3("IIIa", e(2, 0), vec![chain(&[e(2, 2)]), OFF]),
        b3("IIIb", e(2, 0), vec![chain(&[e(1, 1), e(1, 1)]), OFF]),
        b3r("IIIb^", e(1, 1), vec![chain(&[e(2, 0), e(1, -1)])]),
        b3("IVa", e(2, 2), vec![chain(&[e(2, 0)]), OFF]),
        b3("IVb", e(2, 2), vec![chain(&[e(1, -1), e(1, 1)]), OFF]),
        b3r("IVb^", e(1, -1), vec![chain(&[e(2, -2), e(1, -1)])]),
        b3("IVc", e(2, 2), vec![chain(&[e(1, 1), e(1, -1)]), OFF]),
        b3r("IVc^", e(1, 1), vec![chain(&[e(2, -2), e(1, 1)])]),
        b3("Va", e(1, 1), vec![chain(&[e(3, 1)])]),
        b3("Vb", e(1, 1), vec![chain(&[e(1, 1), e(2, 0)])]),
        b3r("Vc", e(2, 0), vec![chain(&[e(1, -1), e(1, -1)]), OFF]),
        b3("Vc^", e(1, 1), vec![chain(&[e(2, 0), e(1, 1)])]),
        b3("Vd", e(1, 1), vec![chain(&[e(1, -1), e(2, 2)])]),
        b3r("Ve", e(2, 2), vec![chain(&[e(1, -1), e(1, 1)]), OFF]),
        b3("Ve^", e(1, 1), vec![chain(&[e(2, 2), e(1, -1)])]),
        b3("Vf", e(1, 1), vec![chain(&[e(1, 1), e(1, 1), e(1, -1)])]),
        b3("Vg", e(1, 1), vec![chain(&[e(1, 1), e(1, -1), e(1, 1)])]),
        b3("Vh", e(1, 1), vec![chain(&[e(1, -1), e(1, 1), e(1, 1)])]),
        b3("VIa", e(1, -1), vec![chain(&[e(3, 3)])]),
        b3("VIb", e(1, -1), vec![chain(&[e(1, 1), e(2, 2)])]),
        b3r("VIc", e(2, 2), vec![chain(&[e(1, 1), e(1, -1)]), OFF]),
        b3("VIc^", e(1, -1), vec![chain(&[e(2, 2), e(1, 1)])]),
        b3("VId", e(1, -1), vec![chain(&[e(1, 1), e(1, 1), e(1, 1)])]),
        TermDef {
            group: Beta3,
            name: "ζ₁",
            kind: TermKind::Component {
                source: lo,
                target: up,
                stages: vec![chain(&[e(1, 1), e(1, 1)]), P0],
            },
        },
        TermDef {
            group: Beta3,
            name: "ζ₂",
            kind: TermKind::Component {
                source: up,
                target: lo,
                stages: vec![chain(&[e(1, -1), e(1, -1)]), P0],
            },
        },
    ]
}

/// The named brackets and their values, in a fixed order.
#[derive(Debug, Clone, PartialEq)]
pub struct Ledger {
    pub terms: Vec<TermReport>,
}

impl Ledger {
    pub fn get(&self, group: Group, name: &str) -> Complex64 {
        self.terms
            .iter()
            .find(|t| t.group == group && t.name == name)
            .map(|t| t.value)
            .unwrap_or_else(|| panic!("no ledger entry {group}/{name}"))
    }

    fn weighted(&self, group: Group, weights: &[(&str, f64)]) -> Complex64 {
        weights.iter().map(|(n, w)| self.get(group, n) * *w).sum()
    }

    pub fn alpha2(&self) -> f64 {
        self.weighted(Group::Alpha2, &[("Aa", 1.0), ("Ab", 1.0), ("Ac", 1.0)])
            .re
    }

    pub fn beta1(&self) -> f64 {
        self.weighted(Group::Beta1, &[("Ba", 1.0), ("Bb", 1.0)]).im
    }

    pub fn gamma2(&self) -> f64 {
        self.weighted(Group::Gamma2, &[("Ca", 1.0), ("Cb", 1.0), ("Cc", 1.0)])
            .re
    }

    /// `iβ₂` before taking the imaginary part.
    pub fn beta2_sum(&self) -> Complex64 {
        self.weighted(Group::Beta2, BETA2_WEIGHTS)
    }

    pub fn beta2(&self) -> f64 {
        self.beta2_sum().im
    }

    /// `iβ₃` before taking the imaginary part.
    pub fn beta3_sum(&self) -> Complex64 {
        self.weighted(Group::Beta3, BETA3_WEIGHTS)
    }

    pub fn beta3(&self) -> f64 {
        self.beta3_sum().im
    }
}

pub const BETA2_WEIGHTS: &[(&str, f64)] = &[
    ("Θ", 1.0),
    ("I", 1.0),
    ("II", 1.0),
    ("IIIa", 1.0),
    ("IIIb", 1.0),
    ("IIIc", 0.5),
    ("IIId", 0.5),
    ("IVa", 1.0),
    ("IVb", 0.5),
    ("IVc", 0.5),
];

pub const BETA3_WEIGHTS: &[(&str, f64)] = &[
    ("Θ", 1.0),
    ("I", 1.0),
    ("II", 1.0),
    ("IIIa", 1.0),
    ("IIIb", 0.5),
    ("IIIb^", 0.5),
    ("IVa", 1.0),
    ("IVb", 0.5),
    ("IVb^", 0.5),
    ("IVc", 0.5),
    ("IVc^", 0.5),
    ("Va", 1.0),
    ("Vb", 1.0),
    ("Vc", 0.5),
    ("Vc^", 0.5),
    ("Vd", 1.0),
    ("Ve", 0.5),
    ("Ve^", 0.5),
    ("Vf", 1.0),
    ("Vg", 1.0),
    ("Vh", 1.0),
    ("VIa", 1.0),
    ("VIb", 1.0),
    ("VIc", 0.5),
    ("VIc^", 0.5),
    ("VId", 1.0),
    ("𝐋", 1.0),
];

/// Evaluates every entry. `𝐋` collects the brackets through `P₀P₂`; the ones
/// weighted by the diagonal coefficients of `P₀P₂^[0]` multiply `Bb = 0` and
/// are dropped.
pub fn term_ledger() -> Result<Ledger> {
    let mut terms = Vec::new();
    for def in term_defs() {
        terms.push(TermReport {
            group: def.group,
            name: def.name.to_string(),
            value: def.evaluate()?,
        });
    }
    let mut ledger = Ledger { terms };
    let z1 = ledger.get(Group::Beta3, "ζ₁");
    let z2 = ledger.get(Group::Beta3, "ζ₂");
    let a = ledger.get(Group::Alpha2, "Ab") + ledger.get(Group::Alpha2, "Ac");
    let c = ledger.get(Group::Gamma2, "Cb") + ledger.get(Group::Gamma2, "Cc");
    ledger.terms.push(TermReport {
        group: Group::Beta3,
        name: "𝐋".to_string(),
        value: -0.5 * (z1 * a + z2.conj() * c),
    });
    Ok(ledger)
}

pub fn alpha2() -> Result<f64> {
    Ok(term_ledger()?.alpha2())
}

pub fn beta1() -> Result<f64> {
    Ok(term_ledger()?.beta1())
}

pub fn gamma2() -> Result<f64> {
    Ok(term_ledger()?.gamma2())
}

pub fn beta2() -> Result<f64> {
    Ok(term_ledger()?.beta2())
}

pub fn beta3() -> Result<f64> {
    Ok(term_ledger()?.beta3())
}

// ---- generic expansion -------------------------------------------------

/// Factor of a product `𝓑_a Q P_b Q P_c …` of fixed total orders.
#[derive(Debug, Clone, Copy)]
enum Factor {
    B(u32),
    P(u32),
    Q(Projector),
}

/// Summands of `X_k` where `𝔅_k = P₀* Sym[X_k] P₀`, `k ≤ 4`.
fn expansion_terms(k: u32) -> Vec<(f64, Vec<Factor>)> {
    use Factor::*;
    let off = Q(Projector::Complement);
    match k {
        0 | 1 => vec![(1.0, vec![B(k)])],
        2 => vec![(1.0, vec![B(2)]), (1.0, vec![B(1), P(1)])],
        3 => vec![
            (1.0, vec![B(3)]),
            (1.0, vec![B(2), P(1)]),
            (1.0, vec![B(1), off, P(2)]),
        ],
        4 => vec![
            (1.0, vec![B(4)]),
            (1.0, vec![B(3), P(1)]),
            (1.0, vec![B(2), off, P(2)]),
            (1.0, vec![B(1), off, P(3)]),
            (-1.0, vec![B(1), P(1), Q(Projector::P0), P(2)]),
        ],
        _ => Vec::new(),
    }
}

fn nonzero_jets(order: u32) -> Vec<JetIndex> {
    (0..=order.min(1))
        .map(|i| JetIndex::new(i, order - i))
        .filter(|j| !j.harmonics().is_empty())
        .collect()
}

/// Every ordered sequence of nonzero jets (application order) summing to `idx`.
fn compositions(idx: JetIndex) -> Vec<Vec<JetIndex>> {
    if idx.order() == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first_order in 1..=idx.order() {
        for first in nonzero_jets(first_order) {
            if first.i > idx.i || first.n > idx.n {
                continue;
            }
            let rest = JetIndex::new(idx.i - first.i, idx.n - first.n);
            for mut tail in compositions(rest) {
                tail.insert(0, first);
                out.push(tail);
            }
        }
    }
    out
}

fn harmonic_choices(jets: &[JetIndex]) -> Vec<Vec<Link>> {
    let mut out = vec![Vec::new()];
    for jet in jets {
        let mut next = Vec::new();
        for prefix in &out {
            for k in jet.harmonics() {
                let mut p = prefix.clone();
                p.push(Link {
                    ell: *jet,
                    kappa: k,
                });
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// `P_idx v`, the `δ^i ε^n` Taylor coefficient of the perturbed spectral projector.
pub fn projector_jet(idx: JetIndex, v: &SparseVec) -> Result<SparseVec> {
    let mut out = SparseVec::default();
    for jets in compositions(idx) {
        for links in harmonic_choices(&jets) {
            out.axpy(Complex64::new(1.0, 0.0), &apply_chain(&links, v)?);
        }
    }
    Ok(out)
}

fn operator_bracket(idx: JetIndex, u: &SparseVec, v: &SparseVec) -> Complex64 {
    if idx.order() == 0 {
        // (𝓑₀ f_m, f_n) = −σω_m δ_mn
        let mut s = Complex64::new(0.0, 0.0);
        for (m, c) in &u.0 {
            s += c * v.get(*m).conj() * (-m.sigma.value() * crate::entanglement::frequency(*m));
        }
        return s;
    }
    idx.harmonics()
        .into_iter()
        .map(|k| bracket(Link { ell: idx, kappa: k }, u, v))
        .sum()
}

/// Splits `idx` over factors of the given total orders.
fn splits(idx: JetIndex, orders: &[u32]) -> Vec<Vec<JetIndex>> {
    let Some((&first, rest)) = orders.split_first() else {
        return if idx.order() == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    };
    let mut out = Vec::new();
    for i in 0..=first.min(idx.i) {
        let n = first - i;
        if n > idx.n {
            continue;
        }
        let remaining = JetIndex::new(idx.i - i, idx.n - n);
        for mut tail in splits(remaining, rest) {
            tail.insert(0, JetIndex::new(i, n));
            out.push(tail);
        }
    }
    out
}

fn unsymmetrized(idx: JetIndex, source: ModeIndex, target: ModeIndex) -> Result<Complex64> {
    let mut total = Complex64::new(0.0, 0.0);
    let tv = SparseVec::basis(target);
    for (coef, factors) in expansion_terms(idx.order()) {
        let orders: Vec<u32> = factors
            .iter()
            .filter_map(|f| match f {
                Factor::B(o) | Factor::P(o) => Some(*o),
                Factor::Q(_) => None,
            })
            .collect();
        for assignment in splits(idx, &orders) {
            let mut jets = assignment.into_iter();
            let mut assigned = Vec::new();
            for f in &factors {
                assigned.push(match f {
                    Factor::Q(q) => (None, Some(*q)),
                    _ => (jets.next(), None),
                });
            }
            let mut u = SparseVec::basis(source);
            for (jet, proj) in assigned.iter().skip(1).rev() {
                u = match (jet, proj) {
                    (Some(j), _) => projector_jet(*j, &u)?,
                    (None, Some(q)) => u.project(*q),
                    (None, None) => unreachable!(),
                };
            }
            let outer = assigned[0].0.expect("leading factor is an operator jet");
            total += coef * operator_bracket(outer, &u, &tv);
        }
    }
    Ok(total)
}

/// `(𝔅_idx f_source, f_target)` for `source, target ∈ {f_0^-, f_2^+}` and
/// total order at most 4.
pub fn reduced_entry(idx: JetIndex, source: ModeIndex, target: ModeIndex) -> Result<Complex64> {
    if idx.order() > 4 {
        return Err(crate::Error::InvalidInput(format!(
            "jet {idx} beyond order 4"
        )));
    }
    let forward = unsymmetrized(idx, source, target)?;
    let backward = unsymmetrized(idx, target, source)?;
    Ok(0.5 * (forward + backward.conj()))
}

/// Coefficients of `α`, `β`, `γ` keyed by `(δ-power, ε-power)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedMatrixJet {
    pub p: u32,
    pub alpha: BTreeMap<(u32, u32), f64>,
    pub beta: BTreeMap<(u32, u32), f64>,
    pub gamma: BTreeMap<(u32, u32), f64>,
}

impl ReducedMatrixJet {
    pub fn alpha(&self, i: u32, n: u32) -> f64 {
        self.alpha.get(&(i, n)).copied().unwrap_or(0.0)
    }

    pub fn beta(&self, i: u32, n: u32) -> f64 {
        self.beta.get(&(i, n)).copied().unwrap_or(0.0)
    }

    pub fn gamma(&self, i: u32, n: u32) -> f64 {
        self.gamma.get(&(i, n)).copied().unwrap_or(0.0)
    }

    pub fn t1(&self) -> f64 {
        self.alpha(1, 0) + self.gamma(1, 0)
    }

    pub fn t2(&self) -> f64 {
        self.alpha(0, 2) + self.gamma(0, 2)
    }

    /// The Hermitian matrix `𝙱` from the truncated jets.
    pub fn matrix(&self, delta: f64, eps: f64) -> [[Complex64; 2]; 2] {
        let eval = |m: &BTreeMap<(u32, u32), f64>| -> f64 {
            m.iter()
                .map(|(&(i, n), c)| c * delta.powi(i as i32) * eps.powi(n as i32))
                .sum()
        };
        let (a, b, g) = (eval(&self.alpha), eval(&self.beta), eval(&self.gamma));
        [
            [Complex64::new(a, 0.0), Complex64::new(0.0, b)],
            [Complex64::new(0.0, -b), Complex64::new(g, 0.0)],
        ]
    }
}

/// `α(1/4+δ, 0) = −ω_2^+(1/4+δ)`.
pub fn alpha_unperturbed(delta: f64) -> f64 {
    -(9.0 / 4.0 + delta - (9.0 / 4.0 + delta).sqrt())
}

/// `γ(1/4+δ, 0) = ω_0^-(1/4+δ)`.
pub fn gamma_unperturbed(delta: f64) -> f64 {
    0.25 + delta + (0.25 + delta).sqrt()
}

pub fn assemble_reduced_jet() -> Result<ReducedMatrixJet> {
    let ledger = term_ledger()?;
    let mut alpha = BTreeMap::new();
    let mut beta = BTreeMap::new();
    let mut gamma = BTreeMap::new();
    alpha.insert((0, 0), alpha_unperturbed(0.0));
    // d/dδ of −(9/4+δ−√(9/4+δ)) at δ=0
    alpha.insert((1, 0), -1.0 + 0.5 / big_omega(UPPER.j, MU));
    alpha.insert((0, 2), ledger.alpha2());
    gamma.insert((0, 0), gamma_unperturbed(0.0));
    gamma.insert((1, 0), 1.0 + 0.5 / big_omega(LOWER.j, MU));
    gamma.insert((0, 2), ledger.gamma2());
    beta.insert((0, 2), ledger.beta1());
    beta.insert((1, 2), ledger.beta2());
    beta.insert((0, 4), ledger.beta3());
    Ok(ReducedMatrixJet {
        p: 2,
        alpha,
        beta,
        gamma,
    })
}
