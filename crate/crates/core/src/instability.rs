//! Trace/discriminant analysis of a reversible Hamiltonian 2x2 matrix
//! `J𝙱(μ,ε)` near a collision, and the ellipse approximating the isola.
//!
//! Everything here is a truncated polynomial in `(ν, ε)` with
//! `ν = μ − μ₀(ε)`; higher-order remainders are dropped.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet_assembly::ReducedMatrixJet;

/// Coefficients driving the isola analysis.
///
/// `α(μ̲+δ,ε) = −ω_* + α₁δ + α₂ε² + …`, `γ(μ̲+δ,ε) = ω_* + γ₁δ + γ₂ε² + …`,
/// `β(μ̲+δ,ε) = β₁ε² + β₂δε² + β₃ε⁴ + …`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsolaModel {
    pub mu_bar: f64,
    pub omega_star: f64,
    pub alpha1: f64,
    pub gamma1: f64,
    pub alpha2: f64,
    pub gamma2: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub beta3: f64,
}

/// `|β₁|` below this counts as the degenerate case.
pub const DEGENERACY_TOL: f64 = 1e-12;

impl IsolaModel {
    pub fn from_jet(jet: &ReducedMatrixJet) -> Self {
        IsolaModel {
            mu_bar: 0.25,
            omega_star: jet.gamma(0, 0),
            alpha1: jet.alpha(1, 0),
            gamma1: jet.gamma(1, 0),
            alpha2: jet.alpha(0, 2),
            gamma2: jet.gamma(0, 2),
            beta1: jet.beta(0, 2),
            beta2: jet.beta(1, 2),
            beta3: jet.beta(0, 4),
        }
    }

    pub fn t1(&self) -> f64 {
        self.alpha1 + self.gamma1
    }

    pub fn t2(&self) -> f64 {
        self.alpha2 + self.gamma2
    }

    /// `β₃ − β₂T₂/T₁`, the ε⁴ coefficient of `β(μ₀(ε), ε)`.
    pub fn quartic_gap(&self) -> f64 {
        self.beta3 - self.beta2 * self.t2() / self.t1()
    }

    pub fn is_degenerate(&self) -> bool {
        self.beta1.abs() < DEGENERACY_TOL
    }

    /// Coefficients of `ε¹ … ε⁴` in `β(μ₀(ε), ε)`.
    pub fn trace_coefficients(&self) -> Vec<f64> {
        vec![0.0, self.beta1, 0.0, self.quartic_gap()]
    }

    /// ε² coefficient of `μ₀`.
    pub fn mu0_eps2(&self) -> f64 {
        -self.t2() / self.t1()
    }

    pub fn mu0(&self, eps: f64) -> f64 {
        self.mu_bar + self.mu0_eps2() * eps * eps
    }

    /// ε² coefficient of the isola center `S/2` at `ν = 0`.
    pub fn center_eps2(&self) -> f64 {
        0.5 * (self.gamma2 - self.alpha2 - (self.gamma1 - self.alpha1) * self.t2() / self.t1())
    }

    /// `S(μ₀+ν, ε)`.
    pub fn trace_s(&self, nu: f64, eps: f64) -> f64 {
        2.0 * self.omega_star
            + (self.gamma1 - self.alpha1) * nu
            + 2.0 * self.center_eps2() * eps * eps
    }
}

/// Truncated polynomial in `ε`, indexed by power.
#[derive(Debug, Clone, PartialEq)]
pub struct Series(pub Vec<f64>);

impl Series {
    pub fn eval(&self, eps: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * eps + c)
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.0.get(k).copied().unwrap_or(0.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalCurves {
    pub mu0: Series,
    pub mu_plus: Series,
    pub mu_minus: Series,
    pub nu_plus: Series,
    pub nu_minus: Series,
}

fn curves(model: &IsolaModel, power: usize, nu_coeff: f64) -> CriticalCurves {
    let mu0 = Series(vec![model.mu_bar, 0.0, model.mu0_eps2()]);
    let mut nu_plus = vec![0.0; power + 1];
    nu_plus[power] = -nu_coeff;
    let nu_minus: Vec<f64> = nu_plus.iter().map(|c| -c).collect();
    let shift = |nu: &[f64]| {
        let mut m = mu0.0.clone();
        m.resize(power.max(2) + 1, 0.0);
        for (k, c) in nu.iter().enumerate() {
            m[k] += c;
        }
        Series(m)
    };
    CriticalCurves {
        mu_plus: shift(&nu_plus),
        mu_minus: shift(&nu_minus),
        mu0,
        nu_plus: Series(nu_plus),
        nu_minus: Series(nu_minus),
    }
}

/// `μ₀(ε) = μ̲ − (T₂/T₁)ε²` and `ν± = ∓(2/T₁)(β₃ − β₂T₂/T₁)ε⁴`.
pub fn critical_curves(model: &IsolaModel) -> Result<CriticalCurves> {
    if !model.is_degenerate() {
        return Err(Error::NonDegenerate(model.beta1));
    }
    Ok(curves(model, 4, 2.0 * model.quartic_gap() / model.t1()))
}

/// `ν± = ∓(2β₁/T₁)ε²` when `β₁ ≠ 0`.
pub fn critical_curves_nondegenerate(model: &IsolaModel) -> CriticalCurves {
    curves(model, 2, 2.0 * model.beta1 / model.t1())
}

/// Monomials `ν^a ε^b` of a truncated polynomial.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Poly2(pub BTreeMap<(u32, u32), f64>);

impl Poly2 {
    pub fn term(c: f64, a: u32, b: u32) -> Self {
        let mut m = BTreeMap::new();
        m.insert((a, b), c);
        Poly2(m)
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut m = self.0.clone();
        for (k, c) in &other.0 {
            *m.entry(*k).or_insert(0.0) += c;
        }
        Poly2(m)
    }

    pub fn scale(&self, s: f64) -> Poly2 {
        Poly2(self.0.iter().map(|(k, c)| (*k, c * s)).collect())
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let mut m = BTreeMap::new();
        for ((a1, b1), c1) in &self.0 {
            for ((a2, b2), c2) in &other.0 {
                *m.entry((a1 + a2, b1 + b2)).or_insert(0.0) += c1 * c2;
            }
        }
        Poly2(m)
    }

    pub fn retain(&self, keep: impl Fn(u32, u32) -> bool) -> Poly2 {
        Poly2(
            self.0
                .iter()
                .filter(|((a, b), _)| keep(*a, *b))
                .map(|(k, c)| (*k, *c))
                .collect(),
        )
    }

    pub fn coeff(&self, a: u32, b: u32) -> f64 {
        self.0.get(&(a, b)).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, nu: f64, eps: f64) -> f64 {
        self.0
            .iter()
            .map(|((a, b), c)| c * nu.powi(*a as i32) * eps.powi(*b as i32))
            .sum()
    }

    /// Substitutes `ν = s(ε)` and returns the coefficients in `ε`.
    pub fn compose(&self, s: &Series) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for ((a, b), c) in &self.0 {
            let mut pw = vec![1.0];
            for _ in 0..*a {
                let mut next = vec![0.0; pw.len() + s.0.len() - 1];
                for (i, x) in pw.iter().enumerate() {
                    for (j, y) in s.0.iter().enumerate() {
                        next[i + j] += x * y;
                    }
                }
                pw = next;
            }
            for (k, x) in pw.iter().enumerate() {
                let idx = k + *b as usize;
                if out.len() <= idx {
                    out.resize(idx + 1, 0.0);
                }
                out[idx] += c * x;
            }
        }
        out
    }
}

/// `D = 4β² − T²` along `μ = μ₀(ε) + ν`, composed from the model and cut to the
/// monomials that the expansion resolves: everything in
/// `r(ε⁹, νε⁷, ν²ε², ν³)` is dropped.
pub fn discriminant_poly(model: &IsolaModel) -> Poly2 {
    let m2 = model.mu0_eps2();
    // δ = ν + m2 ε²
    let delta = Poly2::term(1.0, 1, 0).add(&Poly2::term(m2, 0, 2));
    let beta = Poly2::term(model.beta1, 0, 2)
        .add(&delta.mul(&Poly2::term(model.beta2, 0, 2)))
        .add(&Poly2::term(model.beta3, 0, 4));
    let trace = delta.scale(model.t1()).add(&Poly2::term(model.t2(), 0, 2));
    let d = beta
        .mul(&beta)
        .scale(4.0)
        .add(&trace.mul(&trace).scale(-1.0));
    d.retain(|a, b| match a {
        0 => b < 9,
        1 => b < 7,
        2 => b < 2,
        _ => false,
    })
}

/// `4b²ε⁸ − T₁²ν² + 8β₂bνε⁶` with `b = β₃ − β₂T₂/T₁`.
pub fn discriminant(model: &IsolaModel, nu: f64, eps: f64) -> f64 {
    let b = model.quartic_gap();
    let t1 = model.t1();
    4.0 * b * b * eps.powi(8) - t1 * t1 * nu * nu + 8.0 * model.beta2 * b * nu * eps.powi(6)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    InsideIsola,
    Outside,
    Collision,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair {
    pub plus: Complex64,
    pub minus: Complex64,
    pub regime: Regime,
}

pub fn collision_tolerance(eps: f64) -> f64 {
    1e-14 * eps.powi(8).max(1.0)
}

/// `λ± = (i/2)S ± ½√D` at `μ`, branching on the sign of `D`.
pub fn eigenvalues(model: &IsolaModel, mu: f64, eps: f64) -> EigenPair {
    let nu = mu - model.mu0(eps);
    let d = if model.is_degenerate() {
        discriminant(model, nu, eps)
    } else {
        let t1 = model.t1();
        4.0 * model.beta1 * model.beta1 * eps.powi(4) - t1 * t1 * nu * nu
    };
    let mid = Complex64::new(0.0, 0.5 * model.trace_s(nu, eps));
    let half = 0.5 * d.abs().sqrt();
    let (offset, regime) = if d.abs() < collision_tolerance(eps) {
        (Complex64::new(0.0, 0.0), Regime::Collision)
    } else if d > 0.0 {
        (Complex64::new(half, 0.0), Regime::InsideIsola)
    } else {
        (Complex64::new(0.0, half), Regime::Outside)
    };
    EigenPair {
        plus: mid + offset,
        minus: mid - offset,
        regime,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthPeak {
    /// Leading-order `max Re λ = |β₃ − β₂T₂/T₁| ε⁴`.
    pub rate: f64,
    /// Offset `ν_Re = 4(β₂/T₁²)(β₃ − β₂T₂/T₁)ε⁶` of the maximizer from `μ₀`.
    pub nu_re: f64,
}

pub fn max_growth_rate(model: &IsolaModel, eps: f64) -> Result<GrowthPeak> {
    if !model.is_degenerate() {
        return Err(Error::NonDegenerate(model.beta1));
    }
    let b = model.quartic_gap();
    let t1 = model.t1();
    Ok(GrowthPeak {
        rate: b.abs() * eps.powi(4),
        nu_re: 4.0 * model.beta2 / (t1 * t1) * b * eps.powi(6),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseParams {
    pub center_y: f64,
    pub semi_axis_x: f64,
    pub semi_axis_y: f64,
}

pub fn ellipse(model: &IsolaModel, eps: f64) -> Result<EllipseParams> {
    let slope = model.gamma1 - model.alpha1;
    if slope == 0.0 {
        return Err(Error::FlatTrace);
    }
    let semi_axis_x = model.quartic_gap().abs() * eps.powi(4);
    Ok(EllipseParams {
        center_y: model.omega_star + model.center_eps2() * eps * eps,
        semi_axis_x,
        semi_axis_y: semi_axis_x * slope.abs() / model.t1(),
    })
}

/// Points `(Re λ₊, Im λ₊)` across the isola, `samples ≥ 2` values of ν strictly
/// between the two roots of `D`.
pub fn isola_boundary(model: &IsolaModel, eps: f64, samples: usize) -> Result<Vec<(f64, f64)>> {
    if !model.is_degenerate() {
        return Err(Error::NonDegenerate(model.beta1));
    }
    let b = model.quartic_gap();
    let t1 = model.t1();
    // roots of −T₁²ν² + 8β₂bε⁶ν + 4b²ε⁸
    let (qa, qb, qc) = (
        -t1 * t1,
        8.0 * model.beta2 * b * eps.powi(6),
        4.0 * b * b * eps.powi(8),
    );
    let disc = (qb * qb - 4.0 * qa * qc).sqrt();
    let (r1, r2) = ((-qb + disc) / (2.0 * qa), (-qb - disc) / (2.0 * qa));
    let (lo, hi) = (r1.min(r2), r1.max(r2));
    Ok((1..=samples)
        .map(|k| {
            let nu = lo + (hi - lo) * k as f64 / (samples + 1) as f64;
            let d = discriminant(model, nu, eps).max(0.0);
            (0.5 * d.sqrt(), 0.5 * model.trace_s(nu, eps))
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    /// All supplied coefficients vanish through this ε-order.
    StableToOrder(usize),
    /// First nonvanishing coefficient of `β(μ₀(ε), ε)`.
    UnstableAtOrder(usize),
}

/// `betas[k]` is the coefficient of `ε^{k+1}` in `β(μ₀(ε), ε)`.
pub fn instability_criterion(betas: &[f64], tol: f64) -> Criterion {
    betas
        .iter()
        .position(|b| b.abs() > tol)
        .map(|k| Criterion::UnstableAtOrder(k + 1))
        .unwrap_or(Criterion::StableToOrder(betas.len()))
}
