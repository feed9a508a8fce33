//! Fourier data of the deep-water Stokes wave up to fourth order in the amplitude.
//!
//! The profiles are `p_ε = Σ ε^n p_n` and `a_ε = Σ ε^n a_n` with
//! `c_n(x) = ½c_n^[0] + Σ_{κ≥1} c_n^[κ] cos(κx)`, so the coefficient of
//! `e^{iκx}` in `c_n` is `c_n^[|κ|] / 2` for every κ.

use num_rational::Ratio;

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

pub const MAX_ORDER: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Profile {
    P,
    A,
}

// (n, κ ≥ 0, numerator, denominator) for p and a.
const P_TABLE: [(u32, i32, i64, i64); 8] = [
    (1, 1, -2, 1),
    (2, 0, 3, 1),
    (2, 2, -2, 1),
    (3, 1, 3, 1),
    (3, 3, -3, 1),
    (4, 0, 1, 4),
    (4, 2, 4, 1),
    (4, 4, -16, 3),
];
const A_TABLE: [(u32, i32, i64, i64); 8] = [
    (1, 1, -2, 1),
    (2, 0, 4, 1),
    (2, 2, -2, 1),
    (3, 1, 4, 1),
    (3, 3, -3, 1),
    (4, 0, -2, 1),
    (4, 2, 4, 1),
    (4, 4, -16, 3),
];

/// `c_n^[κ]` for either profile, even in κ.
pub fn coeff(which: Profile, n: u32, kappa: i32) -> Result<Rational> {
    if !(1..=MAX_ORDER).contains(&n) {
        return Err(Error::StokesOrder(n));
    }
    let table = match which {
        Profile::P => &P_TABLE,
        Profile::A => &A_TABLE,
    };
    let k = kappa.abs();
    Ok(table
        .iter()
        .find(|&&(m, kk, _, _)| m == n && kk == k)
        .map(|&(_, _, num, den)| Rational::new(num, den))
        .unwrap_or_else(|| Rational::from_integer(0)))
}

pub fn p_coeff(n: u32, kappa: i32) -> Result<Rational> {
    coeff(Profile::P, n, kappa)
}

pub fn a_coeff(n: u32, kappa: i32) -> Result<Rational> {
    coeff(Profile::A, n, kappa)
}

pub fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Coefficient of `e^{iκx}` in `Σ_{n≤order} ε^n c_n(x)`.
pub fn fourier_mode(which: Profile, eps: f64, kappa: i32, order: u32) -> Result<f64> {
    if order > MAX_ORDER {
        return Err(Error::StokesOrder(order));
    }
    let mut sum = 0.0;
    for n in 1..=order {
        sum += eps.powi(n as i32) * to_f64(coeff(which, n, kappa)?) / 2.0;
    }
    Ok(sum)
}

pub fn eval_profile(which: Profile, eps: f64, x: f64, order: u32) -> Result<f64> {
    if order > MAX_ORDER {
        return Err(Error::StokesOrder(order));
    }
    let mut sum = 0.0;
    for n in 1..=order {
        let mut c = to_f64(coeff(which, n, 0)?) / 2.0;
        for k in 1..=n as i32 {
            c += to_f64(coeff(which, n, k)?) * (k as f64 * x).cos();
        }
        sum += eps.powi(n as i32) * c;
    }
    Ok(sum)
}

/// A collision `ω_j^−(μ̲) = ω_{j'}^+(μ̲) = ω_*` of two unperturbed eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Collision {
    pub p: u32,
    pub omega_star: Rational,
    pub mu: Rational,
    pub k: i32,
    pub k_prime: i32,
}

/// `ω_*^{(p)} = (p²−1)/4` with the floquet exponent and the colliding harmonics.
pub fn collision_frequency(p: u32) -> Result<Collision> {
    if p < 2 {
        return Err(Error::CollisionIndex(p));
    }
    let pi = p as i64;
    let omega_star = Rational::new(pi * pi - 1, 4);
    let n = (p / 2) as i32;
    let (mu, k, k_prime) = if p.is_multiple_of(2) {
        (Rational::new(1, 4), n * n - n, n * n + n)
    } else {
        (Rational::from_integer(0), n * n, (n + 1) * (n + 1))
    };
    Ok(Collision {
        p,
        omega_star,
        mu,
        k,
        k_prime,
    })
}
