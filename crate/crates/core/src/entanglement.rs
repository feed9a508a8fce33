//! Entanglement coefficients, contour residues and the chain evaluator at the
//! first collision `μ̲ = 1/4`, `ω_* = 3/4` between `f_0^-` and `f_2^+`.
//!
//! A jet `𝓑_ℓ^[κ]` with `ℓ = (i, n)` is the `δ^i ε^n` Taylor coefficient of the
//! self-adjoint operator `𝓑(μ̲+δ, ε)` restricted to the harmonic `e^{iκx}`.
//! Values are returned with the monomial stripped.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::basis::{big_omega, sgn_plus, ModeIndex, Sign};
use crate::error::{Error, Result};
use crate::stokes_coeffs::{a_coeff, p_coeff, to_f64, MAX_ORDER};

pub const MU: f64 = 0.25;
pub const OMEGA_STAR: f64 = 0.75;
pub const LOWER: ModeIndex = ModeIndex::minus(0);
pub const UPPER: ModeIndex = ModeIndex::plus(2);

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JetIndex {
    pub i: u32,
    pub n: u32,
}

impl JetIndex {
    pub const fn new(i: u32, n: u32) -> Self {
        JetIndex { i, n }
    }

    pub fn order(self) -> u32 {
        self.i + self.n
    }

    /// Harmonics κ for which `𝓑_ℓ^[κ]` can be nonzero.
    pub fn harmonics(self) -> Vec<i32> {
        match (self.i, self.n) {
            (1, 0) => vec![0],
            (0, n) | (1, n) if (1..=MAX_ORDER).contains(&n) => {
                let n = n as i32;
                (-n..=n).step_by(2).collect()
            }
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for JetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.n)
    }
}

/// One factor `𝓑_ℓ^[κ]` of a chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Link {
    pub ell: JetIndex,
    pub kappa: i32,
}

impl Link {
    pub const fn new(i: u32, n: u32, kappa: i32) -> Self {
        Link {
            ell: JetIndex::new(i, n),
            kappa,
        }
    }
}

impl fmt::Display for Link {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}[{:+}]", self.ell, self.kappa)
    }
}

/// `(𝓑_ℓ^[κ] f_j^σ, f_{j+κ}^{σ'})`.
pub fn ent_coeff(ell: JetIndex, kappa: i32, source: ModeIndex, target_sigma: Sign) -> Complex64 {
    let j = source.j;
    let jk = j + kappa;
    let (s, t) = (source.sigma, target_sigma);
    let phase = s.sqrt() * t.sqrt().conj();
    let (sv, tv) = (s.value(), t.value());
    let om_j = big_omega(j, MU);
    let om_jk = big_omega(jk, MU);
    match (ell.i, ell.n) {
        (1, 0) => {
            if kappa != 0 {
                return ZERO;
            }
            phase / (2.0 * om_j) * (sv * tv * sgn_plus(j as f64 + MU) - (sv + tv) * om_j)
        }
        (0, n) if (1..=MAX_ORDER).contains(&n) => {
            let p = to_f64(p_coeff(n, kappa).expect("order checked"));
            let a = to_f64(a_coeff(n, kappa).expect("order checked"));
            if p == 0.0 && a == 0.0 {
                return ZERO;
            }
            let bracket = a
                - sv * p * om_j * sgn_plus(j as f64 + MU)
                - tv * p * om_jk * sgn_plus(jk as f64 + MU);
            phase * 0.25 * (om_jk * om_j).sqrt() * bracket
        }
        (1, n) if (1..=MAX_ORDER).contains(&n) => {
            let p = to_f64(p_coeff(n, kappa).expect("order checked"));
            if p == 0.0 {
                return ZERO;
            }
            -phase * 0.25 * (sv * om_jk + tv * om_j) * p / (om_j * om_jk).sqrt()
        }
        _ => ZERO,
    }
}

/// `(𝓑_ℓ^[κ] f_source, f_target)`; zero unless `target.j = source.j + κ`.
pub fn ent(ell: JetIndex, kappa: i32, target: ModeIndex, source: ModeIndex) -> Complex64 {
    if target.j != source.j + kappa {
        return ZERO;
    }
    ent_coeff(ell, kappa, source, target.sigma)
}

/// Exact test `ω_j^σ(1/4) = 3/4`: `Ω_j = √|4j+1| / 2` is rational only when
/// `|4j+1|` is a perfect square `s²`, and then the condition reads `4j+1−2σs = 3`.
pub fn is_pole(mode: ModeIndex) -> bool {
    let m = (4 * mode.j as i64 + 1).unsigned_abs();
    let s = (m as f64).sqrt().round() as u64;
    if s * s != m {
        return false;
    }
    let sigma = match mode.sigma {
        Sign::Plus => 1,
        Sign::Minus => -1,
    };
    4 * mode.j as i64 + 1 - 2 * sigma * s as i64 == 3
}

pub fn frequency(mode: ModeIndex) -> f64 {
    crate::basis::omega(mode.j, mode.sigma, MU)
}

/// `(−i)^q/(2πi) ∮ Π_k (λ − iω_k)^{−1} dλ` over a small circle around `iω_*`.
pub fn residue(path: &[ModeIndex]) -> Result<f64> {
    let hits = path.iter().filter(|m| is_pole(**m)).count();
    let len = path.len();
    if hits == 0 || (hits == len && len >= 2) {
        return Ok(0.0);
    }
    let inv: Vec<f64> = path
        .iter()
        .filter(|m| !is_pole(**m))
        .map(|m| 1.0 / (frequency(*m) - OMEGA_STAR))
        .collect();
    let prod: f64 = inv.iter().product();
    match hits {
        1 => Ok(prod),
        2 => Ok(-inv.iter().sum::<f64>() * prod),
        _ => Err(Error::UnsupportedResidue { hits, len }),
    }
}

/// Finite combination `Σ c_m f_m` of basis vectors.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SparseVec(pub BTreeMap<ModeIndex, Complex64>);

impl SparseVec {
    pub fn basis(mode: ModeIndex) -> Self {
        let mut m = BTreeMap::new();
        m.insert(mode, Complex64::new(1.0, 0.0));
        SparseVec(m)
    }

    pub fn get(&self, mode: ModeIndex) -> Complex64 {
        self.0.get(&mode).copied().unwrap_or(ZERO)
    }

    pub fn add(&mut self, mode: ModeIndex, c: Complex64) {
        *self.0.entry(mode).or_insert(ZERO) += c;
    }

    pub fn axpy(&mut self, a: Complex64, other: &SparseVec) {
        for (m, c) in &other.0 {
            self.add(*m, a * c);
        }
    }

    pub fn scaled(&self, a: Complex64) -> SparseVec {
        SparseVec(self.0.iter().map(|(m, c)| (*m, a * c)).collect())
    }

    pub fn project(&self, q: Projector) -> SparseVec {
        SparseVec(
            self.0
                .iter()
                .filter(|(m, _)| q.keeps(**m))
                .map(|(m, c)| (*m, *c))
                .collect(),
        )
    }

    pub fn norm(&self) -> f64 {
        self.0.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Spectral projector onto `span{f_0^-, f_2^+}` or its complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Projector {
    P0,
    Complement,
}

impl Projector {
    pub fn keeps(self, mode: ModeIndex) -> bool {
        let inside = mode == LOWER || mode == UPPER;
        match self {
            Projector::P0 => inside,
            Projector::Complement => !inside,
        }
    }
}

/// `𝒫[A_q, …, A_1] v` with `links = [A_1, …, A_q]` in application order.
pub fn apply_chain(links: &[Link], v: &SparseVec) -> Result<SparseVec> {
    let mut out = SparseVec::default();
    for (start, c) in &v.0 {
        let mut path = vec![*start];
        walk(links, &mut path, *c, &mut out)?;
    }
    Ok(out)
}

fn walk(
    links: &[Link],
    path: &mut Vec<ModeIndex>,
    weight: Complex64,
    out: &mut SparseVec,
) -> Result<()> {
    let depth = path.len() - 1;
    if depth == links.len() {
        let r = residue(path)?;
        if r != 0.0 {
            out.add(*path.last().expect("nonempty"), weight * r);
        }
        return Ok(());
    }
    let link = links[depth];
    let from = path[depth];
    for sigma in Sign::BOTH {
        let to = ModeIndex::new(from.j + link.kappa, sigma);
        let e = ent(link.ell, link.kappa, to, from);
        if e == ZERO {
            continue;
        }
        path.push(to);
        walk(links, path, weight * e * sigma.value(), out)?;
        path.pop();
    }
    Ok(())
}

/// `(𝓑_ℓ^[κ] u, v)`.
pub fn bracket(link: Link, u: &SparseVec, v: &SparseVec) -> Complex64 {
    let mut sum = ZERO;
    for (a, ca) in &u.0 {
        for (b, cb) in &v.0 {
            if b.j == a.j + link.kappa {
                sum += ca * cb.conj() * ent(link.ell, link.kappa, *b, *a);
            }
        }
    }
    sum
}

/// `(B_{q+1} 𝒫[B_q, …, B_1] f_source, f_target)` for `chain = [B_1, …, B_{q+1}]`.
pub fn chain_bracket(chain: &[Link], source: ModeIndex, target: ModeIndex) -> Result<Complex64> {
    let (outer, inner) = chain
        .split_last()
        .ok_or_else(|| Error::InvalidInput("empty chain".into()))?;
    let u = apply_chain(inner, &SparseVec::basis(source))?;
    Ok(bracket(*outer, &u, &SparseVec::basis(target)))
}

/// `(B_1 f_source, 𝒫[B_2^{−κ}, …, B_{q+1}^{−κ}] f_target)` for `chain = [B_1, …, B_{q+1}]`:
/// the same pairing evaluated from the target side.
pub fn swapped_chain_bracket(
    chain: &[Link],
    source: ModeIndex,
    target: ModeIndex,
) -> Result<Complex64> {
    let (first, rest) = chain
        .split_first()
        .ok_or_else(|| Error::InvalidInput("empty chain".into()))?;
    let reversed: Vec<Link> = rest
        .iter()
        .rev()
        .map(|l| Link {
            ell: l.ell,
            kappa: -l.kappa,
        })
        .collect();
    let v = apply_chain(&reversed, &SparseVec::basis(target))?;
    Ok(bracket(*first, &SparseVec::basis(source), &v))
}

/// As [`chain_bracket`] with `projector` inserted in front of the outer factor.
pub fn projected_chain(
    chain: &[Link],
    source: ModeIndex,
    target: ModeIndex,
    projector: Projector,
) -> Result<Complex64> {
    let (outer, inner) = chain
        .split_last()
        .ok_or_else(|| Error::InvalidInput("empty chain".into()))?;
    let u = apply_chain(inner, &SparseVec::basis(source))?.project(projector);
    Ok(bracket(*outer, &u, &SparseVec::basis(target)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn poles() {
        assert!(is_pole(LOWER));
        assert!(is_pole(UPPER));
        let mut n = 0;
        for j in -40..=40 {
            for s in Sign::BOTH {
                let m = ModeIndex::new(j, s);
                assert_eq!(is_pole(m), (frequency(m) - OMEGA_STAR).abs() < 1e-12, "{m}");
                n += is_pole(m) as usize;
            }
        }
        assert_eq!(n, 2);
    }

    #[test]
    fn entanglement_examples() {
        let e = ent_coeff(JetIndex::new(0, 1), 1, LOWER, Sign::Plus);
        let want = c(0.0, 5f64.powf(0.25) * (5f64.sqrt() - 3.0) / 8.0);
        assert!((e - want).norm() < 1e-15);
        assert_eq!(ent_coeff(JetIndex::new(0, 2), 1, LOWER, Sign::Plus), ZERO);
        assert_eq!(ent(JetIndex::new(0, 1), 1, UPPER, LOWER), ZERO);
        assert_eq!(ent_coeff(JetIndex::new(2, 0), 0, LOWER, Sign::Plus), ZERO);
        assert_eq!(ent_coeff(JetIndex::new(1, 0), 1, LOWER, Sign::Plus), ZERO);
        // direct δε² coupling of the colliding pair
        let t = ent(JetIndex::new(1, 2), 2, UPPER, LOWER);
        assert!((t - c(0.0, -1.0 / 3f64.sqrt())).norm() < 1e-15);
    }

    #[test]
    fn residue_cases() {
        let m = ModeIndex::new;
        assert_eq!(
            residue(&[m(1, Sign::Plus), m(3, Sign::Minus)]).unwrap(),
            0.0
        );
        for s in Sign::BOTH {
            let r = residue(&[LOWER, m(1, s)]).unwrap();
            assert!((r - 1.0 / (frequency(m(1, s)) - 0.75)).abs() < 1e-15);
        }
        let r = residue(&[LOWER, m(1, Sign::Minus), UPPER]).unwrap();
        let w = frequency(m(1, Sign::Minus)) - 0.75;
        assert!((r + 1.0 / (w * w)).abs() < 1e-13);
        assert_eq!(residue(&[LOWER, UPPER, LOWER]).unwrap(), 0.0);
        assert_eq!(residue(&[UPPER]).unwrap(), 1.0);
        assert_eq!(
            residue(&[LOWER, UPPER, m(1, Sign::Plus), LOWER]),
            Err(Error::UnsupportedResidue { hits: 3, len: 4 })
        );
    }

    #[test]
    fn projection_examples() {
        let f0 = SparseVec::basis(LOWER);
        let v = apply_chain(&[Link::new(0, 2, 2)], &f0).unwrap();
        assert!(v.project(Projector::P0).norm() < 1e-15);
        for src in [LOWER, UPPER] {
            for k in [-1, 1] {
                let v = apply_chain(&[Link::new(1, 1, k)], &SparseVec::basis(src)).unwrap();
                assert!(v.project(Projector::P0).norm() < 1e-15);
            }
        }
        let v = apply_chain(&[Link::new(0, 1, 1)], &f0).unwrap();
        assert!(v.0.keys().all(|m| m.j == 1));
        assert_eq!(v.project(Projector::Complement), v);
    }

    #[test]
    fn bare_chain_is_entanglement() {
        let l = Link::new(0, 2, 2);
        let v = chain_bracket(&[l], LOWER, UPPER).unwrap();
        assert_eq!(v, ent(l.ell, l.kappa, UPPER, LOWER));
        assert_eq!(
            chain_bracket(&[Link::new(0, 1, 1)], LOWER, UPPER).unwrap(),
            ZERO
        );
        assert!(chain_bracket(&[], LOWER, UPPER).is_err());
    }

    #[test]
    fn zeta_one() {
        let l = Link::new(0, 1, 1);
        let v = apply_chain(&[l, l], &SparseVec::basis(LOWER)).unwrap();
        let z = v.get(UPPER);
        assert!((z - c(0.0, 5.0 * 3f64.sqrt() / 16.0)).norm() < 1e-13);
    }
}
