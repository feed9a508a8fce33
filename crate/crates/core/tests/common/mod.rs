//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use isola_core::basis::Sign;
use isola_core::basis::{basis_vector, omega, ModeIndex};
use isola_core::entanglement::{is_pole, JetIndex, Link, LOWER, MU, OMEGA_STAR, UPPER};
use isola_core::stokes_coeffs::{fourier_mode, Profile};
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// ε^n coefficient of the e^{iκx} mode, read off the truncated profile at ε = 1.
fn mode_jet(which: Profile, n: u32, kappa: i32) -> f64 {
    let hi = fourier_mode(which, 1.0, kappa, n).unwrap();
    let lo = if n == 1 {
        0.0
    } else {
        fourier_mode(which, 1.0, kappa, n - 1).unwrap()
    };
    hi - lo
}

/// 2×2 symbol of the jet `B_ℓ` restricted to `e^{ijx} → e^{i(j+κ)x}`, from
/// `B = [[1+a, −(1+p)(∂ₓ+iμ)], [(∂ₓ+iμ)(1+p), |D+μ|]]`.
pub fn symbol(ell: JetIndex, kappa: i32, j: i32) -> [[Complex64; 2]; 2] {
    let z = Complex64::new(0.0, 0.0);
    let r = |x: f64| Complex64::new(x, 0.0);
    let src = j as f64 + MU;
    let dst = (j + kappa) as f64 + MU;
    match (ell.i, ell.n) {
        (0, 0) if kappa == 0 => [[r(1.0), -I * src], [I * src, r(src.abs())]],
        (1, 0) if kappa == 0 => [[z, -I], [I, r(src.signum())]],
        (0, n) if n >= 1 => {
            let p = mode_jet(Profile::P, n, kappa);
            let a = mode_jet(Profile::A, n, kappa);
            [[r(a), -I * src * p], [I * dst * p, z]]
        }
        (1, n) if n >= 1 => {
            let p = mode_jet(Profile::P, n, kappa);
            [[z, -I * p], [I * p, z]]
        }
        _ => [[z, z], [z, z]],
    }
}

/// `(B_ℓ^{[κ]} f_source, f_target)` straight from the symbol and the basis components.
pub fn raw_entanglement(
    ell: JetIndex,
    kappa: i32,
    source: ModeIndex,
    target: ModeIndex,
) -> Complex64 {
    if target.j != source.j + kappa {
        return Complex64::new(0.0, 0.0);
    }
    let m = symbol(ell, kappa, source.j);
    let u = basis_vector(source, MU).unwrap().components;
    let v = basis_vector(target, MU).unwrap().components;
    let bu = [
        m[0][0] * u[0] + m[0][1] * u[1],
        m[1][0] * u[0] + m[1][1] * u[1],
    ];
    bu[0] * v[0].conj() + bu[1] * v[1].conj()
}

/// `(−i)^q/(2πi) ∮ Π_k (λ − iω_k)^{−1} dλ` by the trapezoid rule on a circle
/// of radius 1/8 around `iω_*`.
pub fn contour_residue(path: &[ModeIndex]) -> f64 {
    const NODES: usize = 4096;
    let center = I * OMEGA_STAR;
    let radius = 0.125;
    let q = path.len() as i32 - 1;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..NODES {
        let t = 2.0 * PI * k as f64 / NODES as f64;
        let w = Complex64::from_polar(radius, t);
        let lambda = center + w;
        let mut f = Complex64::new(1.0, 0.0);
        for m in path {
            f /= lambda - I * omega(m.j, m.sigma, MU);
        }
        // dλ = i w dt
        sum += f * I * w;
    }
    let integral = sum * (2.0 * PI / NODES as f64);
    let value = (-I).powi(q) * integral / (2.0 * PI * I);
    assert!(value.im.abs() < 1e-9, "residue not real: {value}");
    value.re
}

/// Distance of `ω_j^σ(1/4)` from `ω_*`.
pub fn pole_distance(m: ModeIndex) -> f64 {
    (omega(m.j, m.sigma, MU) - OMEGA_STAR).abs()
}

/// Every jet with a nonzero entanglement table.
pub fn jets() -> Vec<JetIndex> {
    let mut v = vec![JetIndex::new(1, 0)];
    for n in 1..=4 {
        v.push(JetIndex::new(0, n));
        v.push(JetIndex::new(1, n));
    }
    v
}

pub fn mode() -> impl Strategy<Value = ModeIndex> {
    (-4i32..=4, any::<bool>())
        .prop_map(|(j, p)| ModeIndex::new(j, if p { Sign::Plus } else { Sign::Minus }))
}

pub fn pole() -> impl Strategy<Value = ModeIndex> {
    prop_oneof![Just(LOWER), Just(UPPER)]
}

/// Paths of length ≤ 4 carrying 0, 1 or 2 pole entries.
pub fn residue_path() -> impl Strategy<Value = Vec<ModeIndex>> {
    (
        0usize..=2,
        prop::collection::vec(mode().prop_filter("off pole", |m| !is_pole(*m)), 0..=4),
    )
        .prop_flat_map(|(hits, rest)| {
            let keep = rest.len().min(4 - hits);
            (
                prop::collection::vec(pole(), hits),
                Just(rest[..keep].to_vec()),
            )
        })
        .prop_filter("nonempty", |(p, r)| !p.is_empty() || !r.is_empty())
        .prop_map(|(p, r)| p.into_iter().chain(r).collect::<Vec<_>>())
        .prop_shuffle()
}

pub fn link() -> impl Strategy<Value = Link> {
    prop::sample::select(jets()).prop_flat_map(|ell| {
        prop::sample::select(ell.harmonics()).prop_map(move |k| Link { ell, kappa: k })
    })
}

/// Chains `[B_1, …, B_{q+1}]` from one collision mode to the other (or itself),
/// with the last harmonic fixed by the endpoints.
pub fn chain_between() -> impl Strategy<Value = (Vec<Link>, ModeIndex, ModeIndex)> {
    (
        prop::collection::vec(link(), 0..=3),
        pole(),
        pole(),
        prop::sample::select(jets()),
    )
        .prop_filter_map("last harmonic unreachable", |(mut links, src, tgt, ell)| {
            let needed = tgt.j - src.j - links.iter().map(|l| l.kappa).sum::<i32>();
            if !ell.harmonics().contains(&needed) {
                return None;
            }
            links.push(Link { ell, kappa: needed });
            Some((links, src, tgt))
        })
}
