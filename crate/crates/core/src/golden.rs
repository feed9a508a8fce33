//! Reference values of the reduced-matrix expansion at the first isola.
//!
//! Ledger entries are complex coefficients with the monomial stripped; the
//! quadratic ones multiply `ε²`, the cubic ones `δε²`, the quartic ones `ε⁴`.

use num_complex::Complex64;

use crate::jet_assembly::Group;

fn s3() -> f64 {
    3f64.sqrt()
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn im(x: f64) -> Complex64 {
    Complex64::new(0.0, x)
}

/// Reference value of a ledger entry, `None` for unknown names.
pub fn term(group: Group, name: &str) -> Option<Complex64> {
    let r3 = s3();
    let v = match (group, name) {
        (Group::Alpha2, "Aa") => re(-15.0 / 8.0),
        (Group::Alpha2, "Ab") => re(-15.0 / 8.0),
        (Group::Alpha2, "Ac") => re(39.0 / 8.0),
        (Group::Beta1, "Ba") => re(0.0),
        (Group::Beta1, "Bb") => re(0.0),
        (Group::Gamma2, "Ca") => re(7.0 / 8.0),
        (Group::Gamma2, "Cb") => re(-3.0 / 16.0),
        (Group::Gamma2, "Cc") => re(-5.0 / 8.0),
        (Group::Beta2, "Θ") => im(-1.0 / r3),
        (Group::Beta2, "I") => im(1.0 / (4.0 * r3)),
        (Group::Beta2, "II") => im(r3 / 4.0),
        (Group::Beta2, "IIIa") => im(r3 / 4.0),
        (Group::Beta2, "IIIb") => im(r3 / 2.0),
        (Group::Beta2, "IIIc") => im(-5.0 * r3 / 16.0),
        (Group::Beta2, "IIId") => im(-15.0 * r3 / 16.0),
        (Group::Beta2, "IVa") => im(-1.0 / (4.0 * r3)),
        (Group::Beta2, "IVb") => im(-5.0 / (16.0 * r3)),
        (Group::Beta2, "IVc") => im(-5.0 * r3 / 16.0),
        (Group::Beta3, "Θ") => re(0.0),
        (Group::Beta3, "I") => im(5.0 * r3 / 32.0),
        (Group::Beta3, "II") => im(-9.0 * r3 / 32.0),
        (Group::Beta3, "IIIa") => im(3.0 * r3 / 8.0),
        (Group::Beta3, "IIIb") => im(15.0 * r3 / 32.0),
        (Group::Beta3, "IIIb^") => im(15.0 * r3 / 32.0 - 75.0 * r3 / 128.0),
        (Group::Beta3, "IVa") => im(-r3 / 8.0),
        (Group::Beta3, "IVb") => im(3.0 * r3 / 64.0),
        (Group::Beta3, "IVb^") => im(3.0 * r3 / 64.0),
        (Group::Beta3, "IVc") => im(5.0 * r3 / 64.0),
        (Group::Beta3, "IVc^") => im(5.0 * r3 / 64.0),
        (Group::Beta3, "Va") => im(-5.0 * r3 / 32.0),
        (Group::Beta3, "Vb") => im(-25.0 * r3 / 128.0),
        (Group::Beta3, "Vc") => im(5.0 * r3 / 32.0),
        (Group::Beta3, "Vc^") => im(5.0 * r3 / 32.0 - 35.0 * r3 / 128.0),
        (Group::Beta3, "Vd") => im(15.0 * r3 / 64.0),
        (Group::Beta3, "Ve") => im(15.0 * r3 / 64.0),
        (Group::Beta3, "Ve^") => im(15.0 * r3 / 64.0),
        (Group::Beta3, "Vf") => im(-75.0 * r3 / 256.0),
        (Group::Beta3, "Vg") => im(25.0 * r3 / 256.0),
        (Group::Beta3, "Vh") => re(0.0),
        (Group::Beta3, "VIa") => re(0.0),
        (Group::Beta3, "VIb") => re(0.0),
        (Group::Beta3, "VIc") => im(-39.0 * r3 / 64.0),
        (Group::Beta3, "VIc^") => im(-39.0 * r3 / 64.0),
        (Group::Beta3, "VId") => im(195.0 * r3 / 256.0),
        (Group::Beta3, "ζ₁") => im(5.0 * r3 / 16.0),
        (Group::Beta3, "ζ₂") => im(5.0 * r3 / 16.0),
        (Group::Beta3, "𝐋") => im(-305.0 * r3 / 512.0),
        _ => return None,
    };
    Some(v)
}

pub const ALPHA1: f64 = -2.0 / 3.0;
pub const GAMMA1: f64 = 2.0;
pub const ALPHA2: f64 = 9.0 / 8.0;
pub const GAMMA2: f64 = 1.0 / 16.0;
pub const BETA1: f64 = 0.0;
pub const T1: f64 = 4.0 / 3.0;
pub const T2: f64 = 19.0 / 16.0;
pub const MU0_EPS2: f64 = -57.0 / 64.0;
pub const D_EPS8: f64 = 4107.0 / 65536.0;
pub const D_NU_EPS6: f64 = -37.0 / 128.0;
pub const CENTER_EPS2: f64 = -55.0 / 32.0;
pub const MIDPOINT_NU: f64 = 4.0 / 3.0;
pub const AXIS_RATIO: f64 = 2.0;

pub fn beta2() -> f64 {
    -s3() / 6.0
}

pub fn beta3() -> f64 {
    -39.0 * s3() / 512.0
}

/// `β₃ − β₂T₂/T₁`.
pub fn quartic_gap() -> f64 {
    37.0 * s3() / 512.0
}

/// ε⁴-coefficient of `ν₊`; `ν₋` has the opposite sign.
pub fn nu_plus_eps4() -> f64 {
    -111.0 * s3() / 1024.0
}
