//! Symplectic eigenbasis `f_j^σ(μ)` of the unperturbed operator.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Minus, Sign::Plus];

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// `√σ` with `√(+1) = 1`, `√(−1) = i`.
    pub fn sqrt(self) -> Complex64 {
        match self {
            Sign::Plus => Complex64::new(1.0, 0.0),
            Sign::Minus => I,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Label `(j, σ)` of the basis vector `f_j^σ`. Ordered by `j` then `σ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeIndex {
    pub j: i32,
    pub sigma: Sign,
}

impl ModeIndex {
    pub const fn new(j: i32, sigma: Sign) -> Self {
        ModeIndex { j, sigma }
    }

    pub const fn plus(j: i32) -> Self {
        ModeIndex {
            j,
            sigma: Sign::Plus,
        }
    }

    pub const fn minus(j: i32) -> Self {
        ModeIndex {
            j,
            sigma: Sign::Minus,
        }
    }
}

impl fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.j, self.sigma)
    }
}

/// `Ω(j+μ) = √|j+μ|`.
pub fn big_omega(j: i32, mu: f64) -> f64 {
    (j as f64 + mu).abs().sqrt()
}

/// `ω_j^σ(μ) = j + μ − σ√|j+μ|`.
pub fn omega(j: i32, sigma: Sign, mu: f64) -> f64 {
    j as f64 + mu - sigma.value() * big_omega(j, mu)
}

/// `sgn⁺(x) = 1` for `x ≥ 0`, `−1` otherwise.
pub fn sgn_plus(x: f64) -> f64 {
    if x >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// The vector `components · e^{ijx}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisVector {
    pub mode: ModeIndex,
    pub mu: f64,
    pub components: [Complex64; 2],
}

pub fn basis_vector(mode: ModeIndex, mu: f64) -> Result<BasisVector> {
    let x = mode.j as f64 + mu;
    if x == 0.0 {
        return Err(Error::DegenerateFrequency(mode));
    }
    let om = x.abs().sqrt();
    let norm = (2.0 * om).sqrt();
    let components = [
        -mode.sigma.sqrt() * om / norm,
        mode.sigma.flip().sqrt() / norm,
    ];
    Ok(BasisVector {
        mode,
        mu,
        components,
    })
}

/// The scalar product `(f, g)` of two single-harmonic vectors.
pub fn scalar_product(f: &BasisVector, g: &BasisVector) -> Complex64 {
    if f.mode.j != g.mode.j {
        return Complex64::new(0.0, 0.0);
    }
    f.components[0] * g.components[0].conj() + f.components[1] * g.components[1].conj()
}

/// `(Jf, g)` with `J = [[0, Id], [−Id, 0]]`.
pub fn symplectic_pairing(f: &BasisVector, g: &BasisVector) -> Complex64 {
    if f.mode.j != g.mode.j {
        return Complex64::new(0.0, 0.0);
    }
    let jf = [f.components[1], -f.components[0]];
    jf[0] * g.components[0].conj() + jf[1] * g.components[1].conj()
}

/// Applies `ρ̄(η, ψ)(x) = (conj η(−x), −conj ψ(−x))`, which maps a single
/// harmonic `e^{ijx}` to itself, and returns the image with the sign `s`
/// such that `ρ̄ f = s f`.
pub fn reversibility_image(f: &BasisVector) -> (BasisVector, f64) {
    let image = BasisVector {
        components: [f.components[0].conj(), -f.components[1].conj()],
        ..*f
    };
    (image, f.mode.sigma.value())
}
