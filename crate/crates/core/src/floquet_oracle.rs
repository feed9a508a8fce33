//! Brute-force spectrum of the Floquet operator
//! `𝓛_{μ,ε} = [[(∂_x+iμ)∘(1+p_ε), |D+μ|], [−(1+a_ε), (1+p_ε)(∂_x+iμ)]]`
//! truncated to the harmonics `−N..=N`.

use faer::Mat;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::stokes_coeffs::{fourier_mode, Profile, MAX_ORDER};

pub const MIN_TRUNCATION: usize = 8;

#[derive(Debug, Clone)]
pub struct DiscretizedOperator {
    pub mu: f64,
    pub eps: f64,
    pub n: usize,
    pub stokes_order: u32,
    /// Unknowns ordered `(η_{−N}, ψ_{−N}, …, η_N, ψ_N)`.
    pub matrix: Mat<Complex64>,
}

impl DiscretizedOperator {
    pub fn dim(&self) -> usize {
        2 * (2 * self.n + 1)
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    /// Row/column index of `η_j` (and `ψ_j` one past it).
    pub fn index(&self, j: i32) -> usize {
        2 * (j + self.n as i32) as usize
    }
}

pub fn build(mu: f64, eps: f64, n: usize, stokes_order: u32) -> Result<DiscretizedOperator> {
    if n < MIN_TRUNCATION {
        return Err(Error::Truncation(n));
    }
    if stokes_order > MAX_ORDER {
        return Err(Error::StokesOrder(stokes_order));
    }
    let k_max = stokes_order as i32;
    let mut p_hat = Vec::new();
    let mut a_hat = Vec::new();
    for k in -k_max..=k_max {
        p_hat.push(fourier_mode(Profile::P, eps, k, stokes_order)?);
        a_hat.push(fourier_mode(Profile::A, eps, k, stokes_order)?);
    }
    let dim = 2 * (2 * n + 1);
    let big_n = n as i32;
    let i = Complex64::new(0.0, 1.0);
    let mut m = Mat::<Complex64>::zeros(dim, dim);
    for r in -big_n..=big_n {
        let ri = 2 * (r + big_n) as usize;
        for c in (r - k_max).max(-big_n)..=(r + k_max).min(big_n) {
            let ci = 2 * (c + big_n) as usize;
            let k = (r - c + k_max) as usize;
            let diag = if r == c { 1.0 } else { 0.0 };
            let pk = diag + p_hat[k];
            let ak = diag + a_hat[k];
            m[(ri, ci)] = i * (r as f64 + mu) * pk;
            m[(ri, ci + 1)] = Complex64::new(diag * (c as f64 + mu).abs(), 0.0);
            m[(ri + 1, ci)] = Complex64::new(-ak, 0.0);
            m[(ri + 1, ci + 1)] = i * (c as f64 + mu) * pk;
        }
    }
    Ok(DiscretizedOperator {
        mu,
        eps,
        n,
        stokes_order,
        matrix: m,
    })
}

pub fn eigenvalues(op: &DiscretizedOperator) -> Result<Vec<Complex64>> {
    if op.matrix.as_ref().has_nan() {
        return Err(Error::InvalidInput("matrix has non-finite entries".into()));
    }
    let ev = op.matrix.eigenvalues().map_err(|_| Error::Eigensolve)?;
    Ok(ev.into_iter().map(|z| Complex64::new(z.re, z.im)).collect())
}

/// Disk `|λ − i·center| ≤ radius` that isolates the colliding pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tracking {
    pub center: f64,
    pub radius: f64,
}

impl Default for Tracking {
    fn default() -> Self {
        Tracking {
            center: 0.75,
            radius: 0.2,
        }
    }
}

impl Tracking {
    /// The two eigenvalues closest to `i·center`: larger real part first when the
    /// pair has split off the axis, larger imaginary part first otherwise.
    pub fn select(&self, eigenvalues: &[Complex64]) -> Result<[Complex64; 2]> {
        let target = Complex64::new(0.0, self.center);
        let mut near: Vec<Complex64> = eigenvalues
            .iter()
            .copied()
            .filter(|z| (z - target).norm() <= self.radius)
            .collect();
        if near.len() < 2 {
            return Err(Error::Tracking {
                found: near.len(),
                radius: self.radius,
            });
        }
        near.sort_by(|a, b| (a - target).norm().total_cmp(&(b - target).norm()));
        let (mut a, mut b) = (near[0], near[1]);
        // split along whichever axis separates the pair, so round-off in the
        // other component cannot swap them
        let d = a - b;
        let swap = if d.re.abs() > d.im.abs() {
            d.re < 0.0
        } else {
            d.im < 0.0
        };
        if swap {
            std::mem::swap(&mut a, &mut b);
        }
        Ok([a, b])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSample {
    pub eigenvalues: Vec<Complex64>,
    pub tracked_pair: [Complex64; 2],
    pub re_max: f64,
}

pub fn spectrum(op: &DiscretizedOperator, tracking: Tracking) -> Result<SpectrumSample> {
    let eigenvalues = eigenvalues(op)?;
    let tracked_pair = tracking.select(&eigenvalues)?;
    let re_max = tracked_pair[0].re.abs().max(tracked_pair[1].re.abs());
    Ok(SpectrumSample {
        eigenvalues,
        tracked_pair,
        re_max,
    })
}

/// `max_λ min_λ' |λ' + conj λ|`; zero for an exactly reversible spectrum.
pub fn reversibility_defect(eigenvalues: &[Complex64]) -> f64 {
    eigenvalues
        .iter()
        .map(|l| {
            eigenvalues
                .iter()
                .map(|m| (m + l.conj()).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

/// Parameters of a sweep over μ at fixed ε.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSettings {
    pub n: usize,
    pub stokes_order: u32,
    pub tracking: Tracking,
}

impl Default for OracleSettings {
    fn default() -> Self {
        OracleSettings {
            n: 32,
            stokes_order: 4,
            tracking: Tracking::default(),
        }
    }
}

pub fn tracked_pair(mu: f64, eps: f64, s: &OracleSettings) -> Result<[Complex64; 2]> {
    let op = build(mu, eps, s.n, s.stokes_order)?;
    s.tracking.select(&eigenvalues(&op)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceSample {
    pub mu: f64,
    pub pair: std::result::Result<[Complex64; 2], Error>,
}

/// Tracked pair at every μ of the grid, in grid order; failures stay per sample.
pub fn trace_isola(eps: f64, mu_grid: &[f64], s: &OracleSettings) -> Vec<TraceSample> {
    mu_grid
        .par_iter()
        .map(|&mu| TraceSample {
            mu,
            pair: tracked_pair(mu, eps, s),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub pair: [Complex64; 2],
    /// Largest change of the tracked pair against the previous truncation.
    pub delta: Option<f64>,
}

pub fn convergence_check(
    mu: f64,
    eps: f64,
    n_list: &[usize],
    stokes_order: u32,
    tracking: Tracking,
) -> Result<Vec<ConvergenceRow>> {
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput("truncations must be increasing".into()));
    }
    let pairs: Vec<Result<[Complex64; 2]>> = n_list
        .par_iter()
        .map(|&n| {
            tracked_pair(
                mu,
                eps,
                &OracleSettings {
                    n,
                    stokes_order,
                    tracking,
                },
            )
        })
        .collect();
    let mut rows: Vec<ConvergenceRow> = Vec::new();
    for (&n, pair) in n_list.iter().zip(pairs) {
        let pair = pair?;
        let delta = rows.last().map(|prev| {
            (pair[0] - prev.pair[0])
                .norm()
                .max((pair[1] - prev.pair[1]).norm())
        });
        rows.push(ConvergenceRow { n, pair, delta });
    }
    Ok(rows)
}

/// Shape of the isola measured on the discretized operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsolaMeasurement {
    pub eps: f64,
    /// μ maximizing the real part.
    pub mu_center: f64,
    pub max_re: f64,
    pub im_center: f64,
    /// Length of the μ-interval with `Re λ ≠ 0`; zero when no isola was found.
    pub width: f64,
    /// `|Re(λ₊ + λ₋)|` at the center.
    pub hamiltonian_defect: f64,
}

/// `Re((λ_a − λ_b)²)`: the squared splitting, positive inside the isola and
/// negative outside, smooth across its edges.
fn splitting(mu: f64, eps: f64, s: &OracleSettings) -> Result<f64> {
    let [a, b] = tracked_pair(mu, eps, s)?;
    Ok(((a - b) * (a - b)).re)
}

const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Locates the isola by maximizing the squared splitting over
/// `[mu_guess − half_width, mu_guess + half_width]`, where it is unimodal.
pub fn measure_isola(
    eps: f64,
    mu_guess: f64,
    half_width: f64,
    s: &OracleSettings,
) -> Result<IsolaMeasurement> {
    let f = |mu: f64| splitting(mu, eps, s);
    let (mut lo, mut hi) = (mu_guess - half_width, mu_guess + half_width);
    let mut x1 = hi - GOLDEN * (hi - lo);
    let mut x2 = lo + GOLDEN * (hi - lo);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    while hi - lo > 1e-13 * mu_guess.abs().max(1.0) {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN * (hi - lo);
            f1 = f(x1)?;
        }
    }
    let mu_center = if f1 > f2 { x1 } else { x2 };
    let g_max = f1.max(f2);
    let [a, b] = tracked_pair(mu_center, eps, s)?;
    let im_center = 0.5 * (a.im + b.im);
    if g_max <= 0.0 {
        return Ok(IsolaMeasurement {
            eps,
            mu_center,
            max_re: 0.0,
            im_center,
            width: 0.0,
            hamiltonian_defect: (a + b).re.abs(),
        });
    }
    let root = |inside: f64, outside: f64| -> Result<f64> {
        let (mut a, mut b) = (inside, outside);
        if f(b)? > 0.0 {
            return Err(Error::InvalidInput(
                "isola not bracketed by the search window".into(),
            ));
        }
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m == a || m == b {
                break;
            }
            if f(m)? > 0.0 {
                a = m;
            } else {
                b = m;
            }
        }
        Ok(0.5 * (a + b))
    };
    let left = root(mu_center, mu_guess - half_width)?;
    let right = root(mu_center, mu_guess + half_width)?;
    Ok(IsolaMeasurement {
        eps,
        mu_center,
        max_re: 0.5 * g_max.sqrt(),
        im_center,
        width: right - left,
        hamiltonian_defect: (a + b).re.abs(),
    })
}
