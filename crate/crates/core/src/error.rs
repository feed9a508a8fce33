use thiserror::Error;

use crate::basis::ModeIndex;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Stokes order {0} is not tabulated (available: 1..=4)")]
    StokesOrder(u32),
    #[error("collision index p = {0} is below 2")]
    CollisionIndex(u32),
    #[error("degenerate frequency: j + mu = 0 for mode {0}")]
    DegenerateFrequency(ModeIndex),
    #[error(
        "residue path has {hits} of {len} nodes on the pole; only 0, 1, 2 or all are supported"
    )]
    UnsupportedResidue { hits: usize, len: usize },
    #[error("beta1 = {0} is nonzero; the quartic critical-curve formulas need beta1 = 0")]
    NonDegenerate(f64),
    #[error("gamma1 equals alpha1; the isola is not a graph over the imaginary axis")]
    FlatTrace,
    #[error("truncation N = {0} is below the minimum of 8")]
    Truncation(usize),
    #[error("eigensolver failed to converge")]
    Eigensolve,
    #[error("only {found} eigenvalues within {radius} of the collision")]
    Tracking { found: usize, radius: f64 },
    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
