//! Perturbative and brute-force spectra of the linearized water-waves operator
//! near the first high-frequency collision `i 3/4` of the deep-water Stokes wave.
//!
//! The perturbative side builds the Taylor jets of the 2x2 reduced matrix by
//! contracting chains of entanglement coefficients with contour residues; the
//! brute-force side discretizes the Floquet operator on a Fourier basis.

pub mod basis;
pub mod entanglement;
pub mod error;
pub mod floquet_oracle;
pub mod golden;
pub mod instability;
pub mod jet_assembly;
pub mod stokes_coeffs;

pub use error::{Error, Result};
