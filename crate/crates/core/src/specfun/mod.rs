//! Special functions with complex parameters.
//!
//! Only what the scattering solver needs: the principal branch of log Γ and
//! the Gauss hypergeometric function ₂F₁(a, b; c; z) with a transformation
//! dispatch that keeps every evaluation on an absolutely convergent series.

mod gamma;
mod hyp2f1;

pub use gamma::lngamma;
pub use hyp2f1::{hyp2f1, hyp2f1_dz, Hyp2F1Args, SERIES_MAX_TERMS};

use num_complex::Complex64;
use thiserror::Error;

/// Complex scalar used for wavenumbers, amplitudes and function values.
pub type ComplexValue = Complex64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecfunError {
    #[error("hypergeometric series did not converge within {terms} terms")]
    SeriesNoConvergence { terms: usize },
    #[error("parameter c = {c} is at a pole (zero or negative integer)")]
    ParameterPole { c: Complex64 },
    #[error("connection formula degenerate: b - a = {diff} is (nearly) an integer")]
    ConnectionDegenerate { diff: Complex64 },
    #[error("log-gamma pole at z = {z}")]
    GammaPole { z: Complex64 },
    #[error("non-finite value produced or supplied")]
    NonFinite,
}

pub(crate) fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Distance-based test for the points 0, -1, -2, ...
pub(crate) fn near_nonpositive_integer(z: Complex64, tol: f64) -> bool {
    if z.im.abs() >= tol {
        return false;
    }
    let n = z.re.round();
    n <= 0.0 && (z.re - n).abs() < tol
}
