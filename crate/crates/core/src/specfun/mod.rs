//! Complex special functions needed by the exact Poschl-Teller solutions.
//!
//! Only what the artifact uses is implemented: log-gamma on the complex
//! plane, Gauss `2F1` on the negative real axis, and Ferrers-type associated
//! Legendre functions of real degree and (usually imaginary) order on the cut.

mod gamma;
mod hyp2f1;
mod legendre;

use num_complex::Complex64;
use thiserror::Error;

pub use gamma::{arg_gamma_imag, gamma, ln_gamma, rgamma};
pub use hyp2f1::{hyp2f1, hyp2f1_raw_series, HYP2F1_TERM_CAP};
pub(crate) use hyp2f1::hyp2f1_neg_log;
pub use legendre::{legendre_p, legendre_p_deriv, legendre_q, legendre_q_deriv, wronskian_pq};

/// Complex number carrier for `q = i k / kappa` and every special-function value.
pub type ComplexValue = Complex64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("gamma function pole at {0}")]
    GammaPole(f64),
    #[error("2F1 lower parameter c = {0} is a nonpositive integer")]
    HypergeometricPole(f64),
    #[error("2F1 argument x = {0} is outside the supported range x <= 0")]
    ArgumentOutOfRange(f64),
    #[error("2F1 series did not converge within {terms} terms (argument {argument})")]
    NoConvergence { terms: usize, argument: f64 },
    #[error("Legendre argument z = {0} must lie in (-1, 1)")]
    LegendreDomain(f64),
}
