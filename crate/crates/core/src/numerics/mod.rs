//! Numerical solvers for the radial equation `u'' = (U - k^2) u`.
//!
//! Numerov integration on a uniform grid, phase extraction by two-point
//! matching, bound-state shooting, the Green-function iteration for the full
//! potentials and effective-range fitting.

mod bound;
mod ere;
mod grid;
mod numerov;
mod perturbative;
mod phase;

use thiserror::Error;

use crate::analytic::AnalyticError;
use crate::params::ParamError;
use crate::potentials::PotentialError;

pub use bound::{find_bound_states, shoot_bound_state, zero_energy_node_count, ShootingOptions};
pub use ere::{fit_effective_range, EreFit, ERE_K_MAX, ERE_K_MIN, ERE_MIN_SAMPLES};
pub use grid::RadialGrid;
pub use numerov::{integrate_radial, Normalization, RadialSolution};
pub use perturbative::{solve_perturbative, PerturbativeOptions, PerturbativeSolution};
pub use phase::{
    asymptotic_intercept, energy_normalize, extract_phase_shift, extract_phase_shift_at,
    numerov_phase_curve, numerov_phase_shift, MatchingRadii, TAIL_TOLERANCE,
};

pub use crate::records::{BoundState, Method, PhaseShiftCurve};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("grid needs r_max > 0 and at least 3 points (got r_max = {r_max}, n = {n_points})")]
    BadGrid { r_max: f64, n_points: usize },
    #[error("wavenumber must be positive and finite, got {0}")]
    BadWavenumber(f64),
    #[error("resolution guard violated: h = {h}, h k = {hk}, h kappa = {hkappa}")]
    ResolutionGuard { h: f64, hk: f64, hkappa: f64 },
    #[error("grid too short: r_max = {r_max} < required {required}")]
    GridTooShort { r_max: f64, required: f64 },
    #[error("matching radii {r1} and {r2} are degenerate for k = {k}")]
    DegenerateMatching { k: f64, r1: f64, r2: f64 },
    #[error("potential is not negligible at matching radius {r} (|U| = {u:e})")]
    TailNotFree { r: f64, u: f64 },
    #[error("no sign change of the matching function between E = {lo} and E = {hi}")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("root refinement stopped after {iterations} iterations")]
    RootNotConverged { iterations: usize },
    #[error("perturbative iteration diverges: difference {current:e} after {previous:e} at step {step}")]
    Diverging { step: usize, previous: f64, current: f64 },
    #[error("perturbative solver needs |epsilon| < 0.2, got {0}")]
    OutsidePerturbativeRegime(f64),
    #[error("need at least one iteration")]
    NoIterations,
    #[error("effective-range fit needs at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("sample k = {0} lies outside the effective-range window")]
    SampleOutOfRange(f64),
    #[error("phase shift is a multiple of pi at k = {0}")]
    PhaseAtMultipleOfPi(f64),
    #[error("effective-range fit is singular (degenerate k grid)")]
    SingularFit,
}
