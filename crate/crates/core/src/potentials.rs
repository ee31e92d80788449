//! Closed-form model potentials.
//!
//! Every value returned here is `U(r) = 2 mu V(r) / hbar^2`, i.e. the potential
//! in units of `hbar^2 / (2 mu r0^2)`, so that the radial equation reads
//! `u'' + (k^2 - U) u = 0`. Use [`to_e0_units`] to express a value in
//! `E0 = hbar^2 / (mu r0^2)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::params::{Branch, BranchTag, DerivedParams};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PotentialError {
    #[error("{kind} needs the {wanted:?} branch but parameters are {found:?}")]
    BranchMismatch {
        kind: &'static str,
        wanted: Branch,
        found: BranchTag,
    },
    #[error("epsilon series needs n_max >= 1")]
    EmptySeries,
    #[error("epsilon series ratio {0} is not below 1 in magnitude")]
    SeriesDiverges(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PotentialKind {
    VMinus,
    VPlus,
    VZero,
    VInfinity,
    /// The correction `V_pm - V_0` summed to `n_max` terms.
    VEpsilonSeries { n_max: u32 },
    /// `U = 0`; reference for the numerical integrators.
    Free,
}

impl PotentialKind {
    pub fn label(&self) -> String {
        match self {
            PotentialKind::VMinus => "v_minus".into(),
            PotentialKind::VPlus => "v_plus".into(),
            PotentialKind::VZero => "v_zero".into(),
            PotentialKind::VInfinity => "v_infinity".into(),
            PotentialKind::VEpsilonSeries { n_max } => format!("v_epsilon_{n_max}"),
            PotentialKind::Free => "free".into(),
        }
    }
}

/// Convert a stored `U` value to units of `E0 = hbar^2 / (mu r0^2)`.
pub fn to_e0_units(u: f64) -> f64 {
    0.5 * u
}

fn require(d: &DerivedParams, wanted: Branch, kind: &'static str) -> Result<(), PotentialError> {
    if d.sign.admits(wanted) {
        Ok(())
    } else {
        Err(PotentialError::BranchMismatch {
            kind,
            wanted,
            found: d.sign,
        })
    }
}

/// `sech^2(x)` without overflow at large `x`.
fn sech2(x: f64) -> f64 {
    let e = (-2.0 * x.abs()).exp();
    4.0 * e / ((1.0 + e) * (1.0 + e))
}

/// Negative-scattering-length potential.
pub fn v_minus(r: f64, d: &DerivedParams) -> Result<f64, PotentialError> {
    require(d, Branch::Negative, "v_minus")?;
    let (a, b) = (d.alpha, d.beta);
    let e = (-2.0 * b * r).exp();
    Ok(-8.0 * a * b * b * e / ((a + e) * (a + e)))
}

/// Positive-scattering-length potential (the `Lambda = -alpha` member),
/// `-8 alpha beta^2 e^{2 beta r} / (1 + alpha e^{2 beta r})^2`.
///
/// With `e^{-2 beta r}` in place of `e^{2 beta r}` the well has scattering
/// length close to `-a_s` and no bound state, so the growing exponential is
/// the one that reproduces `a_s` and the shallow level at `1 - alpha`.
pub fn v_plus(r: f64, d: &DerivedParams) -> Result<f64, PotentialError> {
    require(d, Branch::Positive, "v_plus")?;
    let (a, b) = (d.alpha, d.beta);
    // rewritten in the decaying exponential to avoid overflow
    let e = (-2.0 * b * r).exp();
    Ok(-8.0 * a * b * b * e / ((a + e) * (a + e)))
}

/// Poschl-Teller part `-(2 kappa^2 / alpha) sech^2(kappa r)`.
pub fn v_zero(r: f64, d: &DerivedParams) -> f64 {
    -2.0 * d.kappa * d.kappa / d.alpha * sech2(d.kappa * r)
}

/// The common `|a_s| -> infinity` limit, `-8 sech^2(2 r)`.
pub fn v_infinity(r: f64) -> f64 {
    -8.0 * sech2(2.0 * r)
}

/// `V_pm - V_0` truncated after `n_max` terms of the power series in epsilon.
///
/// Both branches pair with `exp(+2 kappa r)`; the sign of epsilon carries the
/// branch.
pub fn v_epsilon(
    r: f64,
    d: &DerivedParams,
    branch: Branch,
    n_max: u32,
) -> Result<f64, PotentialError> {
    if n_max == 0 {
        return Err(PotentialError::EmptySeries);
    }
    require(d, branch, "v_epsilon")?;
    if d.epsilon == 0.0 {
        return Ok(0.0);
    }
    let x = d.epsilon / (1.0 + (2.0 * d.kappa * r).exp());
    if x.abs() >= 1.0 {
        return Err(PotentialError::SeriesDiverges(x));
    }
    let mut sum = 0.0;
    let mut pow = 1.0;
    for n in 1..=n_max {
        pow *= -x;
        sum += f64::from(n + 1) * pow;
    }
    Ok(v_zero(r, d) * sum)
}

/// Zero-range amplitude `f0(k) = -a_s / (1 + i k a_s)`.
pub fn contact_amplitude(k: f64, a_s: f64) -> Complex64 {
    -a_s / Complex64::new(1.0, k * a_s)
}

/// A potential kind bound to its parameters; what the integrators consume.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Potential {
    pub kind: PotentialKind,
    pub params: DerivedParams,
    /// Branch used by the epsilon series; fixed by the parameters except at unitarity.
    pub branch: Branch,
}

impl Potential {
    pub fn new(kind: PotentialKind, params: DerivedParams) -> Result<Self, PotentialError> {
        let branch = match kind {
            PotentialKind::VMinus => Branch::Negative,
            PotentialKind::VPlus => Branch::Positive,
            _ => params.branch().unwrap_or(Branch::Negative),
        };
        Self::with_branch(kind, params, branch)
    }

    pub fn with_branch(
        kind: PotentialKind,
        params: DerivedParams,
        branch: Branch,
    ) -> Result<Self, PotentialError> {
        require(&params, branch, "potential")?;
        let p = Self {
            kind,
            params,
            branch,
        };
        // surface branch and series errors at construction
        p.value(0.0)?;
        Ok(p)
    }

    pub fn value(&self, r: f64) -> Result<f64, PotentialError> {
        let d = &self.params;
        match self.kind {
            PotentialKind::VMinus => v_minus(r, d),
            PotentialKind::VPlus => v_plus(r, d),
            PotentialKind::VZero => Ok(v_zero(r, d)),
            PotentialKind::VInfinity => Ok(v_infinity(r)),
            PotentialKind::VEpsilonSeries { n_max } => v_epsilon(r, d, self.branch, n_max),
            PotentialKind::Free => Ok(0.0),
        }
    }

    /// `value` for a potential already validated at construction.
    pub fn at(&self, r: f64) -> f64 {
        self.value(r).expect("validated at construction")
    }

    /// Largest `|U|` over `r >= 0`.
    pub fn depth(&self) -> f64 {
        // below unitarity on the positive side the full well bottoms out at
        // e^{-2 beta r} = alpha rather than at the origin
        let d = &self.params;
        let bottom = if d.alpha < 1.0 { -d.alpha.ln() / (2.0 * d.beta) } else { 0.0 };
        self.at(0.0).abs().max(self.at(bottom).abs())
    }

    /// Smallest grid-free radius beyond which `|U| <= tol` for good.
    ///
    /// All kinds decay at least like `exp(-2 kappa r)`, so the bound is found
    /// by stepping out in units of `1 / (2 kappa)`.
    pub fn negligible_beyond(&self, tol: f64) -> f64 {
        if matches!(self.kind, PotentialKind::Free) {
            return 0.0;
        }
        let kappa = match self.kind {
            PotentialKind::VInfinity => 2.0,
            _ => self.params.kappa,
        };
        let step = 0.25 / kappa;
        let mut r = 0.0;
        while self.at(r).abs() > tol {
            r += step;
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{derive_params, ScatteringParams};
    use approx::assert_relative_eq;

    fn dp(a: f64) -> DerivedParams {
        derive_params(&ScatteringParams::reduced(a).unwrap()).unwrap()
    }

    fn unitarity() -> DerivedParams {
        derive_params(&ScatteringParams::unitarity(1.0).unwrap()).unwrap()
    }

    #[test]
    fn well_depths_in_e0_units() {
        let u = v_minus(0.0, &dp(-2.0)).unwrap();
        assert_relative_eq!(to_e0_units(u), -4.0 * 2f64.sqrt(), max_relative = 1e-14);
        let u = v_plus(0.0, &dp(50.0)).unwrap();
        assert_relative_eq!(to_e0_units(u), -4.0 * 0.96f64.sqrt(), max_relative = 1e-14);
        let d = dp(50.0);
        assert_relative_eq!(v_zero(0.0, &d), -2.0 * d.kappa * d.kappa / d.alpha, max_relative = 1e-15);
    }

    #[test]
    fn unitarity_collapses_to_v_infinity() {
        let d = unitarity();
        for r in [0.0, 0.3, 1.0, 2.5, 7.0] {
            let vi = v_infinity(r);
            assert_relative_eq!(v_minus(r, &d).unwrap(), vi, max_relative = 1e-14);
            assert_relative_eq!(v_plus(r, &d).unwrap(), vi, max_relative = 1e-14);
            assert_relative_eq!(v_zero(r, &d), vi, max_relative = 1e-14);
            assert_eq!(v_epsilon(r, &d, Branch::Positive, 5).unwrap(), 0.0);
        }
        assert_eq!(v_infinity(0.0), -8.0);
        // E0 units: -4 / cosh^2(2r)
        assert_relative_eq!(to_e0_units(v_infinity(0.4)), -4.0 / (0.8f64).cosh().powi(2), max_relative = 1e-14);
    }

    #[test]
    fn half_depth_radius() {
        let d = dp(-100.0);
        let r_half = 2f64.sqrt().acosh() / d.kappa;
        assert_relative_eq!(v_zero(r_half, &d), 0.5 * v_zero(0.0, &d), max_relative = 1e-13);
    }

    #[test]
    fn branch_mismatch_is_an_error() {
        assert!(matches!(v_minus(1.0, &dp(50.0)), Err(PotentialError::BranchMismatch { .. })));
        assert!(v_plus(1.0, &dp(-50.0)).is_err());
        assert!(v_epsilon(1.0, &dp(-50.0), Branch::Positive, 3).is_err());
        assert!(matches!(v_epsilon(1.0, &dp(-50.0), Branch::Negative, 0), Err(PotentialError::EmptySeries)));
    }

    #[test]
    fn first_series_term() {
        for (a, branch) in [(-100.0, Branch::Negative), (80.0, Branch::Positive)] {
            let d = dp(a);
            for r in [0.0, 0.7, 2.0] {
                let x = d.epsilon / (1.0 + (2.0 * d.kappa * r).exp());
                let expect = v_zero(r, &d) * (-2.0 * x);
                assert_relative_eq!(v_epsilon(r, &d, branch, 1).unwrap(), expect, max_relative = 1e-14);
            }
        }
    }

    #[test]
    fn series_reconstructs_closed_forms() {
        for a in [-100.0, -20.0, 20.0, 100.0] {
            let d = dp(a);
            let (branch, full): (Branch, fn(f64, &DerivedParams) -> Result<f64, PotentialError>) =
                if a < 0.0 { (Branch::Negative, v_minus) } else { (Branch::Positive, v_plus) };
            for i in 0..=200 {
                let r = 0.05 * f64::from(i);
                let sum = v_zero(r, &d) + v_epsilon(r, &d, branch, 30).unwrap();
                assert!((sum - full(r, &d).unwrap()).abs() < 1e-10, "a={a} r={r}");
            }
        }
        // the opposite exponential does not reproduce the closed form
        let d = dp(-100.0);
        let x = d.epsilon / (1.0 + (-2.0 * d.kappa).exp());
        let mismatched: f64 = (1..=30).map(|n| f64::from(n + 1) * (-x).powi(n)).sum();
        assert!((v_zero(1.0, &d) * (1.0 + mismatched) - v_minus(1.0, &d).unwrap()).abs() > 1e-3);
    }

    #[test]
    fn limits_approach_v_infinity() {
        let grid: Vec<f64> = (0..=400).map(|i| 0.025 * f64::from(i)).collect();
        let sup = |f: &dyn Fn(f64) -> f64| grid.iter().map(|&r| (f(r) - v_infinity(r)).abs()).fold(0.0, f64::max);
        let mut last = (f64::INFINITY, f64::INFINITY);
        for mag in [1e2, 1e3, 1e4] {
            let dn = dp(-mag);
            let dpos = dp(mag);
            let now = (sup(&|r| v_minus(r, &dn).unwrap()), sup(&|r| v_plus(r, &dpos).unwrap()));
            assert!(now.0 < last.0 && now.1 < last.1);
            last = now;
        }
        assert!(last.0 < 1e-2 && last.1 < 1e-2);
    }

    #[test]
    fn single_well_with_exponential_tail() {
        for a in [-100.0, -5.0, 3.0, 50.0] {
            let d = dp(a);
            let kinds: Vec<PotentialKind> = vec![
                if a < 0.0 { PotentialKind::VMinus } else { PotentialKind::VPlus },
                PotentialKind::VZero,
            ];
            for kind in kinds {
                let p = Potential::new(kind, d).unwrap();
                let depth = p.depth();
                let mut prev = p.at(0.0);
                for i in 1..=600 {
                    let r = 0.02 * f64::from(i);
                    let v = p.at(r);
                    assert!(v < 0.0 || v == 0.0 && r > 5.0);
                    // V_plus bottoms out where e^{-2 beta r} = alpha
                    let bottom = if kind == PotentialKind::VPlus { -d.alpha.ln() / (2.0 * d.beta) } else { 0.0 };
                    if r - 0.02 >= bottom {
                        assert!(v >= prev - 1e-15, "{kind:?} a={a} not monotone at {r}");
                    }
                    assert!(-v <= depth * (1.0 + 1e-12));
                    if r > 3.0 {
                        let tail = 8.0 * d.beta * d.beta / d.alpha * (-2.0 * d.beta * r).exp();
                        assert!(v.abs() <= tail * (1.0 + 1e-12), "{kind:?} a={a} r={r} v={v} depth={depth}");
                    }
                    prev = v;
                }
            }
        }
    }

    #[test]
    fn contact_amplitude_limits() {
        assert_eq!(contact_amplitude(0.0, 50.0), Complex64::new(-50.0, 0.0));
        let f = contact_amplitude(0.01, 50.0);
        let expect = -50.0 / Complex64::new(1.0, 0.5);
        assert!((f - expect).norm() < 1e-14);
        let k = 0.1;
        assert_relative_eq!(contact_amplitude(k, 1e12).norm(), 1.0 / k, max_relative = 1e-10);
    }

    #[test]
    fn negligible_radius_bounds_the_tail() {
        let p = Potential::new(PotentialKind::VPlus, dp(50.0)).unwrap();
        let r = p.negligible_beyond(1e-20);
        assert!(p.at(r).abs() <= 1e-20);
        assert!(p.at(r - 0.25 / p.params.kappa).abs() > 1e-20);
    }
}
