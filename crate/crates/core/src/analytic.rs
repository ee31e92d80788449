//! Exact solutions of the Poschl-Teller well `U0 = -(2 kappa^2 / alpha) sech^2(kappa r)`.
//!
//! Work is done in `rho = kappa r` with `kt = k / kappa` and `q = i kt`. In
//! these variables the radial equation is
//! `psi'' + (kt^2 + lambda (lambda + 1) sech^2 rho) psi = 0`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::params::{Branch, BranchTag, DerivedParams};
use crate::records::{mod_pi, BoundState, Method};
use crate::specfun::{
    hyp2f1_neg_log, hyp2f1_raw_series, ln_gamma, rgamma, ComplexValue, SpecFunError,
};

/// Term cap for the arctan series form of the phase shift.
pub const SERIES_TERM_CAP: usize = 1_000_000;
const SERIES_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticError {
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error("wavenumber must be positive and finite, got {0}")]
    BadWavenumber(f64),
    #[error("radius must be non-negative and finite, got {0}")]
    BadRadius(f64),
    #[error("Green function needs a positive real energy, got {0}")]
    BadEnergy(f64),
    #[error("outgoing-solution prefactor is singular (a(q) - a(-q) = 0)")]
    DegeneratePrefactor,
    #[error("arctan series did not reach {tol:e} within {terms} terms")]
    SeriesNotConverged { terms: usize, tol: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseForm {
    GammaForm,
    SeriesForm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LegendreCoordinates {
    pub rho: f64,
    /// `tanh(rho)`
    pub z: f64,
    pub q: ComplexValue,
}

impl LegendreCoordinates {
    pub fn scattering(rho: f64, kt: f64) -> Result<Self, AnalyticError> {
        check_rho(rho)?;
        Ok(Self {
            rho,
            z: rho.tanh(),
            q: Complex64::new(0.0, kt),
        })
    }

    pub fn bound(rho: f64, kbar: f64) -> Result<Self, AnalyticError> {
        check_rho(rho)?;
        Ok(Self {
            rho,
            z: rho.tanh(),
            q: Complex64::new(-kbar, 0.0),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenFunctionEval {
    pub rho: f64,
    pub rho_prime: f64,
    pub value: ComplexValue,
    /// Energy in the units the caller supplied.
    pub energy: f64,
}

fn check_rho(rho: f64) -> Result<(), AnalyticError> {
    if rho.is_finite() && rho >= 0.0 {
        Ok(())
    } else {
        Err(AnalyticError::BadRadius(rho))
    }
}

fn check_k(kt: f64) -> Result<(), AnalyticError> {
    if kt.is_finite() && kt > 0.0 {
        Ok(())
    } else {
        Err(AnalyticError::BadWavenumber(kt))
    }
}

/// `ln G(q)` with `G(q) = 2^-q Gamma(q) / (Gamma(1/2 - l/2 + q/2) Gamma(1 + l/2 + q/2))`.
fn ln_g(lambda: f64, q: ComplexValue) -> Result<ComplexValue, SpecFunError> {
    Ok(-q * 2f64.ln() + ln_gamma(q)? - ln_gamma(0.5 - lambda / 2.0 + q / 2.0)?
        - ln_gamma(1.0 + lambda / 2.0 + q / 2.0)?)
}

/// Unreduced phase `pi/2 + arg G(i kt)`; `psi -> sin(kt rho + raw_phase)`.
fn raw_phase(lambda: f64, kt: f64) -> Result<f64, AnalyticError> {
    check_k(kt)?;
    Ok(PI / 2.0 + ln_g(lambda, Complex64::new(0.0, kt))?.im)
}

fn ln_sinh(rho: f64) -> f64 {
    if rho < 1.0 {
        rho.sinh().ln()
    } else {
        rho + (-(-2.0 * rho).exp()).ln_1p() - 2f64.ln()
    }
}

fn ln_cosh(rho: f64) -> f64 {
    rho + (-2.0 * rho).exp().ln_1p() - 2f64.ln()
}

/// Regular solution, normalized to `psi -> sin(kt rho + delta)`.
///
/// Evaluated as `sinh(rho) cosh(rho)^-l F(1/2 - l/2 - q/2, 1/2 - l/2 + q/2; 3/2; -sinh^2 rho)`
/// divided by `sqrt(pi) |G(q)|`. The value is real up to rounding.
pub fn psi_regular(rho: f64, lambda: f64, kt: f64) -> Result<ComplexValue, AnalyticError> {
    check_rho(rho)?;
    check_k(kt)?;
    if rho == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let q = Complex64::new(0.0, kt);
    let a = 0.5 - lambda / 2.0 - q / 2.0;
    let b = 0.5 - lambda / 2.0 + q / 2.0;
    let ls = ln_sinh(rho);
    let norm = 0.5 * PI.ln() + ln_g(lambda, q)?.re;
    let prefactor = Complex64::new(ls - lambda * ln_cosh(rho) - norm, 0.0);
    Ok(hyp2f1_neg_log(a, b, 1.5, 2.0 * ls, prefactor)?)
}

fn a_lambda(lambda: f64, q: ComplexValue) -> ComplexValue {
    ((lambda + q) * PI / 2.0).cos() * ((q - lambda) * PI / 2.0).sin()
}

/// Outgoing solution, `phi -> -exp(i (kt rho + delta))`.
///
/// Proportional to `P_l^q(tanh rho)` with coefficient
/// `-pi e^{i delta} / (Gamma(q) [a(q) - a(-q)])`, where
/// `a(q) = cos(pi (l + q)/2) sin(pi (q - l)/2)`. The Legendre function is
/// summed as `e^{q rho} F(l + 1, -l; 1 - q; (1 - tanh rho)/2) / Gamma(1 - q)`,
/// which stays accurate for any `rho`.
pub fn phi_outgoing(rho: f64, lambda: f64, kt: f64) -> Result<ComplexValue, AnalyticError> {
    check_rho(rho)?;
    let delta = raw_phase(lambda, kt)?;
    let q = Complex64::new(0.0, kt);
    let da = a_lambda(lambda, q) - a_lambda(lambda, -q);
    if da.norm() == 0.0 {
        return Err(AnalyticError::DegeneratePrefactor);
    }
    let coef = -PI * Complex64::from_polar(1.0, delta) * rgamma(q) / da;
    let e = (-2.0 * rho).exp();
    let f = hyp2f1_raw_series(
        Complex64::new(lambda + 1.0, 0.0),
        Complex64::new(-lambda, 0.0),
        1.0 - q,
        e / (1.0 + e),
    )?;
    let p = (q * rho).exp() * f * rgamma(1.0 - q);
    Ok(coef * p)
}

/// Green function of `d^2/drho^2 + kt^2 - U0/kappa^2` with a unit jump in
/// `dG/drho` at `rho = rho'`: `G = psi(rho_<) phi(rho_>) / kt`.
///
/// `energy` is `kt^2`. Complex energies are not supported.
pub fn green_function(
    rho: f64,
    rho_prime: f64,
    lambda: f64,
    energy: f64,
) -> Result<GreenFunctionEval, AnalyticError> {
    if !(energy.is_finite() && energy > 0.0) {
        return Err(AnalyticError::BadEnergy(energy));
    }
    check_rho(rho)?;
    check_rho(rho_prime)?;
    let kt = energy.sqrt();
    let (lo, hi) = if rho <= rho_prime {
        (rho, rho_prime)
    } else {
        (rho_prime, rho)
    };
    let value = psi_regular(lo, lambda, kt)? * phi_outgoing(hi, lambda, kt)? / kt;
    Ok(GreenFunctionEval {
        rho,
        rho_prime,
        value,
        energy,
    })
}

/// Phase shift in `[0, pi)` for physical wavenumber `k`.
pub fn phase_shift_analytic(
    k: f64,
    lambda: f64,
    kappa: f64,
    form: PhaseForm,
) -> Result<f64, AnalyticError> {
    check_k(k)?;
    let kt = k / kappa;
    check_k(kt)?;
    match form {
        PhaseForm::GammaForm => Ok(mod_pi(raw_phase(lambda, kt)?)),
        PhaseForm::SeriesForm => series_form(kt, lambda),
    }
}

// t atan(kt/t) + (kt/2) ln(t^2 + kt^2): antiderivative of atan(kt/t)
fn series_tail(kt: f64, lambda: f64, m: f64) -> f64 {
    let lin = m * (kt / m).atan() - (m - lambda) * (kt / (m - lambda)).atan();
    let ratio = (2.0 * m * lambda - lambda * lambda) / ((m - lambda).powi(2) + kt * kt);
    lin + 0.5 * kt * ratio.ln_1p()
}

fn series_form(kt: f64, lambda: f64) -> Result<f64, AnalyticError> {
    let cot = 1.0 / (-PI * lambda / 2.0).tan();
    let mut sum = -(cot * (PI * kt / 2.0).tanh()).atan() + (-kt / lambda).atan();
    for n in 1..=SERIES_TERM_CAP {
        let nf = n as f64;
        let term = (kt / (nf - lambda)).atan() - (kt / nf).atan();
        sum += term;
        if term.abs() < SERIES_TOL && nf > lambda.abs() + 1.0 {
            sum += series_tail(kt, lambda, nf + 0.5);
            return Ok(mod_pi(sum));
        }
    }
    Err(AnalyticError::SeriesNotConverged {
        terms: SERIES_TERM_CAP,
        tol: SERIES_TOL,
    })
}

/// `G(kbar)` in the reflected form; vanishes at bound states.
pub fn bound_state_function(lambda: f64, kbar: f64) -> Result<f64, AnalyticError> {
    let x = -(lambda + kbar) / 2.0;
    let num = ln_gamma(Complex64::new(x, 0.0));
    let den = rgamma(Complex64::new(0.5 - lambda / 2.0 + kbar / 2.0, 0.0)).re;
    let g = match num {
        Ok(l) => (l.exp().re) * (PI * x).sin(),
        // Gamma(x) sin(pi x) stays finite at the poles: pi / Gamma(1 - x)
        Err(_) => PI * rgamma(Complex64::new(1.0 - x, 0.0)).re,
    };
    Ok(2f64.powf(kbar) / PI * g * den)
}

/// Bound states of the well on the branch selected by `d`.
///
/// Every integer `n >= 1` with `kbar = -lambda2 - 2n >= 0` gives a state with
/// `n - 1` nodes. Empty for negative scattering length.
pub fn bound_states(d: &DerivedParams) -> Vec<BoundState> {
    if d.sign == BranchTag::NegativeAs {
        return Vec::new();
    }
    let lambda = d.lambda2;
    let mut out = Vec::new();
    for n in 1.. {
        let mut kbar = -lambda - 2.0 * f64::from(n);
        if kbar < 0.0 {
            if kbar > -1e-12 {
                kbar = 0.0;
            } else {
                break;
            }
        }
        out.push(BoundState::new(kbar, d.kappa, Method::Analytic, n as usize - 1));
    }
    out
}

/// The well for one branch of a parameter set, in physical (`r`, `k`) variables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoschlTeller {
    pub lambda: f64,
    pub kappa: f64,
}

impl PoschlTeller {
    pub fn new(d: &DerivedParams, branch: Branch) -> Self {
        Self {
            lambda: d.lambda_on(branch),
            kappa: d.kappa,
        }
    }

    /// `U0(r)` in the `u'' + (k^2 - U) u = 0` convention.
    pub fn potential(&self, r: f64) -> f64 {
        let x = (self.kappa * r).abs();
        let e = (-2.0 * x).exp();
        -self.lambda * (self.lambda + 1.0) * self.kappa * self.kappa * 4.0 * e / ((1.0 + e) * (1.0 + e))
    }

    pub fn psi_regular(&self, r: f64, k: f64) -> Result<ComplexValue, AnalyticError> {
        psi_regular(self.kappa * r, self.lambda, k / self.kappa)
    }

    pub fn phi_outgoing(&self, r: f64, k: f64) -> Result<ComplexValue, AnalyticError> {
        phi_outgoing(self.kappa * r, self.lambda, k / self.kappa)
    }

    /// Green function in `r` for energy `E = k^2`: `G_r(r, r') = G_rho / kappa`.
    pub fn green_function(&self, r: f64, r_prime: f64, energy: f64) -> Result<GreenFunctionEval, AnalyticError> {
        let kk = self.kappa * self.kappa;
        let g = green_function(self.kappa * r, self.kappa * r_prime, self.lambda, energy / kk)?;
        Ok(GreenFunctionEval {
            rho: r,
            rho_prime: r_prime,
            value: g.value / self.kappa,
            energy,
        })
    }

    pub fn phase_shift(&self, k: f64, form: PhaseForm) -> Result<f64, AnalyticError> {
        phase_shift_analytic(k, self.lambda, self.kappa, form)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{derive_params, ScatteringParams};
    use crate::specfun::legendre_p;
    use approx::assert_relative_eq;

    fn dp(a: f64) -> DerivedParams {
        derive_params(&ScatteringParams::reduced(a).unwrap()).unwrap()
    }

    #[test]
    fn coordinates() {
        let c = LegendreCoordinates::scattering(0.5, 0.01).unwrap();
        assert_eq!(c.z, 0.5f64.tanh());
        assert_eq!(c.q, Complex64::new(0.0, 0.01));
        assert_eq!(LegendreCoordinates::bound(1.0, 0.2).unwrap().q.re, -0.2);
        assert!(LegendreCoordinates::scattering(-1.0, 0.01).is_err());
    }

    #[test]
    fn psi_vanishes_at_origin_and_is_real() {
        for (l, kt) in [(1.0, 0.01), (0.99, 0.3), (-2.01, 0.05)] {
            assert_eq!(psi_regular(0.0, l, kt).unwrap(), Complex64::new(0.0, 0.0));
            let small = psi_regular(1e-6, l, kt).unwrap();
            assert!(small.norm() < 1e-4);
            for rho in [0.3, 2.0, 9.0, 40.0] {
                let v = psi_regular(rho, l, kt).unwrap();
                assert!(v.im.abs() < 1e-10 * v.norm().max(1.0), "{v} at {rho}");
            }
        }
    }

    #[test]
    fn psi_amplitude_is_unit_asymptotically() {
        let (l, kt) = (0.993, 0.2);
        let delta = raw_phase(l, kt).unwrap();
        for i in 0..=40 {
            let rho = 20.0 + 0.5 * f64::from(i);
            let v = psi_regular(rho, l, kt).unwrap().re;
            assert!((v - (kt * rho + delta).sin()).abs() < 1e-9, "rho={rho}");
        }
    }

    #[test]
    fn psi_solves_the_radial_equation() {
        let (l, kt) = (-2.0137, 0.05);
        let f = |r: f64| psi_regular(r, l, kt).unwrap().re;
        for rho in [0.4, 1.3, 3.0, 7.0] {
            let h = 1e-3;
            let d2 = (-f(rho + 2.0 * h) + 16.0 * f(rho + h) - 30.0 * f(rho) + 16.0 * f(rho - h)
                - f(rho - 2.0 * h))
                / (12.0 * h * h);
            let s = 1.0 / rho.cosh();
            let res = d2 + (kt * kt + l * (l + 1.0) * s * s) * f(rho);
            assert!(res.abs() < 1e-7, "residual {res} at {rho}");
        }
    }

    #[test]
    fn phi_is_a_legendre_p_multiple_and_outgoing() {
        let (l, kt, rho): (f64, f64, f64) = (1.0, 0.02, 3.0);
        let q = Complex64::new(0.0, kt);
        let delta = raw_phase(l, kt).unwrap();
        let da = a_lambda(l, q) - a_lambda(l, -q);
        let coef = -PI * Complex64::from_polar(1.0, delta) * rgamma(q) / da;
        let direct = coef * legendre_p(l, q, rho.tanh()).unwrap();
        let phi = phi_outgoing(rho, l, kt).unwrap();
        assert!((phi - direct).norm() < 1e-9 * direct.norm(), "{phi} vs {direct}");

        for rho in [25.0, 30.0, 60.0] {
            let phi = phi_outgoing(rho, l, kt).unwrap();
            let want = -Complex64::from_polar(1.0, kt * rho + delta);
            assert!((phi - want).norm() < 1e-12);
        }
    }

    #[test]
    fn wronskian_is_constant() {
        for (l, kt) in [(0.99, 0.01), (-2.02, 0.1)] {
            let w = |rho: f64| {
                let h = 1e-4;
                let p = |r: f64| psi_regular(r, l, kt).unwrap();
                let f = |r: f64| phi_outgoing(r, l, kt).unwrap();
                let dp = (p(rho + h) - p(rho - h)) / (2.0 * h);
                let df = (f(rho + h) - f(rho - h)) / (2.0 * h);
                p(rho) * df - dp * f(rho)
            };
            let (w1, w2) = (w(0.7), w(4.0));
            assert!((w1 - w2).norm() < 1e-7 * kt.max(w1.norm()));
            assert!((w1 - Complex64::new(kt, 0.0)).norm() < 1e-7);
        }
    }

    fn green_grid() -> [f64; 5] {
        [0.2, 0.7, 1.5, 3.0, 6.0]
    }

    #[test]
    fn green_symmetry_and_continuity() {
        for energy in [1e-4, 0.04] {
            for &a in &green_grid() {
                for &b in &green_grid() {
                    let g1 = green_function(a, b, 0.99, energy).unwrap().value;
                    let g2 = green_function(b, a, 0.99, energy).unwrap().value;
                    assert!((g1 - g2).norm() <= 1e-12 * g1.norm().max(1.0));
                }
            }
        }
        assert!(matches!(green_function(1.0, 2.0, 1.0, 0.0), Err(AnalyticError::BadEnergy(_))));
        assert!(green_function(1.0, 2.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn green_jump_is_unity() {
        let h = 1e-5;
        for energy in [1e-4, 0.04] {
            for &rp in &green_grid() {
                let g = |r: f64| green_function(r, rp, -2.02, energy).unwrap().value;
                let right = (-3.0 * g(rp) + 4.0 * g(rp + h) - g(rp + 2.0 * h)) / (2.0 * h);
                let left = (3.0 * g(rp) - 4.0 * g(rp - h) + g(rp - 2.0 * h)) / (2.0 * h);
                let jump = right - left;
                assert!((jump - 1.0).norm() < 1e-6, "jump {jump} at {rp}");
            }
        }
    }

    #[test]
    fn phase_forms_agree() {
        for a in [-1000.0, -100.0, -50.0, 50.0, 100.0, 1000.0] {
            let d = dp(a);
            let l = d.branch_lambda().unwrap();
            for kt in [1e-5, 1e-3, 0.05, 0.3] {
                let k = kt * d.kappa;
                let g = phase_shift_analytic(k, l, d.kappa, PhaseForm::GammaForm).unwrap();
                let s = phase_shift_analytic(k, l, d.kappa, PhaseForm::SeriesForm).unwrap();
                let diff = (g - s).abs().min(PI - (g - s).abs());
                assert!(diff < 1e-9, "a={a} kt={kt}: {g} vs {s}");
            }
        }
    }

    #[test]
    fn phase_branch_ranges() {
        for a in [-1000.0, -50.0] {
            let d = dp(a);
            let g = phase_shift_analytic(1e-3, d.branch_lambda().unwrap(), d.kappa, PhaseForm::GammaForm).unwrap();
            assert!(g > 0.0 && g < PI / 2.0);
        }
        for a in [50.0, 1000.0] {
            let d = dp(a);
            let g = phase_shift_analytic(1e-3, d.branch_lambda().unwrap(), d.kappa, PhaseForm::GammaForm).unwrap();
            assert!(g > PI / 2.0 && g < PI);
        }
    }

    #[test]
    fn wigner_regime_scattering_length() {
        let d = dp(-1000.0);
        let l = d.branch_lambda().unwrap();
        let k = 1e-4;
        let g = phase_shift_analytic(k, l, d.kappa, PhaseForm::GammaForm).unwrap();
        let s = phase_shift_analytic(k, l, d.kappa, PhaseForm::SeriesForm).unwrap();
        assert!((g - s).abs() < 1e-9);
        assert!(g < PI / 2.0);
        let a_est = -g.tan() / k;
        // the well alone carries about three quarters of the scattering length
        assert!(a_est < 0.0 && a_est.abs() > 100.0, "{a_est}");
    }

    #[test]
    fn wigner_law_for_weak_wells() {
        for l in [0.01, -1.01, 0.1] {
            let kappa = 1.5;
            let ratio = |kt: f64| {
                let k = kt * kappa;
                let d = phase_shift_analytic(k, l, kappa, PhaseForm::GammaForm).unwrap();
                // near-zero phases may sit just below pi
                let d = if d > PI / 2.0 { d - PI } else { d };
                d / k
            };
            let r0 = ratio(1e-5);
            for kt in [3e-5, 1e-4, 3e-4, 1e-3] {
                assert!((ratio(kt) / r0 - 1.0).abs() < 0.01, "l={l} kt={kt}");
            }
        }
    }

    #[test]
    fn resonant_limits() {
        // lambda -> 1 from below and lambda -> -2 from above, at a momentum low
        // enough that the effective-range term stays below 1/(k a_s)
        let k = 1e-4;
        let mut last = (0.0, PI);
        for mag in [1e3, 1e4, 1e5] {
            let dn = dp(-mag);
            let below = phase_shift_analytic(k, dn.lambda1, dn.kappa, PhaseForm::GammaForm).unwrap();
            let dpos = dp(mag);
            let above = phase_shift_analytic(k, dpos.lambda2, dpos.kappa, PhaseForm::GammaForm).unwrap();
            assert!(below < PI / 2.0 && below > last.0, "{below}");
            assert!(above > PI / 2.0 && above < last.1, "{above}");
            last = (below, above);
        }
        assert!(PI / 2.0 - last.0 < 0.2 && last.1 - PI / 2.0 < 0.2);
        // at fixed larger k the limit sits a distance of order k below pi/2
        let k = 0.01;
        let near = phase_shift_analytic(k, 1.0 - 1e-7, 2.0, PhaseForm::GammaForm).unwrap();
        assert!(near < PI / 2.0 && PI / 2.0 - near < k);
    }

    #[test]
    fn phase_errors() {
        assert!(matches!(
            phase_shift_analytic(0.0, 1.0, 2.0, PhaseForm::GammaForm),
            Err(AnalyticError::BadWavenumber(_))
        ));
    }

    #[test]
    fn bound_state_spectrum() {
        assert!(bound_states(&dp(-50.0)).is_empty());
        let d = dp(50.0);
        let b = bound_states(&d);
        assert_eq!(b.len(), 1);
        assert_relative_eq!(b[0].kbar, -d.lambda2 - 2.0, max_relative = 1e-14);
        assert!((b[0].kbar - 0.013685).abs() < 1e-6);
        assert!((b[0].wavenumber - 0.027095).abs() < 1e-5);
        assert_eq!(b[0].energy, -b[0].wavenumber.powi(2));
        assert_eq!(b[0].node_count, 0);
        let u = derive_params(&ScatteringParams::unitarity(1.0).unwrap()).unwrap();
        let b = bound_states(&u);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].kbar, 0.0);
        let deep = dp(2.05);
        let b = bound_states(&deep);
        assert!(b.len() > 1);
        for (i, s) in b.iter().enumerate() {
            assert_eq!(s.node_count, i);
            let g = bound_state_function(deep.lambda2, s.kbar).unwrap();
            assert!(g.abs() < 1e-10, "G={g} at {}", s.kbar);
        }
        assert!(bound_state_function(deep.lambda2, b[0].kbar + 0.1).unwrap().abs() > 1e-3);
    }

    #[test]
    fn green_r_scaling() {
        let d = dp(-100.0);
        let pt = PoschlTeller::new(&d, Branch::Negative);
        let k = 0.05;
        let g = pt.green_function(0.4, 1.1, k * k).unwrap();
        let gr = green_function(0.4 * d.kappa, 1.1 * d.kappa, pt.lambda, (k / d.kappa).powi(2)).unwrap();
        assert!((g.value * d.kappa - gr.value).norm() < 1e-14);
        assert_relative_eq!(pt.potential(0.3), crate::potentials::v_zero(0.3, &d), max_relative = 1e-12);
    }
}
