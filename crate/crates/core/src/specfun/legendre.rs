//! Associated Legendre functions on the cut `-1 < z < 1`.
//!
//! `P` is the Ferrers function of the first kind. `Q` is the Ferrers function
//! of the second kind multiplied by `exp(i pi q)`; with that factor the
//! Wronskian is
//!
//! ```text
//! W{P, Q} = e^{i pi q} 2^{2q} G(1+(l+q)/2) G(1/2+(l+q)/2)
//!           / ((1 - z^2) G(1+(l-q)/2) G(1/2+(l-q)/2))
//! ```
//!
//! Both are built from the even/odd `2F1(...; z^2)` pair, each turned into a
//! `2F1` on the negative axis by a Pfaff transform.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{gamma::rgamma, hyp2f1, ln_gamma, ComplexValue, SpecFunError};

fn check_domain(z: f64) -> Result<(), SpecFunError> {
    if z.is_finite() && z.abs() < 1.0 {
        Ok(())
    } else {
        Err(SpecFunError::LegendreDomain(z))
    }
}

/// `F(a, b; c; y)` for `0 <= y < 1` via `(1-y)^(-a) F(a, c-b; c; y/(y-1))`.
fn hyp_on_unit_interval(
    a: ComplexValue,
    b: ComplexValue,
    c: f64,
    y: f64,
) -> Result<ComplexValue, SpecFunError> {
    let cc = Complex64::new(c, 0.0);
    let inner = hyp2f1(a, cc - b, c, y / (y - 1.0))?;
    Ok(inner * (-a * (1.0 - y).ln()).exp())
}

struct EvenOdd {
    /// `2^q sqrt(pi) (1 - z^2)^(-q/2)`
    prefactor: ComplexValue,
    even: ComplexValue,
    odd: ComplexValue,
    s: ComplexValue,
    t: ComplexValue,
}

fn even_odd(lambda: f64, q: ComplexValue, z: f64) -> Result<EvenOdd, SpecFunError> {
    check_domain(z)?;
    let s = (lambda + q) * 0.5;
    let t = (lambda - q) * 0.5;
    let z2 = z * z;
    let even = hyp_on_unit_interval(-s, t + 0.5, 0.5, z2)?;
    let odd = hyp_on_unit_interval(0.5 - s, t + 1.0, 1.5, z2)?;
    let prefactor = (q * 2f64.ln() - q * 0.5 * (1.0 - z2).ln()).exp() * PI.sqrt();
    Ok(EvenOdd {
        prefactor,
        even,
        odd,
        s,
        t,
    })
}

/// Ferrers `P_lambda^q(z)`.
pub fn legendre_p(lambda: f64, q: ComplexValue, z: f64) -> Result<ComplexValue, SpecFunError> {
    let e = even_odd(lambda, q, z)?;
    let even_coef = rgamma(0.5 - e.s) * rgamma(1.0 + e.t);
    let odd_coef = rgamma(-e.s) * rgamma(0.5 + e.t) * 2.0 * z;
    Ok(e.prefactor * (e.even * even_coef - e.odd * odd_coef))
}

/// `exp(i pi q)` times Ferrers `Q_lambda^q(z)`.
pub fn legendre_q(lambda: f64, q: ComplexValue, z: f64) -> Result<ComplexValue, SpecFunError> {
    let e = even_odd(lambda, q, z)?;
    let rt = rgamma(1.0 + e.t);
    let rt_half = rgamma(0.5 + e.t);
    let even_coef = -0.5 * (e.s * PI).sin() * ln_gamma(e.s + 0.5)?.exp() * rt;
    let odd_coef = (e.s * PI).cos() * ln_gamma(e.s + 1.0)?.exp() * rt_half * z;
    let phase = (Complex64::i() * PI * q).exp();
    Ok(phase * e.prefactor * (e.even * even_coef + e.odd * odd_coef))
}

// (1 - z^2) w'_l = (q - l - 1) w_{l+1} + (l + 1) z w_l holds for both kinds.
fn deriv_from_recurrence(
    f: impl Fn(f64) -> Result<ComplexValue, SpecFunError>,
    lambda: f64,
    q: ComplexValue,
    z: f64,
) -> Result<ComplexValue, SpecFunError> {
    check_domain(z)?;
    let w = f(lambda)?;
    let w_up = f(lambda + 1.0)?;
    Ok(((q - lambda - 1.0) * w_up + w * (lambda + 1.0) * z) / (1.0 - z * z))
}

pub fn legendre_p_deriv(
    lambda: f64,
    q: ComplexValue,
    z: f64,
) -> Result<ComplexValue, SpecFunError> {
    deriv_from_recurrence(|l| legendre_p(l, q, z), lambda, q, z)
}

pub fn legendre_q_deriv(
    lambda: f64,
    q: ComplexValue,
    z: f64,
) -> Result<ComplexValue, SpecFunError> {
    deriv_from_recurrence(|l| legendre_q(l, q, z), lambda, q, z)
}

/// Closed-form right-hand side of the `W{P, Q}` identity above.
pub fn wronskian_pq(lambda: f64, q: ComplexValue, z: f64) -> Result<ComplexValue, SpecFunError> {
    check_domain(z)?;
    let i = Complex64::i();
    let lp = (lambda + q) * 0.5;
    let lm = (lambda - q) * 0.5;
    let log = ln_gamma(lp + 1.0)? + ln_gamma(lp + 0.5)? - ln_gamma(lm + 1.0)? - ln_gamma(lm + 0.5)?
        + i * PI * q
        + q * 2.0 * 2f64.ln();
    Ok(log.exp() / (1.0 - z * z))
}
