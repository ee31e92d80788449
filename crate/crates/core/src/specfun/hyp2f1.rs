use num_complex::Complex64;

use super::{gamma::rgamma, ln_gamma, ComplexValue, SpecFunError};

/// Largest number of series terms summed before giving up.
pub const HYP2F1_TERM_CAP: usize = 100_000;

const REL_TOL: f64 = 1e-14;

/// Above this transformed argument `x / (x - 1)` the inverse-argument
/// connection formula replaces the Pfaff series.
const PFAFF_LIMIT: f64 = 0.9;

/// Plain Gauss series `sum (a)_n (b)_n / ((c)_n n!) x^n`.
///
/// Converges for `|x| < 1`; stops once a term falls below `1e-14` of the
/// running sum.
pub fn hyp2f1_raw_series(
    a: ComplexValue,
    b: ComplexValue,
    c: ComplexValue,
    x: f64,
) -> Result<ComplexValue, SpecFunError> {
    series(a, b, c, x, HYP2F1_TERM_CAP)
}

fn series(
    a: ComplexValue,
    b: ComplexValue,
    c: ComplexValue,
    x: f64,
    cap: usize,
) -> Result<ComplexValue, SpecFunError> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for n in 0..cap {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * x;
        sum += term;
        // geometric tail bound: remaining terms sum to about term / (1 - |x|)
        if term.norm() <= REL_TOL * (1.0 - x.abs()).max(1e-3) * sum.norm() {
            // a vanishing term ends a terminating series; otherwise require
            // the next term to be small too before stopping
            let next = (a + nf + 1.0) * (b + nf + 1.0) / ((c + nf + 1.0) * (nf + 2.0)) * x;
            if term.norm() == 0.0 || next.norm() < 1.0 {
                return Ok(sum);
            }
        }
    }
    Err(SpecFunError::NoConvergence { terms: cap, argument: x })
}

fn check_c(c: f64) -> Result<(), SpecFunError> {
    if c <= 0.0 && c == c.round() {
        Err(SpecFunError::HypergeometricPole(c))
    } else {
        Ok(())
    }
}

/// Gauss hypergeometric function `2F1(a, b; c; x)` for real `x <= 0`.
///
/// The Pfaff transform `(1-x)^(-a) F(a, c-b; c; x/(x-1))` maps the argument
/// into `[0, 1)`; once that exceeds 0.9 the expansion in `1/x` takes over.
pub fn hyp2f1(
    a: ComplexValue,
    b: ComplexValue,
    c: f64,
    x: f64,
) -> Result<ComplexValue, SpecFunError> {
    check_c(c)?;
    if x.is_nan() || x > 0.0 {
        return Err(SpecFunError::ArgumentOutOfRange(x));
    }
    if x == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let w = x / (x - 1.0);
    if w <= PFAFF_LIMIT {
        let cc = Complex64::new(c, 0.0);
        let s = series(a, cc - b, cc, w, HYP2F1_TERM_CAP)?;
        return Ok(s * (-a * (1.0 - x).ln()).exp());
    }
    hyp2f1_neg_log(a, b, c, (-x).ln(), Complex64::new(0.0, 0.0))
}

/// `exp(log_prefactor) * 2F1(a, b; c; -exp(ln_neg_x))`.
///
/// The prefactor is folded into each connection-formula term in log space so
/// that huge arguments (`-sinh^2 rho` at large `rho`) neither overflow nor
/// underflow on their own.
pub(crate) fn hyp2f1_neg_log(
    a: ComplexValue,
    b: ComplexValue,
    c: f64,
    ln_neg_x: f64,
    log_prefactor: ComplexValue,
) -> Result<ComplexValue, SpecFunError> {
    check_c(c)?;
    let neg_x = ln_neg_x.exp();
    let w = neg_x / (1.0 + neg_x);
    let degenerate = {
        let d = a - b;
        d.im.abs() < 1e-9 && (d.re - d.re.round()).abs() < 1e-9
    };
    if w <= PFAFF_LIMIT || (degenerate && w < 0.999) {
        let cc = Complex64::new(c, 0.0);
        // (1 - x)^(-a) with 1 - x = 1 + exp(ln_neg_x)
        let ln_one_minus_x = ln_neg_x.exp().ln_1p();
        let s = series(a, cc - b, cc, w, HYP2F1_TERM_CAP)?;
        return Ok(s * (log_prefactor - a * ln_one_minus_x).exp());
    }
    if degenerate {
        return Err(SpecFunError::NoConvergence {
            terms: HYP2F1_TERM_CAP,
            argument: -neg_x,
        });
    }
    // F(a,b;c;x) = G(c)G(b-a)/(G(b)G(c-a)) (-x)^(-a) F(a, a-c+1; a-b+1; 1/x) + (a <-> b)
    let inv_x = -(-ln_neg_x).exp();
    let cc = Complex64::new(c, 0.0);
    let lg_c = ln_gamma(cc)?;
    let term = |p: ComplexValue, s: ComplexValue| -> Result<ComplexValue, SpecFunError> {
        let r = rgamma(s) * rgamma(cc - p);
        if r.norm() == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let f = series(p, p - cc + 1.0, p - s + 1.0, inv_x, HYP2F1_TERM_CAP)?;
        let log_mag = lg_c + ln_gamma(s - p)? - p * ln_neg_x + log_prefactor;
        Ok(r * f * log_mag.exp())
    };
    Ok(term(a, b)? + term(b, a)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn empty_series_at_origin() {
        assert_eq!(hyp2f1(c(0.3, 1.0), c(2.0, -1.0), 0.5, 0.0).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn logarithm_closed_form() {
        // F(1,1;2;x) = -ln(1-x)/x
        for x in [-1.0, -0.3, -5.0, -20.0, -1e4] {
            let v = hyp2f1(c(1.0, 0.0), c(1.0, 0.0), 2.0, x);
            // a = b is degenerate for the connection formula, so large |x| may be refused
            match v {
                Ok(v) => {
                    assert_relative_eq!(v.re, -(1.0 - x).ln() / x, max_relative = 1e-13);
                    assert!(v.im.abs() < 1e-15);
                }
                Err(e) => assert!(x < -100.0, "{e}"),
            }
        }
        let v = hyp2f1(c(1.0, 0.0), c(1.0, 0.0), 2.0, -1.0).unwrap();
        assert_relative_eq!(v.re, 2f64.ln(), max_relative = 1e-14);
    }

    #[test]
    fn arctan_closed_form_through_connection() {
        // F(1/2, 1; 3/2; -t^2) = atan(t)/t, with a - b = -1/2 non-degenerate
        for t in [0.5, 2.0, 3.5, 10.0, 1e3] {
            let v = hyp2f1(c(0.5, 0.0), c(1.0, 0.0), 1.5, -t * t).unwrap();
            assert_relative_eq!(v.re, t.atan() / t, max_relative = 1e-13);
        }
    }

    #[test]
    fn regimes_agree_across_switch() {
        let (a, b) = (c(0.7, 0.3), c(-0.4, -0.3));
        let x = -9.0;
        let below = hyp2f1(a, b, 1.5, x * 0.999_999).unwrap();
        let above = hyp2f1(a, b, 1.5, x * 1.000_001).unwrap();
        assert!((below - above).norm() < 1e-6 * below.norm());
        let series = hyp2f1_neg_log(a, b, 1.5, 9f64.ln(), c(0.0, 0.0)).unwrap();
        let direct = hyp2f1(a, b, 1.5, -9.0).unwrap();
        assert!((series - direct).norm() < 1e-13 * direct.norm());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            hyp2f1(c(1.0, 0.0), c(1.0, 0.0), -2.0, -0.5),
            Err(SpecFunError::HypergeometricPole(_))
        ));
        assert!(matches!(
            hyp2f1(c(1.0, 0.0), c(1.0, 0.0), 2.0, 0.5),
            Err(SpecFunError::ArgumentOutOfRange(_))
        ));
        assert!(matches!(
            hyp2f1_raw_series(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), 1.5),
            Err(SpecFunError::NoConvergence { .. })
        ));
    }

    #[test]
    fn matches_raw_series_inside_disk() {
        let cases = [
            (c(0.5, 0.1), c(1.5, -0.1), 1.5),
            (c(-0.3, 2.0), c(0.25, 0.0), 0.5),
            (c(2.0, 0.0), c(3.5, 1.0), 4.0),
        ];
        for (a, b, cc) in cases {
            for x in [-0.49, -0.2, -0.01] {
                let raw = hyp2f1_raw_series(a, b, c(cc, 0.0), x).unwrap();
                let v = hyp2f1(a, b, cc, x).unwrap();
                assert!((raw - v).norm() < 1e-12 * raw.norm(), "{a} {b} {cc} {x}");
            }
        }
    }
}
