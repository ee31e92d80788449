use std::f64::consts::PI;

use num_complex::Complex64;

use super::{ComplexValue, SpecFunError};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Stirling-series shift threshold: below this real part the argument is
/// moved up with the recurrence before the asymptotic series is summed.
const STIRLING_MIN_RE: f64 = 15.0;

// B_{2n} / (2n (2n - 1)), n = 1..=10
const STIRLING_COEFFS: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

fn is_pole(z: ComplexValue) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Principal-branch log-gamma.
///
/// The imaginary part is the continuous branch obtained from the recurrence
/// `ln Gamma(z) = ln Gamma(z + n) - sum ln(z + j)`, analytic off the negative
/// real axis; it is *not* reduced into `(-pi, pi]`.
pub fn ln_gamma(z: ComplexValue) -> Result<ComplexValue, SpecFunError> {
    if is_pole(z) {
        return Err(SpecFunError::GammaPole(z.re));
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < STIRLING_MIN_RE {
        shift -= w.ln();
        w += 1.0;
    }
    Ok(stirling(w) + shift)
}

fn stirling(z: ComplexValue) -> ComplexValue {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING_COEFFS {
        series += pow * c;
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + LN_SQRT_2PI + series
}

pub fn gamma(z: ComplexValue) -> Result<ComplexValue, SpecFunError> {
    ln_gamma(z).map(|l| l.exp())
}

/// `1 / Gamma(z)`, entire; zero at the poles of Gamma.
pub fn rgamma(z: ComplexValue) -> ComplexValue {
    match ln_gamma(z) {
        Ok(l) => (-l).exp(),
        Err(_) => Complex64::new(0.0, 0.0),
    }
}

/// `arg Gamma(i y)` on the branch continuous in `y` away from the origin.
/// Odd in `y`; tends to `-pi/2 sgn(y)` as `y -> 0`.
pub fn arg_gamma_imag(y: f64) -> Result<f64, SpecFunError> {
    if y == 0.0 {
        return Err(SpecFunError::GammaPole(0.0));
    }
    // Gamma(iy) = Gamma(1 + iy) / (iy) keeps the evaluation away from the pole.
    let l = ln_gamma(Complex64::new(1.0, y))?;
    Ok(l.im - PI / 2.0 * y.signum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn closed_forms() {
        assert!(ln_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(ln_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-15);
        let half = ln_gamma(c(0.5, 0.0)).unwrap();
        assert_relative_eq!(half.re, PI.sqrt().ln(), max_relative = 1e-14);
        assert_eq!(half.im, 0.0);
        assert_relative_eq!(gamma(c(6.0, 0.0)).unwrap().re, 120.0, max_relative = 1e-13);
    }

    #[test]
    fn poles_are_errors() {
        for x in [0.0, -1.0, -7.0] {
            assert!(matches!(ln_gamma(c(x, 0.0)), Err(SpecFunError::GammaPole(_))));
            assert_eq!(rgamma(c(x, 0.0)), c(0.0, 0.0));
        }
        assert!(arg_gamma_imag(0.0).is_err());
    }

    #[test]
    fn recurrence_and_reflection() {
        let pts = [c(0.3, 0.7), c(-1.4, 2.2), c(3.3, -0.1), c(0.01, 5.0), c(-0.5, 0.25)];
        for z in pts {
            let g = gamma(z).unwrap();
            let g1 = gamma(z + 1.0).unwrap();
            assert!((g1 - z * g).norm() < 1e-12 * g1.norm(), "recurrence at {z}");
            let refl = g * gamma(1.0 - z).unwrap();
            let expect = PI / (z * PI).sin();
            assert!((refl - expect).norm() < 1e-12 * expect.norm(), "reflection at {z}");
        }
    }

    #[test]
    fn arg_gamma_is_odd_and_consistent() {
        for y in [0.01, 0.3, 1.0, 4.0] {
            let p = arg_gamma_imag(y).unwrap();
            let m = arg_gamma_imag(-y).unwrap();
            assert!((p + m).abs() < 1e-15);
        }
        let direct = ln_gamma(c(0.0, 1.0)).unwrap().im;
        assert!((arg_gamma_imag(1.0).unwrap() - direct).abs() < 1e-13);
    }
}
