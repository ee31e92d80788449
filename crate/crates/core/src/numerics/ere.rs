use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{NumericsError, PhaseShiftCurve};

pub const ERE_MIN_SAMPLES: usize = 8;
pub const ERE_K_MIN: f64 = 1e-4;
pub const ERE_K_MAX: f64 = 5e-2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EreFit {
    pub a_s: f64,
    pub r0: f64,
    /// Weighted rms residual of `k cot(delta)`.
    pub residual: f64,
}

/// Weighted least squares of `k cot(delta) = -1/a_s + r0 k^2 / 2`.
///
/// Each sample is weighted by `sin^4(delta) / k^2`, the inverse variance of
/// `k cot(delta)` under a uniform error in `delta`.
pub fn fit_effective_range(curve: &PhaseShiftCurve) -> Result<EreFit, NumericsError> {
    let n = curve.samples.len();
    if n < ERE_MIN_SAMPLES {
        return Err(NumericsError::TooFewSamples {
            needed: ERE_MIN_SAMPLES,
            got: n,
        });
    }
    let (mut sw, mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    let mut rows = Vec::with_capacity(n);
    for &(k, delta) in &curve.samples {
        // tolerate rounding at the window edges
        if !(k >= ERE_K_MIN * (1.0 - 1e-12) && k <= ERE_K_MAX * (1.0 + 1e-12)) {
            return Err(NumericsError::SampleOutOfRange(k));
        }
        let s = delta.sin();
        if (delta / PI - (delta / PI).round()).abs() < 1e-15 || s == 0.0 {
            return Err(NumericsError::PhaseAtMultipleOfPi(k));
        }
        let x = 0.5 * k * k;
        let y = k * delta.cos() / s;
        let w = s.powi(4) / (k * k);
        sw += w;
        sx += w * x;
        sy += w * y;
        sxx += w * x * x;
        sxy += w * x * y;
        rows.push((x, y, w));
    }
    let det = sw * sxx - sx * sx;
    if !(det.abs() > 1e-12 * sw * sxx) {
        return Err(NumericsError::SingularFit);
    }
    let slope = (sw * sxy - sx * sy) / det;
    let intercept = (sxx * sy - sx * sxy) / det;
    let residual = (rows
        .iter()
        .map(|&(x, y, w)| w * (y - intercept - slope * x).powi(2))
        .sum::<f64>()
        / sw)
        .sqrt();
    Ok(EreFit {
        a_s: -1.0 / intercept,
        r0: slope,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::geometric_grid;
    use crate::params::BranchTag;
    use crate::records::Method;

    fn synthetic(a: f64, r0: f64, ks: &[f64]) -> PhaseShiftCurve {
        let raw: Vec<f64> = ks
            .iter()
            .map(|&k| {
                let kcot = -1.0 / a + 0.5 * r0 * k * k;
                (k / kcot).atan().rem_euclid(PI)
            })
            .collect();
        PhaseShiftCurve::from_raw(ks, &raw, BranchTag::NegativeAs, Method::Analytic)
    }

    #[test]
    fn recovers_its_own_model() {
        let ks = geometric_grid(1e-4, 5e-2, 12);
        for (a, r0) in [(-50.0, 1.0), (100.0, 1.0), (-1000.0, 2.5)] {
            let fit = fit_effective_range(&synthetic(a, r0, &ks)).unwrap();
            assert!((fit.a_s / a - 1.0).abs() < 1e-10, "{fit:?}");
            assert!((fit.r0 / r0 - 1.0).abs() < 1e-10, "{fit:?}");
            assert!(fit.residual < 1e-12);
        }
    }

    #[test]
    fn preconditions() {
        let ks = geometric_grid(1e-4, 5e-2, 5);
        assert!(matches!(
            fit_effective_range(&synthetic(-50.0, 1.0, &ks)),
            Err(NumericsError::TooFewSamples { .. })
        ));
        let ks = geometric_grid(1e-4, 0.2, 10);
        assert!(matches!(
            fit_effective_range(&synthetic(-50.0, 1.0, &ks)),
            Err(NumericsError::SampleOutOfRange(_))
        ));
        let ks = [1e-3; 9];
        let c = PhaseShiftCurve {
            samples: ks.iter().map(|&k| (k, 0.3)).collect(),
            branch: BranchTag::NegativeAs,
            method: Method::Numerov,
        };
        assert!(matches!(fit_effective_range(&c), Err(NumericsError::SingularFit)));
        let mut c = synthetic(-50.0, 1.0, &geometric_grid(1e-4, 5e-2, 9));
        c.samples[3].1 = PI;
        assert!(matches!(fit_effective_range(&c), Err(NumericsError::PhaseAtMultipleOfPi(_))));
    }
}
