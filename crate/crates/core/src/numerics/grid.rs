use serde::{Deserialize, Serialize};

use std::f64::consts::{FRAC_PI_4, PI};

use super::{MatchingRadii, NumericsError};

/// Uniform radial grid `r_i = i h`, `i = 0..n_points`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    pub r_max: f64,
    pub n_points: usize,
    pub spacing: f64,
}

impl RadialGrid {
    pub fn new(r_max: f64, n_points: usize) -> Result<Self, NumericsError> {
        if !(r_max.is_finite() && r_max > 0.0) || n_points < 3 {
            return Err(NumericsError::BadGrid { r_max, n_points });
        }
        Ok(Self {
            r_max,
            n_points,
            spacing: r_max / (n_points - 1) as f64,
        })
    }

    /// Grid with spacing close to `h` reaching at least `r_max`.
    pub fn with_spacing(r_max: f64, h: f64) -> Result<Self, NumericsError> {
        let n = (r_max / h).ceil() as usize + 1;
        Self::new(r_max, n)
    }

    /// `r_max = max(40, 10/k, 10/kappa)`, `h = min(1/400, 1/(20 k))`.
    ///
    /// `r_max` is then stretched so the default matching nodes sit at least a
    /// quarter period away from being half a wavelength apart.
    pub fn default_for(k: f64, kappa: f64) -> Result<Self, NumericsError> {
        if !(k.is_finite() && k > 0.0) {
            return Err(NumericsError::BadWavenumber(k));
        }
        let mut r_max = 40f64.max(10.0 / k).max(10.0 / kappa);
        let m = MatchingRadii::default();
        let span = m.r2_frac - m.r1_frac;
        let gap = k * span * r_max;
        let turns = (gap / PI).floor();
        let rem = gap - turns * PI;
        if !(FRAC_PI_4..=3.0 * FRAC_PI_4).contains(&rem) {
            let target = if rem < FRAC_PI_4 { turns + 0.5 } else { turns + 1.5 } * PI;
            r_max = target / (k * span);
        }
        let h = (1.0 / 400.0f64).min(1.0 / (20.0 * k));
        Self::with_spacing(r_max, h)
    }

    pub fn r(&self, i: usize) -> f64 {
        self.spacing * i as f64
    }

    /// Index of the node nearest to `r`.
    pub fn nearest(&self, r: f64) -> usize {
        ((r / self.spacing).round() as usize).min(self.n_points - 1)
    }

    /// `h k < 0.1`, `h kappa < 0.05` and `r_max >= max(10/kappa, 3/k)`.
    pub fn check_guards(&self, k: f64, kappa: f64) -> Result<(), NumericsError> {
        let h = self.spacing;
        if h * k >= 0.1 || h * kappa >= 0.05 {
            return Err(NumericsError::ResolutionGuard {
                h,
                hk: h * k,
                hkappa: h * kappa,
            });
        }
        let required = (10.0 / kappa).max(if k > 0.0 { 3.0 / k } else { 0.0 });
        if self.r_max < required {
            return Err(NumericsError::GridTooShort {
                r_max: self.r_max,
                required,
            });
        }
        Ok(())
    }
}
