use num_complex::Complex64;

use super::numerov::{Normalization, RadialSolution};
use super::{NumericsError, RadialGrid};
use crate::analytic::{phase_shift_analytic, phi_outgoing, psi_regular, PhaseForm};
use crate::params::{Branch, DerivedParams};
use crate::potentials::{v_zero, Potential, PotentialKind};
use crate::records::mod_pi;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbativeOptions {
    /// Outer edge of the `rho = kappa r` grid.
    pub rho_max: f64,
    /// Target spacing in `rho`.
    pub step: f64,
}

impl Default for PerturbativeOptions {
    fn default() -> Self {
        Self {
            rho_max: 25.0,
            step: 0.005,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerturbativeSolution {
    pub rho: Vec<f64>,
    /// Final iterate; tends to `e^{i Delta} sin(kt rho + delta)`.
    pub psi: Vec<Complex64>,
    /// Phase shift of the well alone.
    pub delta0: f64,
    /// Full phase shift in `[0, pi)`.
    pub delta: f64,
    /// Sup-norm of successive iterate differences, one entry per iteration.
    pub differences: Vec<f64>,
    /// `Re(psi e^{-i Delta})` on the equivalent `r` grid, unit amplitude.
    pub radial: RadialSolution,
}

impl PerturbativeSolution {
    /// Ratios of successive iterate differences.
    pub fn contraction_ratios(&self) -> Vec<f64> {
        self.differences.windows(2).map(|w| w[1] / w[0]).collect()
    }
}

// Cumulative integral from the left, one Simpson panel per interval:
// h/12 (5 f_i + 8 f_{i+1} - f_{i+2}).
fn cumulative(f: &[Complex64], h: f64) -> Vec<Complex64> {
    let n = f.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for i in 0..n - 1 {
        let piece = if i + 2 < n {
            5.0 * f[i] + 8.0 * f[i + 1] - f[i + 2]
        } else {
            -f[i - 1] + 8.0 * f[i] + 5.0 * f[i + 1]
        };
        out[i + 1] = out[i] + piece * (h / 12.0);
    }
    out
}

/// Iterates `psi^{m+1} = psi0 + int G(rho, rho') S(rho') psi^m(rho') drho'`
/// where `S = (U_pm - U0) / kappa^2` and `G` is the Green function of the well.
pub fn solve_perturbative(
    d: &DerivedParams,
    k: f64,
    n_iter: usize,
    opts: &PerturbativeOptions,
) -> Result<PerturbativeSolution, NumericsError> {
    if n_iter == 0 {
        return Err(NumericsError::NoIterations);
    }
    if !(k.is_finite() && k > 0.0) {
        return Err(NumericsError::BadWavenumber(k));
    }
    if d.epsilon.abs() >= 0.2 {
        return Err(NumericsError::OutsidePerturbativeRegime(d.epsilon));
    }
    let branch = d.branch().unwrap_or(Branch::Negative);
    let full = Potential::new(
        match branch {
            Branch::Negative => PotentialKind::VMinus,
            Branch::Positive => PotentialKind::VPlus,
        },
        *d,
    )?;
    let lambda = d.lambda_on(branch);
    let kappa = d.kappa;
    let kt = k / kappa;

    let n = (opts.rho_max / opts.step).ceil() as usize + 1;
    let h = opts.rho_max / (n - 1) as f64;
    let rho: Vec<f64> = (0..n).map(|i| h * i as f64).collect();
    let psi0 = rho
        .iter()
        .map(|&x| psi_regular(x, lambda, kt))
        .collect::<Result<Vec<_>, _>>()
        .map_err(NumericsError::from)?;
    let phi = rho
        .iter()
        .map(|&x| phi_outgoing(x, lambda, kt))
        .collect::<Result<Vec<_>, _>>()
        .map_err(NumericsError::from)?;
    let source: Vec<f64> = rho
        .iter()
        .map(|&x| {
            let r = x / kappa;
            (full.at(r) - v_zero(r, d)) / (kappa * kappa)
        })
        .collect();

    let mut psi = psi0.clone();
    let mut differences = Vec::with_capacity(n_iter);
    let mut total = Complex64::new(0.0, 0.0);
    for step in 0..n_iter {
        let inner: Vec<Complex64> = (0..n).map(|i| psi0[i] * source[i] * psi[i]).collect();
        let outer: Vec<Complex64> = (0..n).map(|i| phi[i] * source[i] * psi[i]).collect();
        let left = cumulative(&inner, h);
        let right_cum = cumulative(&outer, h);
        let right_total = right_cum[n - 1];
        total = left[n - 1];
        let next: Vec<Complex64> = (0..n)
            .map(|i| psi0[i] + (phi[i] * left[i] + psi0[i] * (right_total - right_cum[i])) / kt)
            .collect();
        let diff = next
            .iter()
            .zip(&psi)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if let Some(&prev) = differences.last() {
            if diff > prev && diff > 1e-14 {
                return Err(NumericsError::Diverging {
                    step: step + 1,
                    previous: prev,
                    current: diff,
                });
            }
        }
        differences.push(diff);
        psi = next;
    }
    // psi -> sin(theta) - (T/kt) e^{i theta} = e^{i Delta} sin(theta + Delta)
    let t = Complex64::new(1.0, 0.0) - Complex64::new(0.0, 2.0) * total / kt;
    let shift = 0.5 * t.arg();
    let delta0 = phase_shift_analytic(k, lambda, kappa, PhaseForm::GammaForm)?;
    let delta = mod_pi(delta0 + shift);

    let rot = Complex64::from_polar(1.0, -shift);
    let grid = RadialGrid::new(opts.rho_max / kappa, n)?;
    let radial = RadialSolution {
        grid,
        u: psi.iter().map(|p| (p * rot).re).collect(),
        k,
        normalization: Normalization::UnitAmplitude,
        potential: full,
    };
    Ok(PerturbativeSolution {
        rho,
        psi,
        delta0,
        delta,
        differences,
        radial,
    })
}
