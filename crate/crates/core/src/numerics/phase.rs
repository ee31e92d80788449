use std::f64::consts::PI;

use super::numerov::{discrete_wavenumber, guard_kappa, march, Normalization, RadialSolution, Step};
use super::{NumericsError, PhaseShiftCurve, RadialGrid};
use crate::exec::{try_map_grid, Execution};
use crate::potentials::Potential;
use crate::records::{mod_pi, Method};

/// `|U|` must be below this at both matching radii.
pub const TAIL_TOLERANCE: f64 = 1e-12;

/// Matching radii as fractions of `r_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchingRadii {
    pub r1_frac: f64,
    pub r2_frac: f64,
}

impl Default for MatchingRadii {
    fn default() -> Self {
        Self {
            r1_frac: 0.7,
            r2_frac: 0.9,
        }
    }
}

struct Match {
    delta: f64,
    amplitude: f64,
}

fn check_matching(pot: &Potential, k: f64, r1: f64, r2: f64) -> Result<(), NumericsError> {
    for r in [r1, r2] {
        let u = pot.at(r).abs();
        if u >= TAIL_TOLERANCE {
            return Err(NumericsError::TailNotFree { r, u });
        }
    }
    let x = k * (r2 - r1) / PI;
    if (x - x.round()).abs() * PI < 0.1 {
        return Err(NumericsError::DegenerateMatching { k, r1, r2 });
    }
    Ok(())
}

// u = C sin(k' r) + S cos(k' r) through two nodes; delta = atan2(S, C).
fn two_point(k: f64, h: f64, r1: f64, u1: f64, r2: f64, u2: f64) -> Match {
    let kh = discrete_wavenumber(k, h);
    let (s1, c1) = (kh * r1).sin_cos();
    let (s2, c2) = (kh * r2).sin_cos();
    let det = s1 * c2 - c1 * s2;
    let cc = (u1 * c2 - c1 * u2) / det;
    let ss = (s1 * u2 - u1 * s2) / det;
    Match {
        delta: mod_pi(ss.atan2(cc)),
        amplitude: cc.hypot(ss),
    }
}

fn matching_nodes(grid: &RadialGrid, radii: MatchingRadii) -> (usize, usize) {
    (
        grid.nearest(radii.r1_frac * grid.r_max),
        grid.nearest(radii.r2_frac * grid.r_max),
    )
}

fn match_solution(sol: &RadialSolution, radii: MatchingRadii) -> Result<Match, NumericsError> {
    let (i1, i2) = matching_nodes(&sol.grid, radii);
    let (r1, r2) = (sol.grid.r(i1), sol.grid.r(i2));
    check_matching(&sol.potential, sol.k, r1, r2)?;
    Ok(two_point(sol.k, sol.grid.spacing, r1, sol.u[i1], r2, sol.u[i2]))
}

/// Phase shift in `[0, pi)` from the default matching radii.
pub fn extract_phase_shift(sol: &RadialSolution) -> Result<f64, NumericsError> {
    extract_phase_shift_at(sol, MatchingRadii::default())
}

pub fn extract_phase_shift_at(sol: &RadialSolution, radii: MatchingRadii) -> Result<f64, NumericsError> {
    Ok(match_solution(sol, radii)?.delta)
}

/// Rescales a solution to asymptotic amplitude `sqrt(2 / (pi k))`.
pub fn energy_normalize(sol: &RadialSolution) -> Result<RadialSolution, NumericsError> {
    let m = match_solution(sol, MatchingRadii::default())?;
    let scale = (2.0 / (PI * sol.k)).sqrt() / m.amplitude;
    let mut out = sol.clone();
    out.u.iter_mut().for_each(|x| *x *= scale);
    out.normalization = Normalization::EnergyNormalized;
    Ok(out)
}

/// Phase shift without storing the solution; `grid` defaults to
/// [`RadialGrid::default_for`].
pub fn numerov_phase_shift(
    pot: &Potential,
    k: f64,
    grid: Option<RadialGrid>,
    radii: MatchingRadii,
) -> Result<f64, NumericsError> {
    let kappa = guard_kappa(pot);
    let grid = match grid {
        Some(g) => g,
        None => RadialGrid::default_for(k, kappa)?,
    };
    grid.check_guards(k, kappa)?;
    let (i1, i2) = matching_nodes(&grid, radii);
    let (r1, r2) = (grid.r(i1), grid.r(i2));
    check_matching(pot, k, r1, r2)?;
    let (mut u1, mut u2) = (0.0, 0.0);
    march(pot, k * k, &grid, |s| match s {
        Step::Value(i, v) => {
            if i == i1 {
                u1 = v;
            }
            if i == i2 {
                u2 = v;
                return false;
            }
            true
        }
        Step::Rescale(f) => {
            u1 *= f;
            true
        }
        Step::Free(t) => {
            if i1 > t.start() {
                u1 = t.value(i1);
            }
            u2 = t.value(i2);
            false
        }
    });
    Ok(two_point(k, grid.spacing, r1, u1, r2, u2).delta)
}

/// Numerov phase shifts over a k grid, unwrapped into a continuous curve.
pub fn numerov_phase_curve(
    pot: &Potential,
    ks: &[f64],
    exec: Execution,
) -> Result<PhaseShiftCurve, NumericsError> {
    let raw = try_map_grid(ks, exec, |&k| numerov_phase_shift(pot, k, None, MatchingRadii::default()))?;
    Ok(PhaseShiftCurve::from_raw(ks, &raw, pot.params.sign, Method::Numerov))
}

/// Where the tangent of `sin(k r + delta)` taken at `r` crosses zero.
pub fn asymptotic_intercept(k: f64, delta: f64, r: f64) -> f64 {
    r - (k * r + delta).tan() / k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{phase_shift_analytic, PhaseForm};
    use crate::numerics::integrate_radial;
    use crate::params::{derive_params, Branch, DerivedParams, ScatteringParams};
    use crate::potentials::PotentialKind;

    fn dp(a: f64) -> DerivedParams {
        derive_params(&ScatteringParams::reduced(a).unwrap()).unwrap()
    }

    fn unitarity() -> DerivedParams {
        derive_params(&ScatteringParams::unitarity(1.0).unwrap()).unwrap()
    }

    #[test]
    fn free_particle_has_zero_phase() {
        let pot = Potential::new(PotentialKind::Free, dp(-50.0)).unwrap();
        for k in [0.01, 0.3] {
            let d = numerov_phase_shift(&pot, k, None, MatchingRadii::default()).unwrap();
            assert!(d.min(PI - d) < 1e-10, "{d}");
        }
    }

    #[test]
    fn unitarity_well_matches_analytic() {
        let d = unitarity();
        let pot = Potential::with_branch(PotentialKind::VZero, d, Branch::Negative).unwrap();
        let k = 0.01;
        let num = numerov_phase_shift(&pot, k, None, MatchingRadii::default()).unwrap();
        let ana = phase_shift_analytic(k, 1.0, d.kappa, PhaseForm::GammaForm).unwrap();
        assert!((num - ana).abs() < 1e-6, "{num} vs {ana}");
    }

    #[test]
    fn stored_and_streaming_agree() {
        let pot = Potential::new(PotentialKind::VMinus, dp(-50.0)).unwrap();
        let k = 0.05;
        let grid = RadialGrid::default_for(k, pot.params.kappa).unwrap();
        let sol = integrate_radial(&pot, k, &grid).unwrap();
        let a = extract_phase_shift(&sol).unwrap();
        let b = numerov_phase_shift(&pot, k, Some(grid), MatchingRadii::default()).unwrap();
        assert!((a - b).abs() < 1e-13);
    }

    #[test]
    fn wigner_regime_sign() {
        let d = dp(-1000.0);
        let pot = Potential::new(PotentialKind::VZero, d).unwrap();
        let k = 1e-4;
        let delta = numerov_phase_shift(&pot, k, None, MatchingRadii::default()).unwrap();
        assert!(delta < PI / 2.0);
        let ana = phase_shift_analytic(k, d.lambda1, d.kappa, PhaseForm::GammaForm).unwrap();
        assert!((delta - ana).abs() < 1e-6, "{delta} vs {ana}");
        assert!((-delta.tan() / k - -ana.tan() / k).abs() < 0.01 * (ana.tan() / k).abs());
    }

    #[test]
    fn bound_state_pushes_phase_near_pi() {
        let pot = Potential::new(PotentialKind::VPlus, dp(50.0)).unwrap();
        let delta = numerov_phase_shift(&pot, 1e-3, None, MatchingRadii::default()).unwrap();
        assert!(delta > 0.9 * PI, "{delta}");
    }

    #[test]
    fn matching_errors() {
        let pot = Potential::new(PotentialKind::VZero, dp(-50.0)).unwrap();
        let grid = RadialGrid::new(4.0, 801).unwrap();
        let sol = integrate_radial(&pot, 1.0, &grid);
        assert!(sol.is_err(), "r_max below 10/kappa is rejected");
        let grid = RadialGrid::new(12.0, 2401).unwrap();
        let sol = integrate_radial(&pot, 1.0, &grid).unwrap();
        assert!(matches!(
            extract_phase_shift_at(&sol, MatchingRadii { r1_frac: 0.05, r2_frac: 0.9 }),
            Err(NumericsError::TailNotFree { .. })
        ));
        // k (r2 - r1) = pi
        let k = PI / (0.2 * 40.0);
        let grid = RadialGrid::new(40.0, 8001).unwrap();
        let sol = integrate_radial(&pot, k, &grid).unwrap();
        assert!(matches!(extract_phase_shift(&sol), Err(NumericsError::DegenerateMatching { .. })));
    }

    #[test]
    fn energy_normalized_amplitude() {
        let pot = Potential::new(PotentialKind::VMinus, dp(-100.0)).unwrap();
        let k = 0.01;
        let grid = RadialGrid::default_for(k, pot.params.kappa).unwrap();
        let sol = energy_normalize(&integrate_radial(&pot, k, &grid).unwrap()).unwrap();
        let tail: Vec<f64> = sol.u[grid.nearest(0.5 * grid.r_max)..].to_vec();
        let peak = tail.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        assert!((peak / (2.0 / (PI * k)).sqrt() - 1.0).abs() < 1e-4);
        // mean of |u|^2 over a whole period is half the squared amplitude
        let period = (PI / k / grid.spacing).round() as usize;
        let start = grid.nearest(0.2 * grid.r_max);
        let mean: f64 = sol.u[start..start + period].iter().map(|x| x * x).sum::<f64>() / period as f64;
        assert!((mean / (1.0 / (PI * k)) - 1.0).abs() < 5e-3);
    }

    #[test]
    fn intercept_of_tangent() {
        // sin(k r + delta) with delta = -k a has its node at r = a for small k
        let (k, a) = (1e-4, 37.0);
        let x = asymptotic_intercept(k, -k * a, 1.0);
        assert!((x - a).abs() < 1e-3);
    }
}
