use super::numerov::{discrete_decay, guard_kappa, march, Step};
use super::{NumericsError, RadialGrid};
use crate::potentials::Potential;
use crate::records::{BoundState, Method};

/// The matching radius is where `|U|` first drops below this.
const MATCH_TOLERANCE: f64 = 1e-24;
const MISMATCH_TOL: f64 = 1e-10;
const MAX_ITER: usize = 400;
const NODE_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingOptions {
    pub spacing: f64,
    /// Distance between the two fit points beyond the matching radius.
    pub fit_span: f64,
}

impl Default for ShootingOptions {
    fn default() -> Self {
        Self {
            spacing: 1.0 / 200.0,
            fit_span: 2.0,
        }
    }
}

struct Shot {
    mismatch: f64,
    nodes: usize,
}

fn shooting_grid(pot: &Potential, opts: &ShootingOptions) -> Result<(RadialGrid, usize, usize), NumericsError> {
    let h = opts.spacing.min(0.04 / guard_kappa(pot));
    let r_m = pot.negligible_beyond(MATCH_TOLERANCE).max(10.0 * h);
    let grid = RadialGrid::with_spacing(r_m + opts.fit_span + 4.0 * h, h)?;
    let i1 = grid.nearest(r_m);
    let i2 = grid.nearest(r_m + opts.fit_span);
    Ok((grid, i1, i2))
}

// Fits u = A e^{-K r} + B e^{K r} at two nodes; the normalized growing part
// B e^{K r2} / (|A| e^{-K r2} + |B| e^{K r2}) changes sign at an eigenvalue.
fn shoot(pot: &Potential, kk: f64, grid: &RadialGrid, i1: usize, i2: usize) -> Shot {
    let (mut u1, mut u2) = (0.0, 0.0);
    let mut nodes = 0;
    let mut prev = 0.0f64;
    let mut peak = 0.0f64;
    march(pot, -kk * kk, grid, |s| match s {
        Step::Value(i, v) => {
            peak = peak.max(v.abs());
            // deep in the forbidden region a sign flip is roundoff, not a node
            let live = v.abs().max(prev.abs()) > NODE_FLOOR * peak;
            if i <= i1 && i > 1 && live && v != 0.0 && prev != 0.0 && v.signum() != prev.signum() {
                nodes += 1;
            }
            if v != 0.0 {
                prev = v;
            }
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
            prev *= f;
            peak *= f;
            true
        }
        Step::Free(_) => unreachable!("bound-state energies are negative"),
    });
    let kd = discrete_decay(kk, grid.spacing);
    let (r1, r2) = (grid.r(i1), grid.r(i2));
    // work relative to r2 to keep the exponentials bounded
    let (em1, ep1) = ((-kd * (r1 - r2)).exp(), (kd * (r1 - r2)).exp());
    let det = em1 - ep1;
    let a = (u1 - ep1 * u2) / det;
    let b = (em1 * u2 - u1) / det;
    let mismatch = b / (a.abs() + b.abs());
    Shot {
        mismatch: if mismatch.is_finite() { mismatch } else { 0.0 },
        nodes,
    }
}

/// Refines the single bound state with energy inside `bracket = (E_lo, E_hi)`,
/// both negative. Energies are in the `u'' = (U - E) u` convention.
pub fn shoot_bound_state(
    pot: &Potential,
    bracket: (f64, f64),
    opts: &ShootingOptions,
) -> Result<BoundState, NumericsError> {
    let (grid, i1, i2) = shooting_grid(pot, opts)?;
    let (e_lo, e_hi) = (bracket.0.min(bracket.1), bracket.0.max(bracket.1));
    let no_change = NumericsError::NoSignChange { lo: e_lo, hi: e_hi };
    if e_hi >= 0.0 {
        return Err(no_change);
    }
    // search in K = sqrt(-E), which spreads shallow states out
    let (mut k_a, mut k_b) = ((-e_hi).sqrt(), (-e_lo).sqrt());
    let mut m_a = shoot(pot, k_a, &grid, i1, i2).mismatch;
    let mut m_b = shoot(pot, k_b, &grid, i1, i2).mismatch;
    if m_a == 0.0 || m_b == 0.0 || m_a.signum() == m_b.signum() {
        return Err(no_change);
    }
    // Illinois false position with bisection fallback
    let mut side = 0i8;
    for _ in 0..MAX_ITER {
        let mut k = (k_a * m_b - k_b * m_a) / (m_b - m_a);
        if !(k > k_a.min(k_b) && k < k_a.max(k_b)) {
            k = 0.5 * (k_a + k_b);
        }
        let shot = shoot(pot, k, &grid, i1, i2);
        let m = shot.mismatch;
        let width = (k_b - k_a).abs();
        if m.abs() < MISMATCH_TOL || 2.0 * width * k < 1e-15 * k * k {
            let kappa = pot.params.kappa;
            return Ok(BoundState::new(k / kappa, kappa, Method::Numerov, shot.nodes));
        }
        if m.signum() == m_b.signum() {
            k_b = k;
            m_b = m;
            if side == 1 {
                m_a *= 0.5;
            }
            side = 1;
        } else {
            k_a = k;
            m_a = m;
            if side == -1 {
                m_b *= 0.5;
            }
            side = -1;
        }
    }
    Err(NumericsError::RootNotConverged { iterations: MAX_ITER })
}

/// All bound states with `E` in `(-depth, -1e-12 depth)`, deepest first.
pub fn find_bound_states(pot: &Potential, opts: &ShootingOptions) -> Result<Vec<BoundState>, NumericsError> {
    let depth = pot.depth();
    let (grid, i1, i2) = shooting_grid(pot, opts)?;
    let k_hi = depth.sqrt();
    let k_lo = (1e-12 * depth).sqrt();
    let n = 400;
    let ks = crate::exec::geometric_grid(k_lo, k_hi, n);
    let ms: Vec<f64> = ks.iter().map(|&k| shoot(pot, k, &grid, i1, i2).mismatch).collect();
    let mut out = Vec::new();
    for i in (1..n).rev() {
        if ms[i] != 0.0 && ms[i - 1] != 0.0 && ms[i].signum() != ms[i - 1].signum() {
            let e = (-(ks[i] * ks[i]), -(ks[i - 1] * ks[i - 1]));
            out.push(shoot_bound_state(pot, e, opts)?);
        }
    }
    Ok(out)
}

/// Bound-state count from the zero-energy solution: its nodes inside the
/// range of the potential, plus one if the straight-line tail crosses zero
/// further out.
pub fn zero_energy_node_count(pot: &Potential) -> Result<usize, NumericsError> {
    let h = 1.0 / 400.0f64.max(25.0 * guard_kappa(pot));
    let r_end = pot.negligible_beyond(MATCH_TOLERANCE).max(1.0);
    let grid = RadialGrid::with_spacing(r_end, h)?;
    let mut nodes = 0;
    let mut last = (0.0f64, 0.0f64);
    let mut prev = 0.0f64;
    march(pot, 0.0, &grid, |s| {
        match s {
            Step::Value(i, v) => {
                if i > 1 && prev != 0.0 && v != 0.0 && v.signum() != prev.signum() {
                    nodes += 1;
                }
                last = (prev, v);
                prev = v;
            }
            Step::Rescale(f) => {
                prev *= f;
            }
            Step::Free(_) => unreachable!("zero energy has no oscillating tail"),
        }
        true
    });
    let (u_prev, u_end) = last;
    let r = grid.r(grid.n_points - 1);
    let slope = (u_end - u_prev) / grid.spacing;
    // u = slope (r - a)
    let intercept = r - u_end / slope;
    if slope != 0.0 && intercept > r {
        nodes += 1;
    }
    Ok(nodes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::bound_states;
    use crate::params::{derive_params, DerivedParams, ScatteringParams};
    use crate::potentials::PotentialKind;

    fn dp(a: f64) -> DerivedParams {
        derive_params(&ScatteringParams::reduced(a).unwrap()).unwrap()
    }

    fn default_bracket(pot: &Potential) -> (f64, f64) {
        let depth = pot.depth();
        (-depth, -1e-12 * depth)
    }

    #[test]
    fn well_state_matches_closed_form() {
        let d = dp(50.0);
        let pot = Potential::new(PotentialKind::VZero, d).unwrap();
        let b = shoot_bound_state(&pot, default_bracket(&pot), &ShootingOptions::default()).unwrap();
        let want = bound_states(&d)[0].kbar;
        assert!((b.kbar - want).abs() < 1e-6, "{} vs {want}", b.kbar);
        assert_eq!(b.node_count, 0);
        assert_eq!(b.method, Method::Numerov);
    }

    #[test]
    fn full_potential_binding_wavenumber() {
        let d = dp(50.0);
        let pot = Potential::new(PotentialKind::VPlus, d).unwrap();
        let b = shoot_bound_state(&pot, default_bracket(&pot), &ShootingOptions::default()).unwrap();
        let want = 1.0 - 0.96f64.sqrt();
        assert!((b.wavenumber / want - 1.0).abs() < 0.02, "{}", b.wavenumber);
    }

    #[test]
    fn negative_branch_has_none() {
        for a in [-50.0, -100.0, -1000.0] {
            let pot = Potential::new(PotentialKind::VMinus, dp(a)).unwrap();
            let r = shoot_bound_state(&pot, default_bracket(&pot), &ShootingOptions::default());
            assert!(matches!(r, Err(NumericsError::NoSignChange { .. })));
            assert!(find_bound_states(&pot, &ShootingOptions::default()).unwrap().is_empty());
        }
    }

    #[test]
    fn levinson_count_matches_spectrum() {
        for (a, kind) in [
            (50.0, PotentialKind::VPlus),
            (50.0, PotentialKind::VZero),
            (-50.0, PotentialKind::VMinus),
            (-50.0, PotentialKind::VZero),
            (2.05, PotentialKind::VZero),
        ] {
            let pot = Potential::new(kind, dp(a)).unwrap();
            let states = find_bound_states(&pot, &ShootingOptions::default()).unwrap();
            let nodes = zero_energy_node_count(&pot).unwrap();
            assert_eq!(nodes, states.len(), "a={a} {kind:?}");
            for (i, s) in states.iter().enumerate() {
                assert_eq!(s.node_count, i, "a={a} {kind:?} {s:?}");
            }
        }
    }

    #[test]
    fn deep_well_spectrum_matches_closed_form() {
        let d = dp(2.05);
        let pot = Potential::new(PotentialKind::VZero, d).unwrap();
        let found = find_bound_states(&pot, &ShootingOptions::default()).unwrap();
        let want = bound_states(&d);
        assert_eq!(found.len(), want.len());
        for (f, w) in found.iter().zip(&want) {
            assert!((f.kbar - w.kbar).abs() < 1e-6);
        }
    }
}
