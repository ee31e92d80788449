use serde::{Deserialize, Serialize};

use super::{NumericsError, RadialGrid};
use crate::potentials::Potential;

/// Below this size the potential is treated as exactly zero by the integrator.
pub(crate) const POTENTIAL_CUTOFF: f64 = 1e-30;
const RENORM_AT: f64 = 1e100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// As integrated: `u(h) = h`.
    Raw,
    /// Asymptotic amplitude 1.
    UnitAmplitude,
    /// Asymptotic amplitude `sqrt(2 / (pi k))`.
    EnergyNormalized,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialSolution {
    pub grid: RadialGrid,
    pub u: Vec<f64>,
    pub k: f64,
    pub normalization: Normalization,
    pub potential: Potential,
}

pub(crate) enum Step {
    Value(usize, f64),
    /// Every value reported so far should be multiplied by this factor.
    Rescale(f64),
    /// All later nodes follow in closed form; the march ends here.
    Free(FreeTail),
}

/// Numerov march of `u'' = (U(r) - energy) u` from `u(0) = 0`, `u(h) = h`.
///
/// `sink` sees every node in order and returns `false` to stop early.
pub(crate) fn march(
    pot: &Potential,
    energy: f64,
    grid: &RadialGrid,
    mut sink: impl FnMut(Step) -> bool,
) {
    let h = grid.spacing;
    let c = h * h / 12.0;
    let cut = pot.negligible_beyond(POTENTIAL_CUTOFF);
    let f = |r: f64| if r > cut { -energy } else { pot.at(r) - energy };

    let u0 = 0.0;
    let mut f_cur = f(h);
    let mut u_cur = h;
    let mut w_cur = (1.0 - c * f_cur) * u_cur;
    // w_cur - w_prev, carried directly: near a zero-energy resonance the
    // slope is many orders below the value and re-differencing loses it.
    let mut dw = w_cur;
    if !sink(Step::Value(0, u0)) || !sink(Step::Value(1, u_cur)) {
        return;
    }
    for i in 2..grid.n_points {
        if energy > 0.0 && grid.r(i - 2) > cut {
            let du = dw / (1.0 + c * energy);
            sink(Step::Free(FreeTail::new(energy, h, i - 1, u_cur, du)));
            return;
        }
        dw += h * h * f_cur * u_cur;
        w_cur += dw;
        let f_next = f(grid.r(i));
        u_cur = w_cur / (1.0 - c * f_next);
        f_cur = f_next;
        if !sink(Step::Value(i, u_cur)) {
            return;
        }
        if u_cur.abs() > RENORM_AT {
            let s = 1.0 / RENORM_AT;
            dw *= s;
            w_cur *= s;
            u_cur *= s;
            if !sink(Step::Rescale(s)) {
                return;
            }
        }
    }
}

/// Closed-form continuation of the march where `U` is exactly zero and
/// `E > 0`: there the recursion reads `u_{n+1} = 2 cos(k' h) u_n - u_{n-1}`.
/// Stepping instead loses about `1/(k h)` ulps per node at small `k`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct FreeTail {
    n0: usize,
    a: f64,
    b: f64,
    th: f64,
}

impl FreeTail {
    /// `du = u_at - u_before`, passed separately to keep its precision.
    fn new(energy: f64, h: f64, n0: usize, u_at: f64, du: f64) -> Self {
        let th = discrete_wavenumber(energy.sqrt(), h) * h;
        let half = (0.5 * th).sin();
        Self {
            n0,
            a: u_at,
            b: (du - 2.0 * half * half * u_at) / th.sin(),
            th,
        }
    }

    /// Last node produced by stepping; the tail covers every later node.
    pub(crate) fn start(&self) -> usize {
        self.n0
    }

    pub(crate) fn value(&self, i: usize) -> f64 {
        let (s, c) = (self.th * (i as f64 - self.n0 as f64)).sin_cos();
        self.a * c + self.b * s
    }
}

/// Full stored Numerov solution at wavenumber `k`.
pub fn integrate_radial(
    pot: &Potential,
    k: f64,
    grid: &RadialGrid,
) -> Result<RadialSolution, NumericsError> {
    if !(k.is_finite() && k > 0.0) {
        return Err(NumericsError::BadWavenumber(k));
    }
    grid.check_guards(k, guard_kappa(pot))?;
    let mut u = Vec::with_capacity(grid.n_points);
    march(pot, k * k, grid, |s| {
        match s {
            Step::Value(_, v) => u.push(v),
            Step::Rescale(f) => u.iter_mut().for_each(|x| *x *= f),
            Step::Free(t) => u.extend((t.start() + 1..grid.n_points).map(|i| t.value(i))),
        }
        true
    });
    Ok(RadialSolution {
        grid: *grid,
        u,
        k,
        normalization: Normalization::Raw,
        potential: *pot,
    })
}

/// Inverse range used by the resolution guard.
pub(crate) fn guard_kappa(pot: &Potential) -> f64 {
    match pot.kind {
        crate::potentials::PotentialKind::VInfinity => 2.0,
        _ => pot.params.kappa,
    }
}

/// Wavenumber seen by the free Numerov recursion:
/// `cos(k' h) = (1 - 5 h^2 k^2 / 12) / (1 + h^2 k^2 / 12)`.
pub(crate) fn discrete_wavenumber(k: f64, h: f64) -> f64 {
    // 1 - cos = 6x / (1 + x), in half-angle form to keep small k accurate
    let x = h * h * k * k / 12.0;
    2.0 * (3.0 * x / (1.0 + x)).sqrt().asin() / h
}

/// Decay constant seen by the Numerov recursion in a forbidden region:
/// `cosh(K' h) = (1 + 5 h^2 K^2 / 12) / (1 - h^2 K^2 / 12)`.
pub(crate) fn discrete_decay(kk: f64, h: f64) -> f64 {
    let x = h * h * kk * kk / 12.0;
    2.0 * (3.0 * x / (1.0 - x)).sqrt().asinh() / h
}
