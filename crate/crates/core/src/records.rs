//! Result records shared by the analytic and numerical solvers.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::params::BranchTag;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Analytic,
    Numerov,
    Perturbative,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Analytic => "analytic",
            Method::Numerov => "numerov",
            Method::Perturbative => "perturbative",
        }
    }
}

/// A bound state in units where `hbar^2 / (2 mu) = 1`, so `E = -(kappa kbar)^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundState {
    /// Binding wavenumber in units of `kappa`.
    pub kbar: f64,
    /// `|k| = kappa kbar`.
    pub wavenumber: f64,
    pub energy: f64,
    pub method: Method,
    pub node_count: usize,
}

impl BoundState {
    pub fn new(kbar: f64, kappa: f64, method: Method, node_count: usize) -> Self {
        let wavenumber = kappa * kbar;
        Self {
            kbar,
            wavenumber,
            energy: -wavenumber * wavenumber,
            method,
            node_count,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseShiftCurve {
    /// `(k, delta)` pairs, `k` strictly increasing.
    pub samples: Vec<(f64, f64)>,
    pub branch: BranchTag,
    pub method: Method,
}

impl PhaseShiftCurve {
    /// Builds a curve from raw phases, unwrapping jumps of `pi` between neighbours.
    pub fn from_raw(ks: &[f64], raw: &[f64], branch: BranchTag, method: Method) -> Self {
        let deltas = unwrap_phases(raw);
        Self {
            samples: ks.iter().copied().zip(deltas).collect(),
            branch,
            method,
        }
    }

    pub fn ks(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.0)
    }

    pub fn deltas(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.1)
    }

    /// True when `k` increases strictly and no neighbouring phases differ by more than `pi/2`.
    pub fn is_well_formed(&self) -> bool {
        self.samples
            .windows(2)
            .all(|w| w[1].0 > w[0].0 && (w[1].1 - w[0].1).abs() <= PI / 2.0)
    }
}

/// Removes `pi` jumps from a sequence of phases defined modulo `pi`.
/// The first value is kept as is.
pub fn unwrap_phases(raw: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(raw.len());
    let mut offset = 0.0;
    let mut prev: Option<f64> = None;
    for &d in raw {
        if let Some(p) = prev {
            let step = d + offset - p;
            offset -= PI * (step / PI).round();
        }
        let v = d + offset;
        out.push(v);
        prev = Some(v);
    }
    out
}

/// Reduce an angle into `[0, pi)`.
pub fn mod_pi(x: f64) -> f64 {
    let r = x.rem_euclid(PI);
    if r >= PI {
        0.0
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unwrap_removes_pi_jumps() {
        let raw = [3.1, 0.02, 0.05, 3.13];
        let u = unwrap_phases(&raw);
        assert!((u[1] - (0.02 + PI)).abs() < 1e-15);
        assert!((u[3] - 3.13).abs() < 1e-15);
        let c = PhaseShiftCurve::from_raw(&[1.0, 2.0, 3.0, 4.0], &raw, BranchTag::PositiveAs, Method::Analytic);
        assert!(c.is_well_formed());
    }

    #[test]
    fn bound_state_energy() {
        let b = BoundState::new(0.5, 2.0, Method::Analytic, 0);
        assert_eq!(b.wavenumber, 1.0);
        assert_eq!(b.energy, -1.0);
    }

    #[test]
    fn mod_pi_range() {
        for x in [-7.0, -PI, 0.0, 1.0, PI, 10.0] {
            let r = mod_pi(x);
            assert!((0.0..PI).contains(&r));
        }
    }
}
