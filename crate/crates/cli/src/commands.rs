//! The work behind each subcommand; everything returns a [`Document`].
//!
//! Lengths are in the unit of `r0`, wavenumbers in its inverse, and
//! potentials and energies in `hbar^2 / (2 mu r0^2)`.

use std::f64::consts::PI;

use jostkohn::analytic::{bound_states, phase_shift_analytic, PhaseForm};
use jostkohn::exec::{try_map_grid, Execution};
use jostkohn::feshbach::{map_to_scattering, validity_report};
use jostkohn::numerics::{
    asymptotic_intercept, energy_normalize, extract_phase_shift, find_bound_states, integrate_radial,
    numerov_phase_shift, MatchingRadii, RadialGrid, ShootingOptions,
};
use jostkohn::params::{derive_params, Branch, DerivedParams};
use jostkohn::potentials::{Potential, PotentialKind};
use jostkohn::records::unwrap_phases;

use crate::config::{
    BoundStatesJob, FeshbachJob, Job, KindArg, PhaseShiftJob, PotentialJob, RunConfig,
    ScatteringInput, WavefunctionJob, WellArg,
};
use crate::criteria;
use crate::error::{CliError, Result};
use crate::output::{Document, Table};

/// Finest Numerov step used for tabulated wavefunctions, in `r0`.
const WAVEFUNCTION_STEP: f64 = 1.0 / 200.0;

pub fn run(cfg: &RunConfig) -> Result<Document> {
    cfg.validate()?;
    match &cfg.job {
        Job::Potential(j) => potential(j),
        Job::Wavefunction(j) => wavefunction(j),
        Job::PhaseShift(j) => phase_shift(j),
        Job::BoundStates(j) => bound_state_table(j),
        Job::Feshbach(j) => feshbach(j),
        Job::Validate(j) => Ok(criteria::run_all(j.inject_fault).to_document()),
    }
}

fn derived(a: ScatteringInput, r0: f64) -> Result<DerivedParams> {
    Ok(derive_params(&a.params(r0)?)?)
}

fn full_kind(branch: Branch) -> PotentialKind {
    match branch {
        Branch::Negative => PotentialKind::VMinus,
        Branch::Positive => PotentialKind::VPlus,
    }
}

fn kind_label(kind: KindArg, branch: Branch) -> &'static str {
    match kind {
        KindArg::Full => match branch {
            Branch::Negative => "v_minus",
            Branch::Positive => "v_plus",
        },
        KindArg::Minus => "v_minus",
        KindArg::Plus => "v_plus",
        KindArg::Zero => "v_zero",
        KindArg::Infinity => "v_infinity",
        KindArg::Series => "v_series",
    }
}

fn potential(j: &PotentialJob) -> Result<Document> {
    let d = derived(j.a_s, j.r0)?;
    let branch = j.a_s.branch();
    let mut pots = Vec::new();
    for &kind in &j.kinds {
        let pk = match kind {
            KindArg::Full => full_kind(branch),
            KindArg::Minus => PotentialKind::VMinus,
            KindArg::Plus => PotentialKind::VPlus,
            KindArg::Zero => PotentialKind::VZero,
            KindArg::Infinity => PotentialKind::VInfinity,
            KindArg::Series => PotentialKind::VEpsilonSeries { n_max: j.n_max },
        };
        let series_branch = match pk {
            PotentialKind::VMinus => Branch::Negative,
            PotentialKind::VPlus => Branch::Positive,
            _ => branch,
        };
        let p = Potential::with_branch(pk, d, series_branch)
            .map_err(|e| CliError::Usage(format!("{}: {e}", kind_label(kind, branch))))?;
        pots.push((kind_label(kind, branch), p));
    }
    let mut columns = vec!["r"];
    columns.extend(pots.iter().map(|(l, _)| *l));
    let mut doc = Document::new("potential", &columns)
        .meta("a_s", j.a_s)
        .meta("r0", j.r0)
        .meta("alpha", d.alpha)
        .meta("kappa", d.kappa / j.r0)
        .meta("epsilon", d.epsilon)
        .meta("energy_unit", "hbar^2/(2 mu r0^2)");
    let mut t = Table::new(format!("a_s={}", j.a_s));
    for r in j.r_grid.points() {
        let x = r / j.r0;
        let mut row = vec![r.into()];
        for (_, p) in &pots {
            row.push(p.value(x)?.into());
        }
        t.rows.push(row);
    }
    doc.tables.push(t);
    Ok(doc)
}

struct Wave {
    delta: f64,
    /// Reduced-unit grid and solution.
    r: Vec<f64>,
    u: Vec<f64>,
}

// Energy-normalized Numerov solution whose nodes include every output radius.
fn wave(d: DerivedParams, kind: PotentialKind, k: f64, r_out: f64, n_out: usize) -> Result<(Wave, usize)> {
    let pot = Potential::new(kind, d)?;
    let h_out = r_out / (n_out - 1) as f64;
    let stride = (h_out / WAVEFUNCTION_STEP).ceil().max(1.0) as usize;
    let h = h_out / stride as f64;
    let base = RadialGrid::default_for(k, d.kappa)?;
    let span = base.r_max.max(r_out);
    let n = (span / h).ceil() as usize + 1;
    let grid = RadialGrid::with_spacing((n - 1) as f64 * h, h)?;
    let sol = integrate_radial(&pot, k, &grid)?;
    let delta = extract_phase_shift(&sol)?;
    let sol = energy_normalize(&sol)?;
    let r = (0..grid.n_points).map(|i| grid.r(i)).collect();
    Ok((Wave { delta, r, u: sol.u }, stride))
}

fn wavefunction(j: &WavefunctionJob) -> Result<Document> {
    let k = j.k * j.r0;
    let mut doc = Document::new("wavefunction", &["r", "u", "u_squared"])
        .meta("k", j.k)
        .meta("r0", j.r0)
        .meta("normalization", "u -> sqrt(2/(pi k)) sin(k r + delta)");
    let r_out = j.r_grid.r_max / j.r0;
    for &a in &j.a_s {
        let d = derived(a, j.r0)?;
        let (w, stride) = wave(d, full_kind(a.branch()), k, r_out, j.r_grid.r_points)?;
        let a_phys = a.finite().expect("validated finite");
        let intercept = asymptotic_intercept(k, w.delta, 1.0) * j.r0;
        // Read off the same outside-range form as the intercept: sin(k r + delta)
        // at r = r0 heads towards the axis when u u' < 0. The full solution is
        // still inside the potential tail there and rises on both branches.
        let phase = k + w.delta;
        let bend = if phase.sin() * phase.cos() < 0.0 { "towards_axis" } else { "away_from_axis" };
        let i0 = (1.0 / (w.r[1] - w.r[0])).round() as usize;
        let slope = (w.u[i0 + 1] - w.u[i0 - 1]) / (w.r[i0 + 1] - w.r[i0 - 1]);
        let mut t = Table::new(format!("a_s={a}"))
            .meta("a_s", a)
            .meta("delta", w.delta)
            .meta("intercept", intercept)
            .meta("intercept_over_a_s", intercept / a_phys)
            .meta("bend_at_r0", bend)
            .meta("slope_at_r0", slope / j.r0);
        for i in 0..j.r_grid.r_points {
            let u = w.u[i * stride];
            t.rows.push(vec![(w.r[i * stride] * j.r0).into(), u.into(), (u * u).into()]);
        }
        doc.tables.push(t);
    }
    Ok(doc)
}

fn phase_shift(j: &PhaseShiftJob) -> Result<Document> {
    let mut columns = vec!["k"];
    if j.method.analytic() {
        columns.push("delta_over_pi_analytic");
    }
    if j.method.numerov() {
        columns.push("delta_over_pi_numerov");
    }
    let mut doc = Document::new("phase-shift", &columns)
        .meta("r0", j.r0)
        .meta("well", j.well)
        .meta("method", j.method);
    let ks_phys = j.k_grid.points();
    let ks: Vec<f64> = ks_phys.iter().map(|k| k * j.r0).collect();
    for &a in &j.a_s {
        let d = derived(a, j.r0)?;
        let branch = a.branch();
        let mut cols: Vec<Vec<f64>> = Vec::new();
        if j.method.analytic() {
            let lambda = d.lambda_on(branch);
            let raw = try_map_grid(&ks, Execution::default(), |&k| {
                phase_shift_analytic(k, lambda, d.kappa, PhaseForm::GammaForm)
            })?;
            cols.push(raw);
        }
        if j.method.numerov() {
            let kind = match j.well {
                WellArg::Zero => PotentialKind::VZero,
                WellArg::Full => full_kind(branch),
            };
            let pot = Potential::with_branch(kind, d, branch)?;
            let raw = try_map_grid(&ks, Execution::default(), |&k| {
                numerov_phase_shift(&pot, k, None, MatchingRadii::default())
            })?;
            cols.push(raw);
        }
        // both columns share the first column's unwrapping so they stay comparable
        let reference = unwrap_phases(&cols[0]);
        let cols: Vec<Vec<f64>> = cols
            .iter()
            .map(|c| {
                c.iter()
                    .zip(&reference)
                    .map(|(&x, &r)| x + PI * ((r - x) / PI).round())
                    .collect()
            })
            .collect();
        let mut t = Table::new(format!("a_s={a}")).meta("a_s", a).meta("branch", branch);
        for (i, &k) in ks_phys.iter().enumerate() {
            let mut row = vec![k.into()];
            row.extend(cols.iter().map(|c| (c[i] / PI).into()));
            t.rows.push(row);
        }
        doc.tables.push(t);
    }
    Ok(doc)
}

fn bound_state_table(j: &BoundStatesJob) -> Result<Document> {
    let mut doc = Document::new(
        "bound-states",
        &["potential", "method", "n", "kbar", "wavenumber", "energy", "nodes"],
    )
    .meta("r0", j.r0)
    .meta("energy_unit", "hbar^2/(2 mu r0^2)");
    for &a in &j.a_s {
        let d = derived(a, j.r0)?;
        let branch = a.branch();
        let mut t = Table::new(format!("a_s={a}")).meta("a_s", a);
        let mut push = |pot: &str, states: &[jostkohn::records::BoundState]| {
            for (n, s) in states.iter().enumerate() {
                t.rows.push(vec![
                    pot.into(),
                    s.method.as_str().into(),
                    n.into(),
                    s.kbar.into(),
                    (s.wavenumber / j.r0).into(),
                    s.energy.into(),
                    s.node_count.into(),
                ]);
            }
        };
        if j.method.analytic() {
            let states = if branch == Branch::Positive { bound_states(&d) } else { Vec::new() };
            push("v_zero", &states);
        }
        if j.method.numerov() {
            let opts = ShootingOptions::default();
            let zero = Potential::with_branch(PotentialKind::VZero, d, branch)?;
            push("v_zero", &find_bound_states(&zero, &opts)?);
            let full = Potential::with_branch(full_kind(branch), d, branch)?;
            let label = if branch == Branch::Negative { "v_minus" } else { "v_plus" };
            push(label, &find_bound_states(&full, &opts)?);
        }
        if let Some(k0) = d.kappa0 {
            t = t.meta("kappa0", k0 / j.r0);
        }
        doc.tables.push(t);
    }
    Ok(doc)
}

fn feshbach(j: &FeshbachJob) -> Result<Document> {
    let m = map_to_scattering(&j.params)?;
    let report = validity_report(&j.params, j.k_max);
    let mut doc = Document::new("feshbach", &["k", "delta_over_pi_analytic", "delta_over_pi_numerov"])
        .meta("mapping", m)
        .meta("validity", &report);
    if let Some(chain) = &j.chain {
        let r0 = m.conversion.r0;
        let a = match m.conversion.a_s {
            Some(a) => ScatteringInput::Finite(a),
            None => ScatteringInput::Unitarity(Branch::Negative),
        };
        let sub = PhaseShiftJob {
            a_s: vec![a],
            r0,
            k_grid: chain.k_grid,
            method: chain.method,
            well: WellArg::Zero,
        };
        let ps = phase_shift(&sub)?;
        doc.columns = ps.columns;
        doc.tables = ps.tables;
    } else {
        doc.columns.clear();
    }
    Ok(doc)
}

/// Checks the resonant ordering of a phase-shift document: negative curves
/// below one half and rising, positive above and falling, larger `|a_s|`
/// closer to one half everywhere. Returns a description of the first breach.
pub fn resonant_ordering(doc: &Document, column: &str) -> std::result::Result<(), String> {
    let mut curves = Vec::new();
    for t in &doc.tables {
        let a: ScatteringInput = serde_json::from_value(t.meta["a_s"].clone()).map_err(|e| e.to_string())?;
        let a = a.finite().ok_or("unitarity curve in ordering check")?;
        let y = t.column(&doc.columns, column).ok_or(format!("no column {column}"))?;
        for w in y.windows(2) {
            let ok = if a < 0.0 { w[1] > w[0] } else { w[1] < w[0] };
            if !ok {
                return Err(format!("a_s = {a}: not monotone ({} -> {})", w[0], w[1]));
            }
        }
        if let Some(bad) = y.iter().find(|&&v| if a < 0.0 { v >= 0.5 } else { v <= 0.5 }) {
            return Err(format!("a_s = {a}: value {bad} on the wrong side of 1/2"));
        }
        curves.push((a, y));
    }
    for sign in [-1.0, 1.0] {
        let mut same: Vec<&(f64, Vec<f64>)> = curves.iter().filter(|(a, _)| a.signum() == sign).collect();
        same.sort_by(|x, y| x.0.abs().total_cmp(&y.0.abs()));
        for w in same.windows(2) {
            for (i, (lo, hi)) in w[0].1.iter().zip(&w[1].1).enumerate() {
                if (hi - 0.5).abs() >= (lo - 0.5).abs() {
                    return Err(format!(
                        "point {i}: |a_s| = {} is not closer to 1/2 than |a_s| = {}",
                        w[1].0.abs(),
                        w[0].0.abs()
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Largest `|intercept / a_s - 1|` over a wavefunction document.
pub fn worst_intercept(doc: &Document) -> f64 {
    doc.tables
        .iter()
        .filter_map(|t| t.meta.get("intercept_over_a_s").and_then(|v| v.as_f64()))
        .map(|x| (x - 1.0).abs())
        .fold(0.0, f64::max)
}

pub fn bends(doc: &Document) -> Vec<(f64, String)> {
    doc.tables
        .iter()
        .filter_map(|t| {
            let a: ScatteringInput = serde_json::from_value(t.meta.get("a_s")?.clone()).ok()?;
            Some((a.finite()?, t.meta.get("bend_at_r0")?.as_str()?.to_string()))
        })
        .collect()
}
