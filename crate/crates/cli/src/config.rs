//! Validated job descriptions. A [`RunConfig`] is what gets echoed into every
//! output file and what `replay` reads back.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use jostkohn::exec::{geometric_grid, linear_grid};
use jostkohn::feshbach::FeshbachParams;
use jostkohn::params::{Branch, ScatteringParams};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// A scattering length in the length unit of `r0`; `+inf` / `-inf` select
/// unitarity approached from that side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum ScatteringInput {
    Finite(f64),
    Unitarity(Branch),
}

impl ScatteringInput {
    pub fn params(self, r0: f64) -> Result<ScatteringParams> {
        Ok(match self {
            ScatteringInput::Finite(a) => ScatteringParams::new(a / r0, 1.0)?,
            ScatteringInput::Unitarity(_) => ScatteringParams::unitarity(1.0)?,
        })
    }

    pub fn branch(self) -> Branch {
        match self {
            ScatteringInput::Finite(a) if a < 0.0 => Branch::Negative,
            ScatteringInput::Finite(_) => Branch::Positive,
            ScatteringInput::Unitarity(b) => b,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ScatteringInput::Finite(a) => Some(a),
            ScatteringInput::Unitarity(_) => None,
        }
    }
}

impl fmt::Display for ScatteringInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScatteringInput::Finite(a) => write!(f, "{a}"),
            ScatteringInput::Unitarity(Branch::Negative) => f.write_str("-inf"),
            ScatteringInput::Unitarity(Branch::Positive) => f.write_str("+inf"),
        }
    }
}

impl FromStr for ScatteringInput {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "inf" | "+inf" | "unitarity" => return Ok(ScatteringInput::Unitarity(Branch::Positive)),
            "-inf" => return Ok(ScatteringInput::Unitarity(Branch::Negative)),
            _ => {}
        }
        let a: f64 = t.parse().map_err(|_| format!("`{s}` is not a scattering length"))?;
        if !a.is_finite() || a == 0.0 {
            return Err(format!("scattering length must be finite and nonzero, got `{s}`"));
        }
        Ok(ScatteringInput::Finite(a))
    }
}

impl TryFrom<String> for ScatteringInput {
    type Error = String;

    fn try_from(s: String) -> std::result::Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<ScatteringInput> for String {
    fn from(a: ScatteringInput) -> String {
        a.to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum KindArg {
    /// The full potential of the branch (V_- or V_+).
    Full,
    Minus,
    Plus,
    Zero,
    Infinity,
    /// V_0 plus the truncated epsilon series.
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    Analytic,
    Numerov,
    Both,
}

impl MethodArg {
    pub fn analytic(self) -> bool {
        matches!(self, MethodArg::Analytic | MethodArg::Both)
    }

    pub fn numerov(self) -> bool {
        matches!(self, MethodArg::Numerov | MethodArg::Both)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum WellArg {
    /// The solvable well V_0.
    Zero,
    /// The full V_- / V_+.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Geometric,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KGrid {
    pub k_min: f64,
    pub k_max: f64,
    pub k_points: usize,
    pub spacing: Spacing,
}

impl KGrid {
    pub fn single(k: f64) -> Self {
        Self {
            k_min: k,
            k_max: k,
            k_points: 1,
            spacing: Spacing::Geometric,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.k_min > 0.0 && self.k_max >= self.k_min && self.k_max.is_finite()) {
            return Err(CliError::Usage(format!(
                "need 0 < k-min <= k-max, got {} .. {}",
                self.k_min, self.k_max
            )));
        }
        if self.k_points == 0 {
            return Err(CliError::Usage("k-points must be at least 1".into()));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        match self.spacing {
            Spacing::Geometric => geometric_grid(self.k_min, self.k_max, self.k_points),
            Spacing::Linear => linear_grid(self.k_min, self.k_max, self.k_points),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RGrid {
    pub r_max: f64,
    pub r_points: usize,
}

impl RGrid {
    pub fn validate(&self) -> Result<()> {
        if !(self.r_max > 0.0 && self.r_max.is_finite()) {
            return Err(CliError::Usage(format!("r-max must be positive, got {}", self.r_max)));
        }
        if self.r_points < 2 {
            return Err(CliError::Usage(format!(
                "r-grid needs at least 2 points, got {}",
                self.r_points
            )));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        linear_grid(0.0, self.r_max, self.r_points)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PotentialJob {
    pub a_s: ScatteringInput,
    pub r0: f64,
    pub kinds: Vec<KindArg>,
    pub n_max: u32,
    pub r_grid: RGrid,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionJob {
    pub a_s: Vec<ScatteringInput>,
    pub r0: f64,
    pub k: f64,
    pub r_grid: RGrid,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseShiftJob {
    pub a_s: Vec<ScatteringInput>,
    pub r0: f64,
    pub k_grid: KGrid,
    pub method: MethodArg,
    pub well: WellArg,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundStatesJob {
    pub a_s: Vec<ScatteringInput>,
    pub r0: f64,
    pub method: MethodArg,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeshbachChain {
    pub k_grid: KGrid,
    pub method: MethodArg,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeshbachJob {
    pub params: FeshbachParams,
    /// Largest wavenumber for the validity report, inverse input length unit.
    pub k_max: f64,
    pub chain: Option<FeshbachChain>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidateJob {
    /// Criterion whose reference constant is deliberately perturbed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inject_fault: Option<u8>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Job {
    Potential(PotentialJob),
    Wavefunction(WavefunctionJob),
    PhaseShift(PhaseShiftJob),
    BoundStates(BoundStatesJob),
    Feshbach(FeshbachJob),
    Validate(ValidateJob),
}

impl Job {
    pub fn name(&self) -> &'static str {
        match self {
            Job::Potential(_) => "potential",
            Job::Wavefunction(_) => "wavefunction",
            Job::PhaseShift(_) => "phase-shift",
            Job::BoundStates(_) => "bound-states",
            Job::Feshbach(_) => "feshbach",
            Job::Validate(_) => "validate",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub job: Job,
    pub format: Format,
    pub timestamp: bool,
}

fn check_r0(r0: f64) -> Result<()> {
    if r0.is_finite() && r0 > 0.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("r0 must be positive, got {r0}")))
    }
}

fn check_cases(a_s: &[ScatteringInput], r0: f64) -> Result<()> {
    if a_s.is_empty() {
        return Err(CliError::Usage("at least one --a-s is needed".into()));
    }
    for a in a_s {
        a.params(r0).map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(())
}

impl RunConfig {
    /// Checks that would otherwise surface halfway through a run.
    pub fn validate(&self) -> Result<()> {
        match &self.job {
            Job::Potential(j) => {
                check_r0(j.r0)?;
                check_cases(&[j.a_s], j.r0)?;
                j.r_grid.validate()?;
                if j.kinds.is_empty() {
                    return Err(CliError::Usage("no potential kinds requested".into()));
                }
                if j.n_max == 0 {
                    return Err(CliError::Usage("n-max must be at least 1".into()));
                }
            }
            Job::Wavefunction(j) => {
                check_r0(j.r0)?;
                check_cases(&j.a_s, j.r0)?;
                if j.a_s.iter().any(|a| a.finite().is_none()) {
                    return Err(CliError::Usage("wavefunction needs finite scattering lengths".into()));
                }
                if !(j.k > 0.0 && j.k.is_finite()) {
                    return Err(CliError::Usage(format!("k must be positive, got {}", j.k)));
                }
                j.r_grid.validate()?;
            }
            Job::PhaseShift(j) => {
                check_r0(j.r0)?;
                check_cases(&j.a_s, j.r0)?;
                j.k_grid.validate()?;
                if j.well == WellArg::Full && j.method.analytic() {
                    return Err(CliError::Usage(
                        "the analytic phase shift exists only for the zero well; use --method numerov".into(),
                    ));
                }
            }
            Job::BoundStates(j) => {
                check_r0(j.r0)?;
                check_cases(&j.a_s, j.r0)?;
            }
            Job::Feshbach(j) => {
                if let Some(c) = &j.chain {
                    c.k_grid.validate()?;
                }
                if !(j.k_max >= 0.0 && j.k_max.is_finite()) {
                    return Err(CliError::Usage(format!("k-max must be >= 0, got {}", j.k_max)));
                }
            }
            Job::Validate(j) => {
                if let Some(id) = j.inject_fault {
                    if !(1..=8).contains(&id) {
                        return Err(CliError::Usage(format!("fault target must be 1..=8, got {id}")));
                    }
                }
            }
        }
        Ok(())
    }
}
