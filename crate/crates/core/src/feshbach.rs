//! Magnetic Feshbach resonance parameters mapped onto `(a_s, r0)`.
//!
//! Fields are in gauss. Lengths, masses and rates follow the declared unit
//! system: SI (m, kg, 1/s) or atomic (bohr, electron masses, `E_h / hbar`).

use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::params::{ParamError, ScatteringParams};

/// Reduced Planck constant in J s.
pub const HBAR_SI: f64 = 1.054_571_817e-34;

/// Ratio below which `x << 1` counts as satisfied.
pub const MUCH_LESS_PASS: f64 = 0.1;
/// Ratio below which `x << 1` only warns.
pub const MUCH_LESS_WARN: f64 = 0.3;

pub const CS_NOTE: &str = "Cs-133 shows magnetic Feshbach resonances near B0 = -11.7, 547 and 800 G; \
no (a_bg, Gamma0) values are bundled for them, supply measured ones.";

#[derive(Debug, Error)]
pub enum FeshbachError {
    #[error("{name} must be finite, got {value}")]
    NotFinite { name: &'static str, value: f64 },
    #[error("background scattering length must be nonzero")]
    ZeroBackground,
    #[error("zero-crossing width must be nonzero")]
    ZeroWidth,
    #[error("Gamma0 must be positive, got {0}")]
    NonPositiveRate(f64),
    #[error("reduced mass must be positive, got {0}")]
    NonPositiveMass(f64),
    #[error(
        "effective range r0 = 2 a_bg - hbar/(mu a_bg Gamma0) = {r0} is not positive; \
         it needs a_bg > sqrt(hbar/(2 mu Gamma0)) = {threshold} (a_bg = {a_bg})"
    )]
    NegativeRange { r0: f64, a_bg: f64, threshold: f64 },
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("missing key `{0}`")]
    MissingKey(&'static str),
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitSystem {
    #[default]
    Si,
    Atomic,
}

impl UnitSystem {
    pub fn hbar(self) -> f64 {
        match self {
            UnitSystem::Si => HBAR_SI,
            UnitSystem::Atomic => 1.0,
        }
    }

    pub fn length_unit(self) -> &'static str {
        match self {
            UnitSystem::Si => "m",
            UnitSystem::Atomic => "bohr",
        }
    }

    pub fn energy_unit(self) -> &'static str {
        match self {
            UnitSystem::Si => "J",
            UnitSystem::Atomic => "hartree",
        }
    }
}

impl FromStr for UnitSystem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "si" => Ok(UnitSystem::Si),
            "atomic" | "au" | "a.u." => Ok(UnitSystem::Atomic),
            other => Err(format!("unknown unit system `{other}` (expected si or atomic)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeshbachParams {
    /// Applied field (G).
    pub b: f64,
    /// Resonance position (G).
    pub b0: f64,
    /// Zero-crossing width (G).
    pub delta: f64,
    pub a_bg: f64,
    /// Width parameter, an energy over hbar.
    pub gamma0: f64,
    pub mu: f64,
    pub units: UnitSystem,
}

/// Physical scale attached to a mapped parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Conversion {
    pub units: UnitSystem,
    /// Effective range in the input length unit.
    pub r0: f64,
    /// Scattering length in the input length unit; `None` at unitarity.
    pub a_s: Option<f64>,
    /// `hbar^2 / (mu r0^2)` in the input energy unit.
    pub energy_unit: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeshbachMapping {
    /// Reduced (`r0 = 1`) parameters.
    pub params: ScatteringParams,
    pub conversion: Conversion,
}

impl FeshbachParams {
    pub fn validate(&self) -> Result<(), FeshbachError> {
        for (name, value) in [
            ("B", self.b),
            ("B0", self.b0),
            ("Delta", self.delta),
            ("a_bg", self.a_bg),
            ("Gamma0", self.gamma0),
            ("mu", self.mu),
        ] {
            if !value.is_finite() {
                return Err(FeshbachError::NotFinite { name, value });
            }
        }
        if self.a_bg == 0.0 {
            return Err(FeshbachError::ZeroBackground);
        }
        if self.delta == 0.0 {
            return Err(FeshbachError::ZeroWidth);
        }
        if self.gamma0 <= 0.0 {
            return Err(FeshbachError::NonPositiveRate(self.gamma0));
        }
        if self.mu <= 0.0 {
            return Err(FeshbachError::NonPositiveMass(self.mu));
        }
        Ok(())
    }

    /// `Delta a_bg / (B0 - B)`, or `None` on resonance.
    pub fn scattering_length(&self) -> Option<f64> {
        let detuning = self.b0 - self.b;
        (detuning != 0.0).then(|| self.delta * self.a_bg / detuning)
    }

    /// `2 a_bg - hbar / (mu a_bg Gamma0)`, whatever its sign.
    ///
    /// `Gamma0` is a positive magnitude and the product `a_bg Gamma0` is
    /// taken positive, so the second term always shortens the range.
    pub fn effective_range(&self) -> f64 {
        2.0 * self.a_bg - self.units.hbar() / (self.mu * self.a_bg.abs() * self.gamma0)
    }

    /// `sqrt(hbar / (2 mu Gamma0))`, the smallest `a_bg` giving `r0 > 0`.
    pub fn range_threshold(&self) -> f64 {
        (self.units.hbar() / (2.0 * self.mu * self.gamma0)).sqrt()
    }
}

pub fn map_to_scattering(f: &FeshbachParams) -> Result<FeshbachMapping, FeshbachError> {
    f.validate()?;
    let r0 = f.effective_range();
    if !(r0 > 0.0) {
        return Err(FeshbachError::NegativeRange {
            r0,
            a_bg: f.a_bg,
            threshold: f.range_threshold(),
        });
    }
    let a_s = f.scattering_length();
    let params = match a_s {
        Some(a) => ScatteringParams::reduced(a / r0)?,
        None => ScatteringParams::unitarity(1.0)?,
    };
    let hbar = f.units.hbar();
    Ok(FeshbachMapping {
        params,
        conversion: Conversion {
            units: f.units,
            r0,
            a_s,
            energy_unit: hbar * hbar / (f.mu * r0 * r0),
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Warn,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidityCheck {
    pub name: String,
    pub ratio: f64,
    /// Passing threshold over `ratio`; above 1 means satisfied. Infinite when
    /// `ratio` is zero (serialized as null).
    pub margin: f64,
    pub status: CheckStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub k_max: f64,
    pub checks: Vec<ValidityCheck>,
    pub note: String,
}

impl ValidityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn check(&self, name: &str) -> Option<&ValidityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn much_less(name: &str, ratio: f64) -> ValidityCheck {
    let status = if ratio < MUCH_LESS_PASS {
        CheckStatus::Pass
    } else if ratio < MUCH_LESS_WARN {
        CheckStatus::Warn
    } else {
        CheckStatus::Fail
    };
    ValidityCheck {
        name: name.to_string(),
        ratio,
        margin: MUCH_LESS_PASS / ratio,
        status,
    }
}

fn less(name: &str, ratio: f64) -> ValidityCheck {
    ValidityCheck {
        name: name.to_string(),
        ratio,
        margin: 1.0 / ratio,
        status: if ratio < 1.0 { CheckStatus::Pass } else { CheckStatus::Fail },
    }
}

/// Advisory checks of the low-energy conditions at wavenumber `k_max`
/// (inverse input length unit). Never fails; bad inputs show up as failed
/// checks.
pub fn validity_report(f: &FeshbachParams, k_max: f64) -> ValidityReport {
    let r0 = f.effective_range();
    let k = k_max.abs();
    let mut checks = vec![
        much_less("|k a_bg| << 1", (k * f.a_bg).abs()),
        less("k r0 < 1", (k * r0).abs()),
    ];
    let r0_ratio = match f.scattering_length() {
        Some(a) => (r0 / a).abs(),
        None => 0.0,
    };
    checks.push(much_less("r0 << |a_s|", r0_ratio));
    checks.push(ValidityCheck {
        name: "r0 > 0".into(),
        ratio: r0 / f.range_threshold(),
        margin: f.a_bg / f.range_threshold(),
        status: if r0 > 0.0 { CheckStatus::Pass } else { CheckStatus::Fail },
    });
    ValidityReport {
        k_max,
        checks,
        note: CS_NOTE.to_string(),
    }
}

/// Parses `key = value` lines; `#` starts a comment. Keys: `units`, `B`,
/// `B0`, `Delta`, `a_bg`, `Gamma0`, `mu` (case-insensitive). `units`
/// defaults to `si`.
pub fn parse_params(text: &str) -> Result<FeshbachParams, FeshbachError> {
    let mut units = UnitSystem::default();
    let mut vals: [Option<f64>; 6] = [None; 6];
    const KEYS: [&str; 6] = ["b", "b0", "delta", "a_bg", "gamma0", "mu"];
    const NAMES: [&str; 6] = ["B", "B0", "Delta", "a_bg", "Gamma0", "mu"];
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| FeshbachError::Parse {
            line: line_no,
            msg: format!("expected `key = value`, got `{line}`"),
        })?;
        let key = key.trim().to_ascii_lowercase();
        let value = value.trim();
        if key == "units" {
            units = value.parse().map_err(|msg| FeshbachError::Parse { line: line_no, msg })?;
            continue;
        }
        let slot = KEYS.iter().position(|k| *k == key).ok_or_else(|| FeshbachError::Parse {
            line: line_no,
            msg: format!("unknown key `{key}`"),
        })?;
        let v: f64 = value.parse().map_err(|_| FeshbachError::Parse {
            line: line_no,
            msg: format!("`{value}` is not a number"),
        })?;
        if vals[slot].replace(v).is_some() {
            return Err(FeshbachError::Parse {
                line: line_no,
                msg: format!("duplicate key `{key}`"),
            });
        }
    }
    let get = |i: usize| vals[i].ok_or(FeshbachError::MissingKey(NAMES[i]));
    let p = FeshbachParams {
        b: get(0)?,
        b0: get(1)?,
        delta: get(2)?,
        a_bg: get(3)?,
        gamma0: get(4)?,
        mu: get(5)?,
        units,
    };
    p.validate()?;
    Ok(p)
}

pub fn load_params(path: &Path) -> Result<FeshbachParams, FeshbachError> {
    let text = std::fs::read_to_string(path).map_err(|source| FeshbachError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_params(&text)
}
