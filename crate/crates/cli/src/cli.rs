//! Argument parsing. Turns a command line into a [`RunConfig`] plus an
//! output destination.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use jostkohn::feshbach::{load_params, FeshbachParams, UnitSystem};

use crate::config::{
    BoundStatesJob, FeshbachChain, FeshbachJob, Format, Job, KGrid, KindArg, MethodArg, PhaseShiftJob,
    PotentialJob, RGrid, RunConfig, ScatteringInput, Spacing, ValidateJob, WavefunctionJob, WellArg,
};
use crate::error::{CliError, Result};
use crate::output::read_echo;

#[derive(Debug, Parser)]
#[command(name = "jostkohn", version, about = "Scattering off the exactly solvable sech^2 family of short-range potentials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format [default: csv; json for validate]
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Write to FILE instead of stdout
    #[arg(long, short, value_name = "FILE", global = true)]
    pub output: Option<PathBuf>,
    /// Omit the generation time so reruns are byte-identical
    #[arg(long, global = true)]
    pub no_timestamp: bool,
}

#[derive(Debug, Args)]
pub struct KArgs {
    /// Single wavenumber, inverse of the length unit used for r0
    #[arg(long, conflicts_with_all = ["k_min", "k_max", "k_points"])]
    pub k: Option<f64>,
    #[arg(long)]
    pub k_min: Option<f64>,
    #[arg(long)]
    pub k_max: Option<f64>,
    #[arg(long)]
    pub k_points: Option<usize>,
    #[arg(long, value_enum, default_value = "geometric")]
    pub spacing: Spacing,
}

impl KArgs {
    fn grid(&self, lo: f64, hi: f64, n: usize) -> KGrid {
        match self.k {
            Some(k) => KGrid::single(k),
            None => KGrid {
                k_min: self.k_min.unwrap_or(lo),
                k_max: self.k_max.unwrap_or(hi),
                k_points: self.k_points.unwrap_or(n),
                spacing: self.spacing,
            },
        }
    }
}

#[derive(Debug, Args)]
pub struct RArgs {
    #[arg(long)]
    pub r_max: Option<f64>,
    #[arg(long)]
    pub r_points: Option<usize>,
}

impl RArgs {
    fn grid(&self, r_max: f64, r_points: usize) -> RGrid {
        RGrid {
            r_max: self.r_max.unwrap_or(r_max),
            r_points: self.r_points.unwrap_or(r_points),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate potentials on an r grid
    Potential {
        /// Scattering length in units of r0; `+inf`/`-inf` for unitarity
        #[arg(long = "a-s", allow_hyphen_values = true, default_value = "-100")]
        a_s: ScatteringInput,
        #[arg(long, default_value_t = 1.0)]
        r0: f64,
        #[arg(long = "kind", value_enum, value_delimiter = ',')]
        kinds: Vec<KindArg>,
        /// Terms kept in the epsilon series
        #[arg(long, default_value_t = 30)]
        n_max: u32,
        #[command(flatten)]
        r: RArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Energy-normalized radial wavefunctions of the full potentials
    Wavefunction {
        #[arg(long = "a-s", allow_hyphen_values = true, value_delimiter = ',')]
        a_s: Vec<ScatteringInput>,
        #[arg(long, default_value_t = 1.0)]
        r0: f64,
        #[arg(long, default_value_t = 0.01)]
        k: f64,
        #[command(flatten)]
        r: RArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Phase shifts over a k grid
    PhaseShift {
        #[arg(long = "a-s", allow_hyphen_values = true, value_delimiter = ',')]
        a_s: Vec<ScatteringInput>,
        #[arg(long, default_value_t = 1.0)]
        r0: f64,
        #[command(flatten)]
        k: KArgs,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "zero")]
        well: WellArg,
        #[command(flatten)]
        common: Common,
    },
    /// Bound states from the closed form and from shooting
    BoundStates {
        #[arg(long = "a-s", allow_hyphen_values = true, value_delimiter = ',')]
        a_s: Vec<ScatteringInput>,
        #[arg(long, default_value_t = 1.0)]
        r0: f64,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
        #[command(flatten)]
        common: Common,
    },
    /// Map magnetic-resonance parameters onto (a_s, r0) and check validity
    Feshbach {
        /// `key = value` file with b, b0, delta, a_bg, gamma0, mu, units
        #[arg(long, value_name = "FILE", conflicts_with_all = ["b", "b0", "delta", "a_bg", "gamma0", "mu", "units"])]
        params: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        b0: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        a_bg: Option<f64>,
        #[arg(long)]
        gamma0: Option<f64>,
        #[arg(long)]
        mu: Option<f64>,
        /// si or atomic
        #[arg(long)]
        units: Option<String>,
        /// Largest wavenumber of interest, inverse input length unit
        #[arg(long = "validity-k-max", default_value_t = 0.0)]
        validity_k_max: f64,
        /// Also compute phase shifts of the mapped well (k in the inverse input length unit)
        #[arg(long)]
        chain: bool,
        #[command(flatten)]
        k: KArgs,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
        #[command(flatten)]
        common: Common,
    },
    /// Run every acceptance criterion and report pass/fail
    Validate {
        /// Perturb one criterion's reference to prove it can fail
        #[arg(long, hide = true)]
        inject_fault: Option<u8>,
        #[command(flatten)]
        common: Common,
    },
    /// Rerun the configuration echoed into an earlier output file
    Replay {
        file: PathBuf,
        /// Override the recorded format
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long, short, value_name = "FILE")]
        output: Option<PathBuf>,
    },
}

/// A parsed command line.
#[derive(Debug, Clone, PartialEq)]
pub struct Invocation {
    pub config: RunConfig,
    pub output: Option<PathBuf>,
}

fn or_default(a_s: Vec<ScatteringInput>, default: &[f64]) -> Vec<ScatteringInput> {
    if a_s.is_empty() {
        default.iter().map(|&a| ScatteringInput::Finite(a)).collect()
    } else {
        a_s
    }
}

fn run_config(job: Job, common: Common, default_format: Format) -> Invocation {
    Invocation {
        config: RunConfig {
            job,
            format: common.format.unwrap_or(default_format),
            timestamp: !common.no_timestamp,
        },
        output: common.output,
    }
}

fn inline_feshbach(
    b: Option<f64>,
    b0: Option<f64>,
    delta: Option<f64>,
    a_bg: Option<f64>,
    gamma0: Option<f64>,
    mu: Option<f64>,
    units: Option<String>,
) -> Result<FeshbachParams> {
    let need = |v: Option<f64>, name: &str| v.ok_or_else(|| CliError::Usage(format!("feshbach needs --params FILE or --{name}")));
    let units = match units {
        Some(u) => u.parse::<UnitSystem>().map_err(CliError::Usage)?,
        None => UnitSystem::default(),
    };
    let p = FeshbachParams {
        b: need(b, "b")?,
        b0: need(b0, "b0")?,
        delta: need(delta, "delta")?,
        a_bg: need(a_bg, "a-bg")?,
        gamma0: need(gamma0, "gamma0")?,
        mu: need(mu, "mu")?,
        units,
    };
    p.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(p)
}

impl Cli {
    pub fn into_invocation(self) -> Result<Invocation> {
        let inv = match self.command {
            Command::Potential { a_s, r0, kinds, n_max, r, common } => {
                let kinds = if kinds.is_empty() {
                    vec![KindArg::Full, KindArg::Zero, KindArg::Series, KindArg::Infinity]
                } else {
                    kinds
                };
                let job = PotentialJob { a_s, r0, kinds, n_max, r_grid: r.grid(10.0, 201) };
                run_config(Job::Potential(job), common, Format::Csv)
            }
            Command::Wavefunction { a_s, r0, k, r, common } => {
                let job = WavefunctionJob {
                    a_s: or_default(a_s, &[-100.0, -50.0, 50.0, 100.0]),
                    r0,
                    k,
                    r_grid: r.grid(100.0, 1001),
                };
                run_config(Job::Wavefunction(job), common, Format::Csv)
            }
            Command::PhaseShift { a_s, r0, k, method, well, common } => {
                let job = PhaseShiftJob {
                    a_s: or_default(a_s, &[-1e3, -1e4, -1e5, 1e3, 1e4, 1e5]),
                    r0,
                    k_grid: k.grid(1e-5, 1e-3, 25),
                    method,
                    well,
                };
                run_config(Job::PhaseShift(job), common, Format::Csv)
            }
            Command::BoundStates { a_s, r0, method, common } => {
                let job = BoundStatesJob { a_s: or_default(a_s, &[50.0, 100.0, 1e3]), r0, method };
                run_config(Job::BoundStates(job), common, Format::Csv)
            }
            Command::Feshbach { params, b, b0, delta, a_bg, gamma0, mu, units, validity_k_max, chain, k, method, common } => {
                let params = match params {
                    Some(path) => load_params(&path)?,
                    None => inline_feshbach(b, b0, delta, a_bg, gamma0, mu, units)?,
                };
                let chain = chain.then(|| FeshbachChain { k_grid: k.grid(1e-4, 1e-2, 25), method });
                let job = FeshbachJob { params, k_max: validity_k_max, chain };
                run_config(Job::Feshbach(job), common, Format::Csv)
            }
            Command::Validate { inject_fault, common } => {
                run_config(Job::Validate(ValidateJob { inject_fault }), common, Format::Json)
            }
            Command::Replay { file, format, output } => {
                let text = std::fs::read_to_string(&file)?;
                let mut config = read_echo(&text)?;
                if let Some(f) = format {
                    config.format = f;
                }
                Invocation { config, output }
            }
        };
        inv.config.validate()?;
        Ok(inv)
    }
}

/// Parses a full command line (program name first). Help and version
/// requests come back as usage errors.
pub fn parse_args<I, T>(args: I) -> Result<RunConfig>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(cli.into_invocation()?.config)
}
