//! Batch command-line front end.
//!
//! Every experiment subcommand builds a [`RunConfig`], so running it from flags
//! or from `run --config file.json` produces byte-identical output.

pub mod config;
pub mod run;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::dispersion::DispersionForm;
use crate::error::LatticeError;
use crate::extended::Wavelength;
use crate::grid::{Boundary, GridSpec};
use crate::verify::{self, AsPrinted, VerifyOptions};
use crate::waves::WaveForm;
pub use config::{Experiment, Format, RunConfig};

pub mod exit {
    pub const SUCCESS: i32 = 0;
    /// I/O failure, or at least one acceptance criterion failed.
    pub const FAILURE: i32 = 1;
    pub const INVALID_CONFIG: i32 = 2;
    pub const DOMAIN: i32 = 3;
}

const SLAB_HELP: &str = "CSV columns:\n  n    time index\n  j    space index\n  re   real part of psi(n, j)\n  im   imaginary part of psi(n, j)\nLines starting with '#' carry provenance.";
const SCAN_HELP: &str = "CSV columns:\n  form      dispersion relation\n  N         period in time steps\n  M         wavelength in space steps, or inf\n  m0        rest mass\n  residual  relation residual\nLines starting with '#' carry provenance.";
const ENUMERATE_HELP: &str = "CSV columns:\n  index        row number\n  word_length  shortest word length over S1..S4\n  l00, l01, l02, l03, l10, l11, l12, l13,\n  l20, l21, l22, l23, l30, l31, l32, l33\n               matrix entries, row-major\nLines starting with '#' carry provenance.";
const FACTORIZE_HELP: &str = "CSV columns:\n  position  index in the word, leftmost first\n  letter    S1, S2, S3, S4 or a parity block P1, P2, P3\nLines starting with '#' carry provenance.";
const BEAT_HELP: &str = "CSV columns:\n  quantity  v_phase, v_group, v_group_measured, relative_error\n  value     its value (v_phase may be inf)\nLines starting with '#' carry provenance.";
const RESIDUAL_HELP: &str = "CSV columns:\n  quantity  m0, residual\n  value     its value\nLines starting with '#' carry provenance.";
const BOOST_HELP: &str = "CSV columns:\n  frame              original or boosted\n  energy             E\n  px, py, pz         momentum\n  w                  angular frequency of the boosted wave\n  kx, ky, kz         wave vector of the boosted wave\n  mass_shell_defect  E^2 - p^2 c^2 - m0^2 c^4\nLines starting with '#' carry provenance.";
const QUANT_HELP: &str = "CSV columns:\n  quantity  energy, momentum, N_real, M_real, N, M\n  value     its value (M_real may be inf; N, M may be none)\nLines starting with '#' carry provenance.";

#[derive(Debug, Parser)]
#[command(name = "latwave", version, about = "Wave mechanics on a space-time lattice")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 1.0)]
    pub tau: f64,
    #[arg(long, default_value_t = 1.0)]
    pub eps: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    /// Time extent (sites)
    #[arg(long)]
    pub nt: Option<usize>,
    /// Space extent (sites)
    #[arg(long)]
    pub nx: Option<usize>,
    #[arg(long, value_enum, default_value_t = BoundaryArg::Periodic)]
    pub boundary: BoundaryArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum BoundaryArg {
    Periodic,
    Shrinking,
}

impl GridArgs {
    fn grid(&self, nt: usize, nx: usize) -> GridSpec {
        GridSpec {
            tau: self.tau,
            eps: self.eps,
            c: self.c,
            hbar: self.hbar,
            nt: self.nt.unwrap_or(nt),
            nx: self.nx.unwrap_or(nx),
            boundary: match self.boundary {
                BoundaryArg::Periodic => Boundary::Periodic,
                BoundaryArg::Shrinking => Boundary::Shrinking,
            },
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; stdout when absent. LATWAVE_OUTPUT_DIR overrides its directory.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Recorded in the provenance header.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct ModeArgs {
    #[arg(long, value_parser = parse_wave_form)]
    pub form: WaveForm,
    /// Period N in time steps
    #[arg(long)]
    pub period: u32,
    /// Wavelength M in space steps, or inf
    #[arg(long)]
    pub wavelength: Wavelength,
    /// Rest mass; solved from --relation when absent
    #[arg(long)]
    pub m0: Option<f64>,
    /// exponential, exponential-as-printed, cayley or continuum
    #[arg(long, value_parser = parse_dispersion_form)]
    pub relation: Option<DispersionForm>,
}

fn parse_wave_form(s: &str) -> Result<WaveForm, String> {
    match s {
        "exponential" => Ok(WaveForm::Exponential),
        "cayley" => Ok(WaveForm::Cayley),
        other => Err(format!("unknown wave form {other:?}; expected exponential or cayley")),
    }
}

fn parse_dispersion_form(s: &str) -> Result<DispersionForm, String> {
    s.parse()
}

fn parse_vec3(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let mut v = [0.0; 3];
    if parts.is_empty() || parts.len() > 3 {
        return Err(format!("expected 1 to 3 comma-separated numbers, got {s:?}"));
    }
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|e| format!("{p:?}: {e}"))?;
    }
    Ok(v)
}

fn parse_ivec3(s: &str) -> Result<[i64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let mut v = [0; 3];
    if parts.is_empty() || parts.len() > 3 {
        return Err(format!("expected 1 to 3 comma-separated integers, got {s:?}"));
    }
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|e| format!("{p:?}: {e}"))?;
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum PrintedForm {
    /// S4 with +1 in row 3, column 4
    S4,
    /// tan relation with time coefficient 1/(c^2 tau^2)
    TanDispersion,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List lattice modes (N, M) satisfying a dispersion relation
    #[command(after_help = SCAN_HELP)]
    DispersionScan {
        #[arg(long, value_parser = parse_dispersion_form)]
        form: DispersionForm,
        #[arg(long)]
        m0: f64,
        #[arg(long, default_value_t = 64)]
        n_max: u32,
        #[arg(long, default_value_t = 64)]
        m_max: u32,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Enumerate integral Lorentz matrices with words of bounded length
    #[command(after_help = ENUMERATE_HELP)]
    LorentzEnumerate {
        #[arg(long)]
        max_word_len: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Factorize an integral Lorentz matrix into the four generators
    #[command(after_help = FACTORIZE_HELP)]
    LorentzFactorize {
        /// 16 comma-separated integers, row-major
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sample a lattice plane wave
    #[command(after_help = SLAB_HELP)]
    WaveSample {
        #[arg(long, value_parser = parse_wave_form)]
        form: WaveForm,
        #[arg(long)]
        period: u32,
        #[arg(long)]
        wavelength: Wavelength,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        n0: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        j0: i64,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Beat of two cosines: analytic and measured velocities (default grid 256x1024)
    #[command(after_help = BEAT_HELP)]
    BeatMeasure {
        #[arg(long)]
        period_a: f64,
        #[arg(long)]
        period_b: f64,
        #[arg(long, allow_hyphen_values = true)]
        wavelength_a: f64,
        #[arg(long, allow_hyphen_values = true)]
        wavelength_b: f64,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Lattice Klein-Gordon residual of a plane wave
    #[command(after_help = RESIDUAL_HELP)]
    KgResidual {
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Evolve exact plane-wave initial data with the implicit scheme
    #[command(after_help = SLAB_HELP)]
    KgEvolve {
        #[command(flatten)]
        mode: ModeArgs,
        /// Steps beyond the two initial slices (default nt - 2)
        #[arg(long)]
        steps: Option<usize>,
        /// Print the maximum deviation from the exact solution
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Boost a particle and its de Broglie wave
    #[command(after_help = BOOST_HELP)]
    KinematicsBoost {
        #[arg(long)]
        m0: f64,
        /// px[,py[,pz]]
        #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
        momentum: [f64; 3],
        /// vx[,vy[,vz]]
        #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
        velocity: [f64; 3],
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Match a lattice step's energy and momentum to integer N, M
    #[command(after_help = QUANT_HELP)]
    QuantizationCheck {
        #[arg(long)]
        dn: u64,
        /// dj_x[,dj_y[,dj_z]]
        #[arg(long, value_parser = parse_ivec3, default_value = "0", allow_hyphen_values = true)]
        dj: [i64; 3],
        #[arg(long)]
        m0: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run a strict JSON config
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run the acceptance criteria and print a pass/fail table
    Verify {
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        /// Use a printed form that is known to fail (repeatable)
        #[arg(long, value_enum)]
        as_printed: Vec<PrintedForm>,
    },
}

fn config_from(grid: GridSpec, experiment: Experiment, out: &OutputArgs) -> RunConfig {
    RunConfig { grid, experiment, output_path: out.output.clone(), format: out.format, seed: out.seed }
}

fn parse_matrix(text: &str) -> Result<serde_json::Value, String> {
    let items: Vec<serde_json::Value> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| serde_json::Value::String(s.to_string()))
        .collect();
    if items.len() != 16 {
        return Err(format!("--matrix needs 16 integers, got {}", items.len()));
    }
    Ok(serde_json::Value::Array(items))
}

/// A failure with the exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        let code = match e {
            LatticeError::Io(_) => exit::FAILURE,
            LatticeError::Format(_) => exit::INVALID_CONFIG,
            _ => exit::DOMAIN,
        };
        CliError { code, message: e.to_string() }
    }
}

fn invalid(message: impl Into<String>) -> CliError {
    CliError { code: exit::INVALID_CONFIG, message: message.into() }
}

/// Builds the run config for an experiment subcommand; `None` for `run` and `verify`.
pub fn to_config(cmd: &Command) -> Result<Option<RunConfig>, CliError> {
    use config::*;
    let cfg = match cmd {
        Command::DispersionScan { form, m0, n_max, m_max, tol, grid, out } => config_from(
            grid.grid(32, 32),
            Experiment::DispersionScan(DispersionScan { form: *form, m0: *m0, n_max: *n_max, m_max: *m_max, tol: *tol }),
            out,
        ),
        Command::LorentzEnumerate { max_word_len, out } => config_from(
            GridSpec::default(),
            Experiment::LorentzEnumerate(LorentzEnumerate { max_word_len: *max_word_len }),
            out,
        ),
        Command::LorentzFactorize { matrix, out } => config_from(
            GridSpec::default(),
            Experiment::LorentzFactorize(LorentzFactorize { matrix: parse_matrix(matrix).map_err(invalid)? }),
            out,
        ),
        Command::WaveSample { form, period, wavelength, n0, j0, grid, out } => config_from(
            grid.grid(32, 32),
            Experiment::WaveSample(WaveSample { form: *form, period: *period, wavelength: *wavelength, n0: *n0, j0: *j0 }),
            out,
        ),
        Command::BeatMeasure { period_a, period_b, wavelength_a, wavelength_b, grid, out } => config_from(
            grid.grid(256, 1024),
            Experiment::BeatMeasure(BeatMeasure {
                period_a: *period_a,
                period_b: *period_b,
                wavelength_a: *wavelength_a,
                wavelength_b: *wavelength_b,
            }),
            out,
        ),
        Command::KgResidual { mode, grid, out } => config_from(
            grid.grid(32, 32),
            Experiment::KgResidual(KgResidual {
                form: mode.form,
                period: mode.period,
                wavelength: mode.wavelength,
                m0: mode.m0,
                relation: mode.relation,
            }),
            out,
        ),
        Command::KgEvolve { mode, steps, verify, grid, out } => {
            let g = grid.grid(18, 32);
            config_from(
                g,
                Experiment::KgEvolve(KgEvolve {
                    form: mode.form,
                    period: mode.period,
                    wavelength: mode.wavelength,
                    m0: mode.m0,
                    relation: mode.relation,
                    steps: steps.unwrap_or(g.nt.saturating_sub(2)),
                    verify: *verify,
                }),
                out,
            )
        }
        Command::KinematicsBoost { m0, momentum, velocity, grid, out } => config_from(
            grid.grid(32, 32),
            Experiment::KinematicsBoost(KinematicsBoost { m0: *m0, momentum: *momentum, velocity: *velocity }),
            out,
        ),
        Command::QuantizationCheck { dn, dj, m0, tol, grid, out } => config_from(
            grid.grid(32, 32),
            Experiment::QuantizationCheck(QuantizationCheck { dn: *dn, dj: *dj, m0: *m0, tol: *tol }),
            out,
        ),
        Command::Run { .. } | Command::Verify { .. } => return Ok(None),
    };
    Ok(Some(cfg))
}

/// Executes a config and writes its output. Returns the notes for the user.
pub fn run_config(cfg: &RunConfig) -> Result<Vec<String>, CliError> {
    if cfg.format == Format::Binary && !cfg.experiment.produces_slab() {
        return Err(invalid(format!("binary format is not available for {}", cfg.experiment.kind())));
    }
    if cfg.format == Format::Binary && cfg.output_path.is_none() {
        return Err(invalid("binary format needs an output path"));
    }
    let artifact = run::execute(cfg)?;
    let provenance = run::Provenance::new(cfg, &artifact);
    let bytes = run::render(&artifact, &provenance, cfg.format)?;
    run::write_output(&bytes, &provenance, cfg.format, cfg.output_path.as_deref())?;
    Ok(artifact.notes)
}

fn verify_command(seed: u64, as_printed: &[PrintedForm]) -> i32 {
    let opts = VerifyOptions {
        seed,
        as_printed: AsPrinted {
            s4: as_printed.contains(&PrintedForm::S4),
            tan_dispersion: as_printed.contains(&PrintedForm::TanDispersion),
        },
    };
    let reports = verify::verify_all(&opts);
    println!("# {} verify, seed {seed}", run::TOOL);
    for r in &reports {
        print!("{r}");
    }
    let failed: Vec<String> = reports.iter().filter(|r| !r.passed()).map(|r| r.id.to_string()).collect();
    if failed.is_empty() {
        println!("all {} criteria passed", reports.len());
        exit::SUCCESS
    } else {
        println!("failed criteria: {}", failed.join(", "));
        exit::FAILURE
    }
}

/// Parses arguments, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::INVALID_CONFIG } else { exit::SUCCESS };
        }
    };
    let outcome = match &cli.command {
        Command::Verify { seed, as_printed } => return verify_command(*seed, as_printed),
        Command::Run { config } => std::fs::read_to_string(config)
            .map_err(|e| invalid(format!("cannot read {}: {e}", config.display())))
            .and_then(|text| RunConfig::from_json(&text).map_err(|e| invalid(format!("invalid config: {e}"))))
            .and_then(|cfg| run_config(&cfg)),
        cmd => to_config(cmd).and_then(|cfg| run_config(&cfg.expect("experiment subcommand"))),
    };
    match outcome {
        Ok(notes) => {
            for n in notes {
                eprintln!("{n}");
            }
            exit::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}
