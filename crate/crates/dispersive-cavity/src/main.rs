//! Thin command-line front end: figure and table generation plus the seeded
//! verification suite. All physics lives in the library.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dispersive_cavity::figures::{self, Figure, OutputFormat, RunConfig};
use dispersive_cavity::verify;

#[derive(Parser)]
#[command(
    name = "dispersive-cavity",
    version,
    about = "Entanglement entropy and spin squeezing of two atoms in a dispersive cavity"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entanglement entropy against delta0*t for theta = pi/6, pi/2, 2pi/3
    Fig1(SweepArgs),
    /// Entanglement entropy against theta at delta0*t = pi/2
    Fig2(SweepArgs),
    /// Squeezing parameters Sx, Sy, Smin and entropy against delta0*t
    Fig3(SweepArgs),
    /// Occupation probabilities of the product basis states
    Table1(OutArgs),
    /// Every reported quantity at one parameter point, as CSV on stdout
    Point(PointArgs),
    /// Cross-validate all routes on random samples; nonzero exit on failure
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Svg,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Svg => OutputFormat::Svg,
        }
    }
}

#[derive(Args)]
struct SweepArgs {
    /// Preparation polar angle in radians (used by fig3; fig1/fig2 sweep
    /// fixed reference angles)
    #[arg(long, default_value_t = std::f64::consts::PI / 3.0)]
    theta: f64,
    /// Preparation azimuthal angle in radians
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
    /// Atom-field coupling in rad/s (give --g, --delta, --k together)
    #[arg(long)]
    g: Option<f64>,
    /// Atom-field detuning in rad/s
    #[arg(long)]
    delta: Option<f64>,
    /// Cavity decay rate in rad/s
    #[arg(long)]
    k: Option<f64>,
    /// Mean thermal photon number
    #[arg(long, default_value_t = 0.0)]
    nbar: f64,
    /// Start of the dimensionless time grid (delta0*t)
    #[arg(long, default_value_t = 0.0)]
    tmin: f64,
    /// End of the dimensionless time grid; defaults to 2*pi (fig1, fig2) or
    /// pi (fig3)
    #[arg(long)]
    tmax: Option<f64>,
    /// Number of grid points
    #[arg(long, default_value_t = 201)]
    steps: usize,
    /// Output file; defaults to <command>.<format>
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Args)]
struct OutArgs {
    /// Output file; defaults to <command>.<format>
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Args)]
struct PointArgs {
    /// Preparation polar angle in radians
    #[arg(long)]
    theta: f64,
    /// Preparation azimuthal angle in radians
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
    /// Dimensionless time delta0*t
    #[arg(long)]
    t: f64,
    /// Mean thermal photon number
    #[arg(long, default_value_t = 0.0)]
    nbar: f64,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Random parameter draws per sample-based check
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
}

enum CliError {
    Invalid(String),
    Io(PathBuf, std::io::Error),
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(CliError::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(path, e)) => {
            eprintln!("error: cannot write {}: {e}", path.display());
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.cmd {
        Command::Fig1(a) => {
            let cfg = sweep_config(&a, std::f64::consts::TAU)?;
            emit(&figures::fig1(&cfg).map_err(invalid)?, &a, "fig1")
        }
        Command::Fig2(a) => {
            let cfg = sweep_config(&a, std::f64::consts::TAU)?;
            emit(&figures::fig2(&cfg).map_err(invalid)?, &a, "fig2")
        }
        Command::Fig3(a) => {
            let cfg = sweep_config(&a, std::f64::consts::PI)?;
            emit(&figures::fig3(&cfg).map_err(invalid)?, &a, "fig3")
        }
        Command::Table1(a) => {
            let path = a.out.clone().unwrap_or_else(|| default_out("table1", a.format));
            write_figure(&figures::table1(), a.format, &path)
        }
        Command::Point(a) => {
            let fig = figures::point(a.theta, a.phi, a.t, a.nbar).map_err(invalid)?;
            print!("{}", fig.to_csv());
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(a) => {
            let report = verify::run(a.seed, a.samples as usize);
            print!("{}", report.render_table());
            Ok(if report.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn sweep_config(a: &SweepArgs, default_tmax: f64) -> Result<RunConfig, CliError> {
    let cavity = match (a.g, a.delta, a.k) {
        (Some(g), Some(delta), Some(k)) => Some((g, delta, k)),
        (None, None, None) => None,
        _ => return Err(CliError::Invalid("--g, --delta and --k must be given together".into())),
    };
    Ok(RunConfig {
        theta: a.theta,
        phi: a.phi,
        cavity,
        nbar: a.nbar,
        t_min: a.tmin,
        t_max: a.tmax.unwrap_or(default_tmax),
        steps: a.steps,
        format: a.format.into(),
    })
}

fn default_out(stem: &str, format: FormatArg) -> PathBuf {
    let ext = match format {
        FormatArg::Csv => "csv",
        FormatArg::Svg => "svg",
    };
    PathBuf::from(format!("{stem}.{ext}"))
}

fn emit(fig: &Figure, a: &SweepArgs, stem: &str) -> Result<ExitCode, CliError> {
    let path = a.out.clone().unwrap_or_else(|| default_out(stem, a.format));
    write_figure(fig, a.format, &path)
}

fn write_figure(fig: &Figure, format: FormatArg, path: &PathBuf) -> Result<ExitCode, CliError> {
    let content = match format {
        FormatArg::Csv => fig.to_csv(),
        FormatArg::Svg => fig.to_svg(),
    };
    std::fs::write(path, content).map_err(|e| CliError::Io(path.clone(), e))?;
    eprintln!("wrote {} ({} rows)", path.display(), fig.rows.len());
    Ok(ExitCode::SUCCESS)
}
