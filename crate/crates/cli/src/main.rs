use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gaussqt::cf_oracle::{fidelity_by_quadrature, QuadratureRule, QuadratureSpec};
use gaussqt::resources::{bs_resource, r_ent_threshold, r_qt_threshold, tmst, BsSpec, TmstSpec};
use gaussqt::sweep::{run_sweep, Axis, Family, OutputFormat, SweepConfig};
use gaussqt::{fidelity, CovMat, Error};

mod output;

use output::{Analysis, OracleReport, Sink, Thresholds};

/// Gaussian two-mode resource analysis for continuous-variable teleportation.
#[derive(Debug, Parser)]
#[command(name = "gaussqt", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; `sweep` defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write the result to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Suppress stdout and progress messages; exit codes and `--out` files are unaffected.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analyse a covariance matrix stored as JSON.
    Analyze { path: PathBuf },
    /// Build a resource state from parameters and analyse it.
    State {
        #[command(subcommand)]
        family: StateFamily,
        /// Also write the covariance matrix as JSON.
        #[arg(long, global = true, value_name = "PATH")]
        emit_cm: Option<PathBuf>,
    },
    /// Evaluate the criteria on a two-dimensional parameter grid.
    Sweep {
        #[command(subcommand)]
        family: SweepFamily,
    },
    /// Squeezing thresholds for entanglement and teleportation of the
    /// two-mode squeezed thermal state.
    Thresholds {
        #[arg(long)]
        k1: f64,
        #[arg(long)]
        k2: f64,
    },
    /// Compare the closed-form fidelity with direct quadrature.
    Oracle {
        #[command(subcommand)]
        source: OracleSource,
        #[command(flatten)]
        quadrature: QuadratureArgs,
    },
}

#[derive(Debug, Clone, Subcommand)]
enum StateFamily {
    /// Two-mode squeezed thermal state.
    Tmst(TmstArgs),
    /// Squeezed thermal state mixed with vacuum on a beam splitter.
    Bs(BsArgs),
}

impl StateFamily {
    fn build(&self) -> gaussqt::Result<CovMat> {
        match self {
            Self::Tmst(a) => Ok(tmst(&TmstSpec::new(a.r, a.k1, a.k2)?)),
            Self::Bs(a) => Ok(bs_resource(&BsSpec::new(a.r, a.k, a.t)?)),
        }
    }
}

#[derive(Debug, Clone, Args)]
struct TmstArgs {
    #[arg(long)]
    r: f64,
    #[arg(long)]
    k1: f64,
    #[arg(long)]
    k2: f64,
}

#[derive(Debug, Clone, Args)]
struct BsArgs {
    #[arg(long)]
    r: f64,
    #[arg(long)]
    k: f64,
    /// Beam-splitter transmittance, strictly between 0 and 1.
    #[arg(long = "T", value_name = "T")]
    t: f64,
}

#[derive(Debug, Subcommand)]
enum SweepFamily {
    /// Sweep (k1, k2) at fixed r.
    Tmst {
        #[arg(long, default_value_t = 0.48)]
        r: f64,
        #[arg(long, value_name = "MIN:MAX:STEPS", default_value = "0.5:2.5:201")]
        k1: String,
        #[arg(long, value_name = "MIN:MAX:STEPS", default_value = "0.5:2.5:201")]
        k2: String,
    },
    /// Sweep (k, T) at fixed r.
    Bs {
        #[arg(long, default_value_t = 0.5)]
        r: f64,
        #[arg(long, value_name = "MIN:MAX:STEPS", default_value = "0.5:2.5:151")]
        k: String,
        #[arg(long = "T", value_name = "MIN:MAX:STEPS", default_value = "0.05:0.95:151")]
        t: String,
    },
}

#[derive(Debug, Subcommand)]
enum OracleSource {
    Tmst(TmstArgs),
    Bs(BsArgs),
    /// Covariance matrix JSON file.
    File {
        path: PathBuf,
    },
}

#[derive(Debug, Args)]
struct QuadratureArgs {
    /// Half-width of the square integration domain.
    #[arg(long, global = true, default_value_t = 6.0)]
    radius: f64,
    /// Nodes per axis (odd).
    #[arg(long, global = true, default_value_t = 401)]
    points: usize,
    #[arg(long, global = true, value_enum, default_value_t = Rule::Midpoint)]
    rule: Rule,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Rule {
    Midpoint,
    GaussLegendre,
}

/// Process exit statuses.
mod status {
    pub const UNPHYSICAL: u8 = 2;
    pub const BAD_INPUT: u8 = 3;
    pub const GRID_TOO_LARGE: u8 = 4;
    pub const IO: u8 = 5;
    pub const ORACLE: u8 = 6;
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::PreconditionFailed(_) | Error::NumericalDomain(_) => status::UNPHYSICAL,
            Error::InvalidInput(_) | Error::Schema { .. } => status::BAD_INPUT,
            Error::GridTooLarge { .. } => status::GRID_TOO_LARGE,
            Error::Io { .. } => status::IO,
        };
        Failure { code, message: e.to_string() }
    }
}

fn read_cov_mat(path: &PathBuf) -> Result<CovMat, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| Error::Io { path: path.display().to_string(), source })?;
    Ok(CovMat::from_json(&text)?)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let sink = Sink { out: cli.out.clone(), quiet: cli.quiet };
    let format = |default: Format| cli.format.unwrap_or(default);
    match cli.command {
        Command::Analyze { path } => {
            let analysis = Analysis::of(&read_cov_mat(&path)?);
            sink.emit(|w| analysis.write(format(Format::Json), w))?;
            Ok(analysis.exit_code())
        }
        Command::State { family, emit_cm } => {
            let v = family.build()?;
            if let Some(path) = &emit_cm {
                std::fs::write(path, v.to_json() + "\n")
                    .map_err(|source| Error::Io { path: path.display().to_string(), source })?;
            }
            let analysis = Analysis::of(&v);
            sink.emit(|w| analysis.write(format(Format::Json), w))?;
            Ok(analysis.exit_code())
        }
        Command::Sweep { family } => {
            let (fam, r, axis1, axis2) = match &family {
                SweepFamily::Tmst { r, k1, k2 } => {
                    (Family::Tmst, *r, Axis::parse("k1", k1)?, Axis::parse("k2", k2)?)
                }
                SweepFamily::Bs { r, k, t } => (Family::Bs, *r, Axis::parse("k", k)?, Axis::parse("T", t)?),
            };
            let fmt: OutputFormat = format(Format::Csv).into();
            let config = SweepConfig::new(fam, r, axis1, axis2, cli.out.clone(), fmt)?;
            let grid = run_sweep(&config)?;
            sink.emit(|w| grid.write_to(fmt, w))?;
            if !cli.quiet && cli.out.is_some() {
                eprintln!("wrote {} rows", grid.rows.len());
            }
            Ok(0)
        }
        Command::Thresholds { k1, k2 } => {
            let table = Thresholds::new(k1, k2, r_ent_threshold(k1, k2)?, r_qt_threshold(k1, k2)?);
            sink.emit(|w| table.write(format(Format::Json), w))?;
            Ok(0)
        }
        Command::Oracle { source, quadrature } => {
            let v = match &source {
                OracleSource::Tmst(a) => StateFamily::Tmst(a.clone()).build()?,
                OracleSource::Bs(a) => StateFamily::Bs(a.clone()).build()?,
                OracleSource::File { path } => read_cov_mat(path)?,
            };
            let rule = match quadrature.rule {
                Rule::Midpoint => QuadratureRule::Midpoint,
                Rule::GaussLegendre => QuadratureRule::GaussLegendre,
            };
            let spec = QuadratureSpec::new(quadrature.radius, quadrature.points, rule)?;
            let closed = fidelity(&v)?;
            let quad = fidelity_by_quadrature(&v, &spec).map_err(|e| match e {
                Error::NumericalDomain(message) => Failure { code: status::ORACLE, message },
                other => other.into(),
            })?;
            let report = OracleReport::new(closed, &quad, spec);
            sink.emit(|w| report.write(format(Format::Json), w))?;
            Ok(if report.agrees() { 0 } else { status::ORACLE })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { status::BAD_INPUT } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
