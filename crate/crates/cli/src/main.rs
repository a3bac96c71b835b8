//! `inflexion`: estimate inflection points of sampled data from the command line.
//!
//! Exit codes: 0 when an estimate was produced (or every reproduction check
//! passed), 1 on malformed input or I/O failure, 2 when no method produced
//! an estimate (or a reproduction check failed).

mod format;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use inflexion::estimators::orient;
use inflexion::harness::{
    analyze_curve, plot_series, reproduce_paper_with, run_experiment, write_plot_data, AnalysisReport,
    ExperimentConfig, Method, ReproduceOptions,
};
use inflexion::io::{read_curve_csv_path, write_curve_csv};
use inflexion::model::CurveSpec;
use inflexion::{Error, Family, NoiseSpec, RefineOptions, Shape};

#[derive(Parser)]
#[command(name = "inflexion", version, about = "Inflection-point estimation for convex/concave sampled data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse a two-column x,y CSV file.
    Analyze(AnalyzeArgs),
    /// Sample a catalog curve, optionally add noise, and analyse it.
    Simulate(SimulateArgs),
    /// Re-run the published experiments and check them against the printed values.
    Reproduce(ReproduceArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Args)]
struct MethodArgs {
    /// Comma-separated methods: ese, ede, bese, bede, cubic-correction.
    #[arg(long, value_delimiter = ',', default_value = "ese,ede")]
    method: Vec<Method>,
    /// Refinement stopping tolerance.
    #[arg(long, default_value_t = inflexion::refine::DEFAULT_TOLERANCE)]
    tolerance: f64,
    /// Smallest bracket (in points) a refinement may recurse into.
    #[arg(long, default_value_t = inflexion::model::MIN_POINTS)]
    min_points: usize,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Write plot-ready CSV series into this directory.
    #[arg(long)]
    plot_dir: Option<PathBuf>,
}

impl MethodArgs {
    fn refine(&self) -> RefineOptions {
        RefineOptions { tolerance: self.tolerance, min_points: self.min_points }
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Input CSV with columns x,y (one optional header line).
    path: PathBuf,
    /// Curve orientation: convex-concave, concave-convex or auto (flips concave-then-convex data).
    #[arg(long, default_value = "auto")]
    shape: Shape,
    #[command(flatten)]
    methods: MethodArgs,
}

#[derive(Args)]
struct SimulateArgs {
    /// Catalog curve: fisher-pry, gompertz or cubic.
    #[arg(long)]
    curve: Family,
    /// Left end of the sampling interval
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    /// Right end of the sampling interval
    #[arg(long, allow_negative_numbers = true)]
    b: f64,
    /// Number of subintervals.
    #[arg(long, default_value_t = 500)]
    n: usize,
    /// Additive noise, e.g. `uniform:0.05` or `normal:0.05`.
    #[arg(long)]
    noise: Option<NoiseSpec>,
    /// Seed of the first replicate's noise stream
    #[arg(long, env = "INFLEXION_SEED", default_value_t = 0)]
    seed: u64,
    /// Number of noisy replicates (seed, seed + 1, ...).
    #[arg(long, default_value_t = 1)]
    replicates: usize,
    /// Where to write the (first replicate's) sampled data.
    #[arg(long, default_value = "simulated.csv")]
    data_out: PathBuf,
    #[command(flatten)]
    methods: MethodArgs,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Directory for one JSON report per table.
    #[arg(long, default_value = "reproduction")]
    out: PathBuf,
    /// Comma-separated table names to run (default: all).
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
    /// Seeds per statistical table.
    #[arg(long, default_value_t = inflexion::harness::DEFAULT_REPLICATES)]
    replicates: usize,
    #[arg(long, env = "INFLEXION_SEED", default_value_t = inflexion::harness::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

/// Failure modes that map onto exit codes.
enum Failure {
    Input(Error),
    NoEstimate(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.into())
    }
}

fn main() -> ExitCode {
    // Usage errors count as malformed input (exit 1), not clap's default 2.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Analyze(args) => analyze(args),
        Command::Simulate(args) => simulate(args),
        Command::Reproduce(args) => reproduce(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::NoEstimate(message)) => {
            eprintln!("{message}");
            ExitCode::from(2)
        }
    }
}

fn analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    let refine = args.methods.refine();
    refine.validate()?;
    let data = read_curve_csv_path(&args.path)?;
    let (oriented, flipped) = match orient(&data, args.shape) {
        Ok(v) => v,
        Err(e @ Error::OrientationUndetermined) => return Err(Failure::NoEstimate(format!("no inflection detected: {e}"))),
        Err(e) => return Err(e.into()),
    };
    let result = analyze_curve(&oriented, &args.methods.method, &refine);
    if let Some(e) = &result.error {
        return Err(Failure::Input(Error::InvalidParameter(e.clone())));
    }
    if let Some(dir) = &args.methods.plot_dir {
        write_plot_data(dir, &plot_series(&oriented, None))?;
    }
    let report = AnalysisReport {
        source: Some(args.path.display().to_string()),
        points: data.len(),
        a: data.a(),
        b: data.b(),
        flipped,
        methods: args.methods.method.clone(),
        refine,
        result,
    };

    let mut out = io::stdout().lock();
    match args.methods.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &report).map_err(Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => format::analysis_csv(&mut out, std::slice::from_ref(&report.result))?,
        Format::Plain => format::analysis_plain(&mut out, &report)?,
    }
    out.flush()?;
    verdict(report.result.has_estimate(), &report.result)
}

fn simulate(args: SimulateArgs) -> Result<(), Failure> {
    let curve: CurveSpec = args.curve.reference_curve();
    let mut config = ExperimentConfig::new(curve, args.a, args.b, args.n, &args.methods.method);
    config.refine = args.methods.refine();
    if let Some(noise) = args.noise {
        config = config.with_noise(noise.with_seed(args.seed), args.replicates);
    } else if args.replicates != 1 {
        return Err(Error::InvalidParameter("--replicates > 1 requires --noise".into()).into());
    }
    config.validate()?;

    let first = config.replicate_data(0)?;
    write_data(&args.data_out, &first)?;
    if let Some(dir) = &args.methods.plot_dir {
        write_plot_data(dir, &plot_series(&first, Some(&curve)))?;
    }

    let report = run_experiment(&config)?;
    let mut out = io::stdout().lock();
    match args.methods.format {
        Format::Json => {
            report.to_json(&mut out)?;
            writeln!(out)?;
        }
        Format::Csv => format::analysis_csv(&mut out, &report.replicates)?,
        Format::Plain => format::experiment_plain(&mut out, &report)?,
    }
    out.flush()?;
    let any = report.replicates.iter().any(|r| r.has_estimate());
    verdict(any, &report.replicates[0])
}

fn write_data(path: &Path, data: &inflexion::SampledCurve) -> Result<(), Failure> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    write_curve_csv(data, io::BufWriter::new(fs::File::create(path)?))?;
    Ok(())
}

fn verdict(any_estimate: bool, first: &inflexion::harness::ReplicateResult) -> Result<(), Failure> {
    if any_estimate {
        return Ok(());
    }
    let reason = match first.ede {
        Some(e) if e.chi_d.is_none() => "EDE non-detection (chi_F2 < chi_F1)",
        _ => "no method produced an estimate",
    };
    Err(Failure::NoEstimate(format!("no inflection detected: {reason}")))
}

fn reproduce(args: ReproduceArgs) -> Result<(), Failure> {
    let options = ReproduceOptions { replicates: args.replicates, seed: args.seed, only: args.only };
    let tables = reproduce_paper_with(&options)?;
    fs::create_dir_all(&args.out)?;
    for table in &tables {
        let file = fs::File::create(args.out.join(format!("{}.json", table.name)))?;
        let mut w = io::BufWriter::new(file);
        serde_json::to_writer_pretty(&mut w, table).map_err(Error::from)?;
        w.flush()?;
    }

    let mut out = io::stdout().lock();
    match args.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &format::bundle_summary(&tables)).map_err(Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => format::checks_csv(&mut out, &tables)?,
        Format::Plain => format::checks_plain(&mut out, &tables)?,
    }
    out.flush()?;

    let failed = tables.iter().filter(|t| !t.passed).count();
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::NoEstimate(format!("{failed} of {} tables failed", tables.len())))
    }
}
