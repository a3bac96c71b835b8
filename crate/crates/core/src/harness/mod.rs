//! Experiment runner: sample a catalog curve, optionally perturb it, run the
//! requested estimators over one or many replicates and summarise.
//!
//! Replicate `k` perturbs with seed `noise.seed + k`, so a report is a pure
//! function of its configuration. Replicates run in parallel but are always
//! aggregated in index order.

mod paper;
mod plot;
pub mod stats;

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chord::composite_trapezoid;
use crate::cubic::cubic_corrected_p;
use crate::error::{Error, Result};
use crate::estimators::{ede, ese, reference_points_default, EdeReport, EseReport, TheoreticalPoints};
use crate::model::{add_noise, sample, CurveSpec, NoiseSpec, SampledCurve};
use crate::refine::{bede, bese, IterationTrace, RefineOptions};

pub use paper::{
    reproduce_paper, reproduce_paper_with, table_names, Check, ReproduceOptions, TableReport, ToleranceClass,
    DEFAULT_REPLICATES, DEFAULT_SEED,
};
pub use plot::{plot_series, write_plot_data, PlotSeries};

/// Replicates required by [`variance_scaling_study`].
pub const MIN_VARIANCE_REPLICATES: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Ese,
    Ede,
    Bese,
    Bede,
    CubicCorrection,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Ese, Method::Ede, Method::Bese, Method::Bede, Method::CubicCorrection];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Ese => "ese",
            Method::Ede => "ede",
            Method::Bese => "bese",
            Method::Bede => "bede",
            Method::CubicCorrection => "cubic-correction",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ese" => Ok(Method::Ese),
            "ede" => Ok(Method::Ede),
            "bese" => Ok(Method::Bese),
            "bede" => Ok(Method::Bede),
            "cubic-correction" | "cubic" => Ok(Method::CubicCorrection),
            other => Err(Error::InvalidParameter(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub curve: CurveSpec,
    pub a: f64,
    pub b: f64,
    /// Number of subintervals; the grid has `n + 1` points.
    pub n: usize,
    pub noise: Option<NoiseSpec>,
    pub methods: Vec<Method>,
    pub replicates: usize,
    pub refine: RefineOptions,
}

impl ExperimentConfig {
    /// A single noiseless run.
    pub fn new(curve: CurveSpec, a: f64, b: f64, n: usize, methods: &[Method]) -> Self {
        ExperimentConfig {
            curve,
            a,
            b,
            n,
            noise: None,
            methods: methods.to_vec(),
            replicates: 1,
            refine: RefineOptions::default(),
        }
    }

    pub fn with_noise(mut self, noise: NoiseSpec, replicates: usize) -> Self {
        self.noise = Some(noise);
        self.replicates = replicates;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.curve.validate()?;
        if !(self.a.is_finite() && self.b.is_finite() && self.a < self.b) {
            return Err(Error::InvalidInterval { a: self.a, b: self.b });
        }
        if self.n + 1 < crate::model::MIN_POINTS {
            return Err(Error::TooFewPoints { got: self.n + 1, min: crate::model::MIN_POINTS });
        }
        if self.methods.is_empty() {
            return Err(Error::InvalidParameter("no methods requested".into()));
        }
        if self.replicates == 0 {
            return Err(Error::InvalidParameter("replicates must be at least 1".into()));
        }
        if self.replicates > 1 && self.noise.is_none() {
            return Err(Error::InvalidParameter("replicates > 1 requires noise".into()));
        }
        self.refine.validate()
    }

    fn wants(&self, method: Method) -> bool {
        self.methods.contains(&method)
    }

    /// The seed used for replicate `k`, if noisy.
    pub fn replicate_seed(&self, k: usize) -> Option<u64> {
        self.noise.map(|n| n.seed.wrapping_add(k as u64))
    }

    /// The (possibly perturbed) data seen by replicate `k`.
    pub fn replicate_data(&self, k: usize) -> Result<SampledCurve> {
        let clean = sample(&self.curve, self.a, self.b, self.n)?;
        Ok(match self.noise {
            Some(noise) => add_noise(&clean, &noise.with_seed(noise.seed.wrapping_add(k as u64))),
            None => clean,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefineResult {
    pub estimate: Option<f64>,
    pub trace: IterationTrace,
}

/// Everything computed for one replicate. Fields are `None` when the
/// method was not requested.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicateResult {
    pub replicate: usize,
    pub seed: Option<u64>,
    pub ese: Option<EseReport>,
    pub ede: Option<EdeReport>,
    pub bese: Option<RefineResult>,
    pub bede: Option<RefineResult>,
    pub cubic_corrected: Option<f64>,
    pub error: Option<String>,
}

impl ReplicateResult {
    fn empty(replicate: usize, seed: Option<u64>) -> Self {
        ReplicateResult {
            replicate,
            seed,
            ese: None,
            ede: None,
            bese: None,
            bede: None,
            cubic_corrected: None,
            error: None,
        }
    }

    /// True if any requested method produced a point estimate.
    pub fn has_estimate(&self) -> bool {
        Estimator::ALL.iter().any(|&e| self.estimate(e).is_some())
    }

    /// The point estimate of one summarised estimator.
    pub fn estimate(&self, estimator: Estimator) -> Option<f64> {
        match estimator {
            Estimator::ChiS => self.ese.map(|r| r.chi_s),
            Estimator::ChiD => self.ede.and_then(|r| r.chi_d),
            Estimator::Bese => self.bese.as_ref().and_then(|r| r.estimate),
            Estimator::Bede => self.bede.as_ref().and_then(|r| r.estimate),
            Estimator::CubicCorrected => self.cubic_corrected,
        }
    }
}

/// The scalar estimates that get summary statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Estimator {
    ChiS,
    ChiD,
    Bese,
    Bede,
    CubicCorrected,
}

impl Estimator {
    pub const ALL: [Estimator; 5] =
        [Estimator::ChiS, Estimator::ChiD, Estimator::Bese, Estimator::Bede, Estimator::CubicCorrected];

    fn method(self) -> Method {
        match self {
            Estimator::ChiS => Method::Ese,
            Estimator::ChiD => Method::Ede,
            Estimator::Bese => Method::Bese,
            Estimator::Bede => Method::Bede,
            Estimator::CubicCorrected => Method::CubicCorrection,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Estimator::ChiS => "chi-s",
            Estimator::ChiD => "chi-d",
            Estimator::Bese => "bese",
            Estimator::Bede => "bede",
            Estimator::CubicCorrected => "cubic-corrected",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimatorSummary {
    pub estimator: Estimator,
    /// Replicates that produced an estimate.
    pub count: usize,
    /// Replicates without an estimate (non-detection or error).
    pub missing: usize,
    pub mean: Option<f64>,
    /// Sample standard deviation (divisor `count − 1`).
    pub std_dev: Option<f64>,
    /// `mean − p` for the true inflection point `p`.
    pub bias: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub true_inflection: f64,
    /// Theoretical points from the reference solver; `None` if it failed.
    pub reference: Option<TheoreticalPoints>,
    pub replicates: Vec<ReplicateResult>,
    pub summaries: Vec<EstimatorSummary>,
}

impl ExperimentReport {
    pub fn summary(&self, estimator: Estimator) -> Option<&EstimatorSummary> {
        self.summaries.iter().find(|s| s.estimator == estimator)
    }

    /// The estimates of one estimator across replicates, skipping gaps.
    pub fn values(&self, estimator: Estimator) -> Vec<f64> {
        self.replicates.iter().filter_map(|r| r.estimate(estimator)).collect()
    }

    pub fn to_json<W: Write>(&self, writer: W) -> Result<()> {
        serde_json::to_writer_pretty(writer, self)?;
        Ok(())
    }

    /// One CSV row per replicate with the scalar estimates.
    pub fn write_replicates_csv<W: Write>(&self, mut writer: W) -> Result<()> {
        writeln!(writer, "replicate,seed,chi_r,chi_l,chi_s,chi_f1,chi_f2,chi_d,bese,bede,cubic_corrected,error")?;
        for r in &self.replicates {
            let cells = [
                r.ese.map(|e| e.chi_r),
                r.ese.map(|e| e.chi_l),
                r.ese.map(|e| e.chi_s),
                r.ede.map(|e| e.chi_f1),
                r.ede.map(|e| e.chi_f2),
                r.ede.and_then(|e| e.chi_d),
                r.estimate(Estimator::Bese),
                r.estimate(Estimator::Bede),
                r.cubic_corrected,
            ];
            write!(writer, "{},{}", r.replicate, r.seed.map(|s| s.to_string()).unwrap_or_default())?;
            for cell in cells {
                write!(writer, ",{}", cell.map(|v| format!("{v:?}")).unwrap_or_default())?;
            }
            writeln!(writer, ",{}", r.error.as_deref().unwrap_or("").replace([',', '\n'], ";"))?;
        }
        Ok(())
    }
}

/// Result of analysing user-supplied data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub source: Option<String>,
    pub points: usize,
    pub a: f64,
    pub b: f64,
    /// Whether the ordinates were negated to reach convex-then-concave form.
    pub flipped: bool,
    pub methods: Vec<Method>,
    pub refine: RefineOptions,
    pub result: ReplicateResult,
}

pub fn read_analysis_report<R: Read>(reader: R) -> Result<AnalysisReport> {
    Ok(serde_json::from_reader(reader)?)
}

/// Parse a report previously written with [`ExperimentReport::to_json`].
pub fn read_report<R: Read>(reader: R) -> Result<ExperimentReport> {
    Ok(serde_json::from_reader(reader)?)
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let clean = sample(&config.curve, config.a, config.b, config.n)?;
    let replicates: Vec<ReplicateResult> = (0..config.replicates)
        .into_par_iter()
        .map(|k| {
            let seed = config.replicate_seed(k);
            let data = match config.noise {
                Some(noise) => add_noise(&clean, &noise.with_seed(seed.expect("noisy"))),
                None => clean.clone(),
            };
            analyze(&data, config, k, seed)
        })
        .collect();
    Ok(assemble(config.clone(), replicates))
}

/// Run the configured methods on externally supplied data.
pub fn analyze_curve(curve: &SampledCurve, methods: &[Method], refine: &RefineOptions) -> ReplicateResult {
    let mut out = ReplicateResult::empty(0, None);
    if let Err(e) = run_methods(curve, methods, refine, &mut out) {
        out.error = Some(e.to_string());
    }
    out
}

fn analyze(data: &SampledCurve, config: &ExperimentConfig, k: usize, seed: Option<u64>) -> ReplicateResult {
    ReplicateResult { replicate: k, seed, ..analyze_curve(data, &config.methods, &config.refine) }
}

fn run_methods(data: &SampledCurve, methods: &[Method], refine: &RefineOptions, out: &mut ReplicateResult) -> Result<()> {
    let wants = |m| methods.contains(&m);
    if wants(Method::Ese) || wants(Method::CubicCorrection) {
        let surface = ese(data);
        out.ese = Some(surface);
        if wants(Method::CubicCorrection) {
            out.cubic_corrected = Some(cubic_corrected_p(surface.chi_l, surface.chi_r, data.a(), data.b()));
        }
    }
    if wants(Method::Ede) {
        out.ede = Some(ede(data));
    }
    if wants(Method::Bese) {
        let (estimate, trace) = bese(data, refine)?;
        out.bese = Some(RefineResult { estimate: Some(estimate), trace });
    }
    if wants(Method::Bede) {
        let (estimate, trace) = bede(data, refine)?;
        out.bede = Some(RefineResult { estimate, trace });
    }
    Ok(())
}

fn assemble(config: ExperimentConfig, replicates: Vec<ReplicateResult>) -> ExperimentReport {
    let p = config.curve.inflection();
    let reference = reference_points_default(&config.curve, config.a, config.b).ok();
    let summaries = Estimator::ALL
        .iter()
        .filter(|e| config.wants(e.method()))
        .map(|&estimator| summarize(estimator, &replicates, p))
        .collect();
    ExperimentReport { config, true_inflection: p, reference, replicates, summaries }
}

/// Summary statistics of one estimator over replicate rows.
pub fn summarize(estimator: Estimator, rows: &[ReplicateResult], p: f64) -> EstimatorSummary {
    let values: Vec<f64> = rows.iter().filter_map(|r| r.estimate(estimator)).collect();
    let mean = stats::mean(&values);
    EstimatorSummary {
        estimator,
        count: values.len(),
        missing: rows.len() - values.len(),
        mean,
        std_dev: stats::std_dev(&values),
        bias: mean.map(|m| m - p),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VarianceRow {
    pub n: usize,
    /// Sample variance of the composite trapezoid over replicates.
    pub empirical: f64,
    /// `(b − a)² σ² / (2n)`.
    pub theoretical: f64,
    /// `σ² Σ wᵢ²` for the actual trapezoid weights.
    pub exact: f64,
}

/// Variance of the composite trapezoid of noisy data, per grid size.
///
/// Uses `config.replicates` perturbations (seed ladder as in
/// [`run_experiment`]) at each `n`; `config.n` and `config.methods` are
/// ignored.
pub fn variance_scaling_study(config: &ExperimentConfig, n_values: &[usize]) -> Result<Vec<VarianceRow>> {
    config.curve.validate()?;
    let noise = config
        .noise
        .ok_or_else(|| Error::InvalidParameter("variance study requires noise".into()))?;
    if config.replicates < MIN_VARIANCE_REPLICATES {
        return Err(Error::InvalidParameter(format!(
            "variance study requires at least {MIN_VARIANCE_REPLICATES} replicates"
        )));
    }
    let sigma2 = noise.variance();
    let width = config.b - config.a;
    n_values
        .iter()
        .map(|&n| {
            let clean = sample(&config.curve, config.a, config.b, n)?;
            let integrals: Vec<f64> = (0..config.replicates)
                .into_par_iter()
                .map(|k| composite_trapezoid(&add_noise(&clean, &noise.with_seed(noise.seed.wrapping_add(k as u64)))))
                .collect();
            let weights_sq: f64 = (0..=n)
                .map(|i| {
                    let xs = clean.xs();
                    let left = if i > 0 { xs[i] - xs[i - 1] } else { 0.0 };
                    let right = if i < n { xs[i + 1] - xs[i] } else { 0.0 };
                    let w = 0.5 * (left + right);
                    w * w
                })
                .sum();
            Ok(VarianceRow {
                n,
                empirical: stats::variance(&integrals).expect("replicates > 0"),
                theoretical: width * width * sigma2 / (2.0 * n as f64),
                exact: sigma2 * weights_sq,
            })
        })
        .collect()
}
