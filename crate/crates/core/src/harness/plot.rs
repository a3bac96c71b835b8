//! Plot-ready two-column series. Nothing is rendered here.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::chord::{surface_profiles, total_residuals};
use crate::error::Result;
use crate::estimators::{ede, ese};
use crate::model::{CurveSpec, SampledCurve};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlotSeries {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

impl PlotSeries {
    fn new(name: &str, points: Vec<(f64, f64)>) -> Self {
        PlotSeries { name: name.to_string(), points }
    }

    pub fn write_csv<W: Write>(&self, mut writer: W) -> Result<()> {
        writeln!(writer, "x,y")?;
        for (x, y) in &self.points {
            writeln!(writer, "{x:?},{y:?}")?;
        }
        Ok(())
    }
}

/// Data, chords, residuals, surface profiles and estimate markers for one
/// dataset. `truth` adds the noiseless model on the same grid.
pub fn plot_series(curve: &SampledCurve, truth: Option<&CurveSpec>) -> Vec<PlotSeries> {
    let (xs, ys) = (curve.xs(), curve.ys());
    let n = curve.intervals();
    let surface = ese(curve);
    let distance = ede(curve);
    let profiles = surface_profiles(curve);
    let at = |j: usize| (xs[j], ys[j]);

    let mut out = vec![PlotSeries::new("data", at_all(xs, ys))];
    if let Some(spec) = truth {
        out.push(PlotSeries::new("model", xs.iter().map(|&x| (x, spec.eval(x))).collect()));
    }
    out.push(PlotSeries::new("total-chord", vec![at(0), at(n)]));
    out.push(PlotSeries::new("left-chord", vec![at(0), at(surface.j_l)]));
    out.push(PlotSeries::new("right-chord", vec![at(surface.j_r), at(n)]));
    out.push(PlotSeries::new("residuals", at_all(xs, &total_residuals(curve))));
    out.push(PlotSeries::new("left-profile", at_all(xs, &profiles.left)));
    out.push(PlotSeries::new("right-profile", at_all(xs, &profiles.right)));
    out.push(PlotSeries::new("ese-markers", vec![at(surface.j_r), at(surface.j_l)]));
    out.push(PlotSeries::new("ede-markers", vec![at(distance.j_1), at(distance.j_2)]));
    let mut estimates = vec![(surface.chi_s, interpolate(xs, ys, surface.chi_s))];
    if let Some(d) = distance.chi_d {
        estimates.push((d, interpolate(xs, ys, d)));
    }
    out.push(PlotSeries::new("estimates", estimates));
    out
}

/// Write each series to `<dir>/<name>.csv`, creating `dir` if needed.
pub fn write_plot_data(dir: &Path, series: &[PlotSeries]) -> Result<()> {
    fs::create_dir_all(dir)?;
    for s in series {
        s.write_csv(fs::File::create(dir.join(format!("{}.csv", s.name)))?)?;
    }
    Ok(())
}

fn at_all(xs: &[f64], ys: &[f64]) -> Vec<(f64, f64)> {
    xs.iter().copied().zip(ys.iter().copied()).collect()
}

fn interpolate(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let i = xs.partition_point(|&v| v <= x).clamp(1, xs.len() - 1);
    let t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    ys[i - 1] + t * (ys[i] - ys[i - 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{sample, Family};

    #[test]
    fn series_for_fisher_pry() {
        let spec = Family::FisherPry.reference_curve();
        let curve = sample(&spec, 2.0, 8.0, 500).unwrap();
        let series = plot_series(&curve, Some(&spec));
        let names: Vec<&str> = series.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(
            names,
            [
                "data",
                "model",
                "total-chord",
                "left-chord",
                "right-chord",
                "residuals",
                "left-profile",
                "right-profile",
                "ese-markers",
                "ede-markers",
                "estimates"
            ]
        );
        let est = &series.last().unwrap().points;
        assert_eq!(est.len(), 2);
        assert!((est[0].0 - 5.0).abs() < 1e-12 && (est[0].1 - 5.0).abs() < 1e-3);
        let residuals = &series[5].points;
        assert_eq!(residuals.first().unwrap().1, 0.0);
        assert_eq!(residuals.last().unwrap().1, 0.0);
    }

    #[test]
    fn writes_csv_files() {
        let spec = Family::Gompertz.reference_curve();
        let curve = sample(&spec, 3.5, 8.0, 50).unwrap();
        let dir = tempfile::tempdir().unwrap();
        write_plot_data(dir.path(), &plot_series(&curve, None)).unwrap();
        let text = fs::read_to_string(dir.path().join("residuals.csv")).unwrap();
        assert_eq!(text.lines().count(), 52);
        assert!(!dir.path().join("model.csv").exists());
    }

    #[test]
    fn interpolation_is_linear() {
        let xs = [0.0, 1.0, 2.0];
        let ys = [0.0, 2.0, 0.0];
        assert_eq!(interpolate(&xs, &ys, 0.5), 1.0);
        assert_eq!(interpolate(&xs, &ys, 1.5), 1.0);
        assert_eq!(interpolate(&xs, &ys, 2.0), 0.0);
        assert_eq!(interpolate(&xs, &ys, 0.0), 0.0);
    }
}
