//! Bisection-style refinement: re-run an estimator on the bracket it just
//! produced until the bracket collapses, the estimate settles, or too few
//! points remain.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{ede_slices, ese_slices};
use crate::model::{SampledCurve, MIN_POINTS};

/// Stopping tolerance on successive estimates.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RefineOptions {
    pub tolerance: f64,
    pub min_points: usize,
}

impl Default for RefineOptions {
    fn default() -> Self {
        Self { tolerance: DEFAULT_TOLERANCE, min_points: MIN_POINTS }
    }
}

impl RefineOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.min_points < MIN_POINTS {
            return Err(Error::InvalidParameter(format!(
                "min_points must be at least {MIN_POINTS}, got {}",
                self.min_points
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    /// The estimator's bracket is empty or inverted.
    IntervalCollapsed,
    /// Successive estimates differ by less than the tolerance, or the
    /// bracket reproduced itself.
    ToleranceMet,
    /// EDE found no admissible pair of extremes.
    NonDetection,
    /// The next bracket would hold fewer than `min_points` points.
    MinPoints,
}

/// One pass of the recursion. `lo`/`hi` index the original curve; the EDE
/// fields are only filled by [`bede`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterationRow {
    pub k: usize,
    pub lo: usize,
    pub hi: usize,
    pub chi_r: f64,
    pub chi_l: f64,
    pub chi_s: f64,
    pub chi_f1: Option<f64>,
    pub chi_f2: Option<f64>,
    pub chi_d: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationTrace {
    pub rows: Vec<IterationRow>,
    pub stop_reason: StopReason,
}

impl IterationTrace {
    /// Refinement passes after the initial one.
    pub fn iterations(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    /// Every row's bracket lies strictly inside its predecessor's.
    pub fn is_nested(&self) -> bool {
        self.rows.windows(2).all(|w| {
            let (outer, inner) = (&w[0], &w[1]);
            outer.lo <= inner.lo && inner.hi <= outer.hi && (outer.lo, outer.hi) != (inner.lo, inner.hi)
        })
    }
}

/// Iterated ESE. Recurses on `[j_r, j_l]` while `j_l > j_r`.
///
/// Returns the last `χ_S` and the full trace.
pub fn bese(curve: &SampledCurve, options: &RefineOptions) -> Result<(f64, IterationTrace)> {
    options.validate()?;
    let (xs, ys) = (curve.xs(), curve.ys());
    let (mut lo, mut hi) = (0, curve.intervals());
    let mut rows: Vec<IterationRow> = Vec::new();

    let stop_reason = loop {
        let report = ese_slices(&xs[lo..=hi], &ys[lo..=hi]);
        let previous = rows.last().map(|r| r.chi_s);
        rows.push(IterationRow {
            k: rows.len(),
            lo,
            hi,
            chi_r: report.chi_r,
            chi_l: report.chi_l,
            chi_s: report.chi_s,
            chi_f1: None,
            chi_f2: None,
            chi_d: None,
        });
        if report.j_l <= report.j_r {
            break StopReason::IntervalCollapsed;
        }
        if previous.is_some_and(|p| (report.chi_s - p).abs() < options.tolerance) {
            break StopReason::ToleranceMet;
        }
        match next_bracket(lo, hi, report.j_r, report.j_l, options.min_points) {
            Ok(bracket) => (lo, hi) = bracket,
            Err(reason) => break reason,
        }
    };

    let estimate = rows.last().map(|r| r.chi_s).expect("at least one pass");
    Ok((estimate, IterationTrace { rows, stop_reason }))
}

/// Iterated EDE. Recurses on `[j_1, j_2]` while EDE detects and `j_2 > j_1`;
/// ESE is evaluated on every bracket for the trace.
///
/// The estimate is the last available `χ_D`, `None` if EDE never detected.
pub fn bede(curve: &SampledCurve, options: &RefineOptions) -> Result<(Option<f64>, IterationTrace)> {
    options.validate()?;
    let (xs, ys) = (curve.xs(), curve.ys());
    let (mut lo, mut hi) = (0, curve.intervals());
    let mut rows: Vec<IterationRow> = Vec::new();
    let mut estimate: Option<f64> = None;

    let stop_reason = loop {
        let (sx, sy) = (&xs[lo..=hi], &ys[lo..=hi]);
        let distance = ede_slices(sx, sy);
        let surface = ese_slices(sx, sy);
        rows.push(IterationRow {
            k: rows.len(),
            lo,
            hi,
            chi_r: surface.chi_r,
            chi_l: surface.chi_l,
            chi_s: surface.chi_s,
            chi_f1: Some(distance.chi_f1),
            chi_f2: Some(distance.chi_f2),
            chi_d: distance.chi_d,
        });
        let Some(chi_d) = distance.chi_d else {
            break StopReason::NonDetection;
        };
        let previous = estimate.replace(chi_d);
        if distance.j_2 <= distance.j_1 {
            break StopReason::IntervalCollapsed;
        }
        if previous.is_some_and(|p| (chi_d - p).abs() < options.tolerance) {
            break StopReason::ToleranceMet;
        }
        match next_bracket(lo, hi, distance.j_1, distance.j_2, options.min_points) {
            Ok(bracket) => (lo, hi) = bracket,
            Err(reason) => break reason,
        }
    };

    Ok((estimate, IterationTrace { rows, stop_reason }))
}

/// Map a local bracket to global indices, or say why the recursion ends.
fn next_bracket(
    lo: usize,
    hi: usize,
    local_lo: usize,
    local_hi: usize,
    min_points: usize,
) -> std::result::Result<(usize, usize), StopReason> {
    let (next_lo, next_hi) = (lo + local_lo, lo + local_hi);
    if next_hi - next_lo + 1 < min_points {
        return Err(StopReason::MinPoints);
    }
    if (next_lo, next_hi) == (lo, hi) {
        // The same data would give the same estimate again.
        return Err(StopReason::ToleranceMet);
    }
    Ok((next_lo, next_hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{sample, Family};

    fn grid(family: Family, a: f64, b: f64) -> SampledCurve {
        sample(&family.reference_curve(), a, b, 500).unwrap()
    }

    #[test]
    fn bese_fisher_pry_left_asymmetric() {
        let (estimate, trace) = bese(&grid(Family::FisherPry, 4.2, 8.0), &RefineOptions::default()).unwrap();
        let chi_s: Vec<f64> = trace.rows.iter().map(|r| r.chi_s).collect();
        // Refinement passes track the tabulated sequence to within a grid step.
        let step = 3.8 / 500.0;
        for (got, want) in chi_s[1..].iter().zip([5.0930, 4.9562, 5.0208, 4.9904, 5.0056]) {
            assert!((got - want).abs() <= step, "{chi_s:?}");
        }
        assert!((estimate - 5.0).abs() < 0.01);
        assert!(trace.is_nested());
    }

    #[test]
    fn bede_fisher_pry_left_asymmetric() {
        let (estimate, trace) = bede(&grid(Family::FisherPry, 4.2, 8.0), &RefineOptions::default()).unwrap();
        let chi_d: Vec<f64> = trace.rows.iter().map(|r| r.chi_d.unwrap()).collect();
        for (got, want) in chi_d[1..].iter().zip([5.0018, 4.9980, 5.0018, 4.9980, 4.9980]) {
            assert!((got - want).abs() < 1e-9, "{chi_d:?}");
        }
        assert!((estimate.unwrap() - 4.998).abs() < 1e-9);
        assert_eq!(trace.stop_reason, StopReason::ToleranceMet);
    }

    #[test]
    fn bede_gompertz_matches_table() {
        let (_, trace) = bede(&grid(Family::Gompertz, 3.5, 8.0), &RefineOptions::default()).unwrap();
        let chi_d: Vec<f64> = trace.rows.iter().map(|r| r.chi_d.unwrap()).collect();
        for (got, want) in chi_d[1..].iter().zip([5.0615, 5.0165, 5.0075, 5.0030, 4.9985, 4.9985]) {
            assert!((got - want).abs() < 1e-9, "{chi_d:?}");
        }
    }

    #[test]
    fn converged_input_stops_after_one_row() {
        let c = grid(Family::FisherPry, 2.0, 8.0).subcurve(240, 245).unwrap();
        let options = RefineOptions { min_points: 10, ..Default::default() };
        let (_, trace) = bese(&c, &options).unwrap();
        assert_eq!(trace.rows.len(), 1);
        assert_eq!(trace.stop_reason, StopReason::MinPoints);
    }

    #[test]
    fn convex_data_is_a_non_detection() {
        let xs: Vec<f64> = (0..=50).map(|i| i as f64 / 50.0).collect();
        let ys = xs.iter().map(|x| x * x).collect();
        let (estimate, trace) = bede(&SampledCurve::new(xs, ys).unwrap(), &RefineOptions::default()).unwrap();
        assert!(estimate.is_none());
        assert_eq!(trace.rows.len(), 1);
        assert_eq!(trace.stop_reason, StopReason::NonDetection);
    }

    #[test]
    fn symmetric_window_converges_at_once() {
        let (estimate, trace) = bese(&grid(Family::FisherPry, 2.0, 8.0), &RefineOptions::default()).unwrap();
        assert!((estimate - 5.0).abs() < 1e-12);
        assert_eq!(trace.stop_reason, StopReason::ToleranceMet);
        assert_eq!(trace.rows.len(), 2);
    }

    #[test]
    fn invalid_options_rejected() {
        let c = grid(Family::FisherPry, 2.0, 8.0);
        assert!(bese(&c, &RefineOptions { tolerance: 0.0, min_points: 4 }).is_err());
        assert!(bede(&c, &RefineOptions { tolerance: 1e-8, min_points: 3 }).is_err());
    }

    #[test]
    fn recursion_is_self_similar() {
        let c = grid(Family::Gompertz, 3.5, 8.0);
        let options = RefineOptions::default();
        for run in [bese, |c: &SampledCurve, o: &RefineOptions| bede(c, o).map(|(e, t)| (e.unwrap_or(f64::NAN), t))] {
            let (_, full) = run(&c, &options).unwrap();
            let first = full.rows[1];
            let (_, tail) = run(&c.subcurve(first.lo, first.hi).unwrap(), &options).unwrap();
            assert_eq!(tail.rows.len(), full.rows.len() - 1);
            for (t, f) in tail.rows.iter().zip(&full.rows[1..]) {
                assert_eq!(t.lo + first.lo, f.lo);
                assert_eq!(t.hi + first.lo, f.hi);
                assert_eq!(t.chi_s, f.chi_s);
                assert_eq!(t.chi_d, f.chi_d);
            }
            assert_eq!(tail.stop_reason, full.stop_reason);
        }
    }
}
