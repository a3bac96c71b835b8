//! The extremum-surface (ESE) and extremum-distance (EDE) estimators, the
//! analytic reference solver, and orientation handling.
//!
//! Indices are 0-based positions in the curve. Ties between equal extreme
//! values resolve to the smaller index.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::chord::{profiles_from_slices, residuals_from_slices};
use crate::error::{Error, Result};
use crate::model::{CurveSpec, SampledCurve};
use crate::solver::{scan_roots, Root, SCAN_SUBINTERVALS};

/// Window extension used by [`reference_points_default`], as a fraction of `b − a`.
pub const DEFAULT_WINDOW_EXTENSION: f64 = 0.1;

/// Relative threshold below which auto orientation gives up.
pub const LINEAR_DATA_TOLERANCE: f64 = 1e-12;

/// Output of one ESE pass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EseReport {
    pub j_r: usize,
    pub j_l: usize,
    pub chi_r: f64,
    pub chi_l: f64,
    pub chi_s: f64,
}

/// Output of one EDE pass. `chi_d` is absent when the minimum of the
/// residuals lies to the right of the maximum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdeReport {
    pub j_1: usize,
    pub j_2: usize,
    pub chi_f1: f64,
    pub chi_f2: f64,
    pub chi_d: Option<f64>,
}

pub fn ese(curve: &SampledCurve) -> EseReport {
    ese_slices(curve.xs(), curve.ys())
}

pub(crate) fn ese_slices(xs: &[f64], ys: &[f64]) -> EseReport {
    let n = xs.len() - 1;
    let profiles = profiles_from_slices(xs, ys);
    let j_l = 1 + argmin(&profiles.left[1..=n]);
    let j_r = argmax(&profiles.right[..n]);
    let (chi_r, chi_l) = (xs[j_r], xs[j_l]);
    EseReport { j_r, j_l, chi_r, chi_l, chi_s: 0.5 * (chi_l + chi_r) }
}

pub fn ede(curve: &SampledCurve) -> EdeReport {
    ede_slices(curve.xs(), curve.ys())
}

pub(crate) fn ede_slices(xs: &[f64], ys: &[f64]) -> EdeReport {
    let residuals = residuals_from_slices(xs, ys);
    let j_1 = argmin(&residuals);
    let j_2 = argmax(&residuals);
    let (chi_f1, chi_f2) = (xs[j_1], xs[j_2]);
    let chi_d = (chi_f2 >= chi_f1).then_some(0.5 * (chi_f1 + chi_f2));
    EdeReport { j_1, j_2, chi_f1, chi_f2, chi_d }
}

fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v < values[best] {
            best = i;
        }
    }
    best
}

fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

/// Analytic tangency and parallel-tangent points of a catalog curve on
/// `[a, b]`, with the theoretical estimators built from them.
///
/// Each point is `None` when its search window has no sign change.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoreticalPoints {
    pub a: f64,
    pub b: f64,
    /// Left-chord tangency, searched on `(a, b + δ₁]`.
    pub x_l: Option<f64>,
    /// Right-chord tangency, searched on `[a − δ₂, b)`.
    pub x_r: Option<f64>,
    /// Parallel tangent with `f″ > 0` (minimum of the residual).
    pub x_f1: Option<f64>,
    /// Parallel tangent with `f″ < 0` (maximum of the residual).
    pub x_f2: Option<f64>,
    /// Theoretical ESE: midpoint of `x_l`, `x_r` with an uncontained point
    /// replaced by the nearer window end.
    pub x_s: Option<f64>,
    /// Plain midpoint `(x_l + x_r)/2`, no boundary substitution.
    pub x_s_midpoint: Option<f64>,
    /// Theoretical EDE `(x_F1 + x_F2)/2`.
    pub x_d: Option<f64>,
    /// What EDE on data can reach: `x_F1`, `x_F2` clamped to `[a, b]`.
    pub x_d_clamped: Option<f64>,
    pub contains: Containment,
}

/// Whether each reference point lies in `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Containment {
    pub x_l: bool,
    pub x_r: bool,
    pub x_f1: bool,
    pub x_f2: bool,
}

/// Reference points with the default window extension of 10% of `b − a`.
pub fn reference_points_default(spec: &CurveSpec, a: f64, b: f64) -> Result<TheoreticalPoints> {
    let delta = DEFAULT_WINDOW_EXTENSION * (b - a);
    reference_points(spec, a, b, delta, delta)
}

/// Solve the tangency conditions of `spec` on `[a, b]`.
///
/// * `x_l`: `f′(x) = (f(x) − f(a))/(x − a)`, first root right of `a`.
/// * `x_r`: `f′(x) = (f(b) − f(x))/(b − x)`, last root left of `b`.
/// * `x_F1`, `x_F2`: `f′(x) = (f(b) − f(a))/(b − a)` on `[a − δ₂, b + δ₁]`,
///   told apart by the direction of the crossing (sign of `f″`).
pub fn reference_points(
    spec: &CurveSpec,
    a: f64,
    b: f64,
    delta1: f64,
    delta2: f64,
) -> Result<TheoreticalPoints> {
    if !(a < b) {
        return Err(Error::InvalidInterval { a, b });
    }
    if !(delta1 >= 0.0 && delta2 >= 0.0) {
        return Err(Error::InvalidParameter("window extensions must be non-negative".into()));
    }
    let f = |x: f64| spec.eval(x);
    let df = |x: f64| spec.eval_d1(x);
    let (fa, fb) = (f(a), f(b));

    // Start one scan cell away from the removable singularity at the anchor.
    let left_hi = b + delta1;
    let left_lo = a + (left_hi - a) / SCAN_SUBINTERVALS as f64;
    let x_l = scan_roots(|x| df(x) - (f(x) - fa) / (x - a), left_lo, left_hi, SCAN_SUBINTERVALS)?
        .first()
        .map(|r| r.x);

    let right_lo = a - delta2;
    let right_hi = b - (b - right_lo) / SCAN_SUBINTERVALS as f64;
    let x_r = scan_roots(|x| df(x) - (fb - f(x)) / (b - x), right_lo, right_hi, SCAN_SUBINTERVALS)?
        .last()
        .map(|r| r.x);

    let lambda = (fb - fa) / (b - a);
    let parallel: Vec<Root> =
        scan_roots(|x| df(x) - lambda, a - delta2, b + delta1, SCAN_SUBINTERVALS)?;
    let x_f1 = parallel.iter().find(|r| r.rising).map(|r| r.x);
    let x_f2 = parallel.iter().find(|r| !r.rising).map(|r| r.x);

    let inside = |v: Option<f64>| v.is_some_and(|x| a <= x && x <= b);
    let clamp = |x: f64| x.clamp(a, b);
    let contains = Containment {
        x_l: inside(x_l),
        x_r: inside(x_r),
        x_f1: inside(x_f1),
        x_f2: inside(x_f2),
    };
    let pair = |u: Option<f64>, v: Option<f64>| u.zip(v);

    Ok(TheoreticalPoints {
        a,
        b,
        x_l,
        x_r,
        x_f1,
        x_f2,
        x_s: pair(x_l, x_r).map(|(l, r)| 0.5 * (clamp(l) + clamp(r))),
        x_s_midpoint: pair(x_l, x_r).map(|(l, r)| 0.5 * (l + r)),
        x_d: pair(x_f1, x_f2).map(|(p, q)| 0.5 * (p + q)),
        x_d_clamped: pair(x_f1, x_f2).map(|(p, q)| 0.5 * (clamp(p) + clamp(q))),
        contains,
    })
}

/// Curvature order of the data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    ConvexConcave,
    ConcaveConvex,
    #[default]
    Auto,
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "convex-concave" => Ok(Shape::ConvexConcave),
            "concave-convex" => Ok(Shape::ConcaveConvex),
            "auto" => Ok(Shape::Auto),
            other => Err(Error::InvalidParameter(format!("unknown shape `{other}`"))),
        }
    }
}

/// Bring the data into convex-then-concave orientation, negating the
/// ordinates when needed.
///
/// `Auto` looks at the total residuals: when both a negative and a positive
/// lobe exist, the data are flipped iff the maximum comes before the
/// minimum. One-sided residuals (purely convex or purely concave data) are
/// left as they are.
pub fn orient(curve: &SampledCurve, shape: Shape) -> Result<(SampledCurve, bool)> {
    let flip = match shape {
        Shape::ConvexConcave => false,
        Shape::ConcaveConvex => true,
        Shape::Auto => {
            let residuals = residuals_from_slices(curve.xs(), curve.ys());
            let j_min = argmin(&residuals);
            let j_max = argmax(&residuals);
            let (lo, hi) = (residuals[j_min], residuals[j_max]);
            let magnitude = lo.abs().max(hi.abs());
            let scale = curve.ys().iter().fold(0.0f64, |m, y| m.max(y.abs())).max(f64::MIN_POSITIVE);
            if magnitude < LINEAR_DATA_TOLERANCE * scale.max(1.0) {
                return Err(Error::OrientationUndetermined);
            }
            let floor = LINEAR_DATA_TOLERANCE * magnitude;
            lo < -floor && hi > floor && j_max < j_min
        }
    };
    Ok(if flip { (curve.negated(), true) } else { (curve.clone(), false) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{sample, Family};

    fn grid(family: Family, a: f64, b: f64) -> SampledCurve {
        sample(&family.reference_curve(), a, b, 500).unwrap()
    }

    fn close(x: f64, want: f64, tol: f64) -> bool {
        (x - want).abs() <= tol
    }

    #[test]
    fn ese_fisher_pry_symmetric() {
        let r = ese(&grid(Family::FisherPry, 2.0, 8.0));
        assert_eq!((r.j_r, r.j_l), (169, 331));
        assert!(close(r.chi_r, 4.028, 1e-12) && close(r.chi_l, 5.972, 1e-12));
        assert!(close(r.chi_s, 5.0, 1e-12));
    }

    #[test]
    fn ese_cubic_windows() {
        let r = ese(&grid(Family::Cubic, -2.0, 7.0));
        assert!(close(r.chi_r, 0.25, 1e-12) && close(r.chi_l, 4.75, 1e-12));
        assert!(close(r.chi_s, 2.5, 1e-12));
        let r = ese(&grid(Family::Cubic, -2.0, 8.0));
        assert!(close(r.chi_s, 2.24, 1e-12), "{r:?}");
    }

    #[test]
    fn ede_examples() {
        let r = ede(&grid(Family::FisherPry, 2.0, 8.0));
        assert_eq!((r.j_1, r.j_2), (154, 346));
        assert!(close(r.chi_d.unwrap(), 5.0, 1e-12));
        let r = ede(&grid(Family::Gompertz, 3.5, 8.0));
        assert!(close(r.chi_f1, 4.094, 1e-12) && close(r.chi_f2, 6.290, 1e-12));
        assert!(close(r.chi_d.unwrap(), 5.192, 1e-12));
    }

    #[test]
    fn ede_convex_data_has_no_estimate() {
        let xs: Vec<f64> = (0..=100).map(|i| i as f64 / 100.0).collect();
        let ys = xs.iter().map(|x| x * x).collect();
        let r = ede(&SampledCurve::new(xs, ys).unwrap());
        assert_eq!(r.j_2, 0);
        assert!(r.chi_d.is_none());
    }

    #[test]
    fn ties_pick_smallest_index() {
        assert_eq!(argmin(&[1.0, 0.0, 0.0, 2.0]), 1);
        assert_eq!(argmax(&[0.0, 3.0, 1.0, 3.0]), 1);
    }

    #[test]
    fn reference_fisher_pry() {
        let t = reference_points_default(&Family::FisherPry.reference_curve(), 2.0, 8.0).unwrap();
        assert!(close(t.x_l.unwrap(), 5.970315941, 1e-8));
        assert!(close(t.x_r.unwrap(), 4.029684059, 1e-8));
        assert!(close(t.x_f1.unwrap(), 3.850750196, 1e-8));
        assert!(close(t.x_f2.unwrap(), 6.149249804, 1e-8));
        assert!(close(t.x_s.unwrap(), 5.0, 1e-10) && close(t.x_d.unwrap(), 5.0, 1e-10));
        assert_eq!(t.contains, Containment { x_l: true, x_r: true, x_f1: true, x_f2: true });
    }

    #[test]
    fn reference_gompertz() {
        let t = reference_points_default(&Family::Gompertz.reference_curve(), 3.5, 8.0).unwrap();
        assert!(close(t.x_r.unwrap(), 4.138928270, 1e-8));
        assert!(close(t.x_l.unwrap(), 5.887451706, 1e-8));
        assert!(close(t.x_s.unwrap(), 5.013189988, 1e-8));
        assert!(close(t.x_f1.unwrap(), 4.095750735, 1e-8));
        assert!(close(t.x_f2.unwrap(), 6.290768183, 1e-8));
        assert!(close(t.x_d.unwrap(), 5.193259460, 1e-8));
    }

    #[test]
    fn reference_fisher_pry_left_asymmetric() {
        let t = reference_points_default(&Family::FisherPry.reference_curve(), 4.2, 8.0).unwrap();
        assert!(close(t.x_r.unwrap(), 4.029684059, 1e-8));
        assert!(!t.contains.x_r && t.contains.x_l);
        assert!(!t.contains.x_f1 && t.contains.x_f2);
        // Plain midpoint and the boundary-substituted estimator differ here.
        assert!(close(t.x_s_midpoint.unwrap(), 4.703504993, 1e-8));
        assert!(close(t.x_s.unwrap(), 0.5 * (t.x_l.unwrap() + 4.2), 1e-15));
        assert!(close(t.x_d_clamped.unwrap(), 5.087161370, 1e-8));
    }

    #[test]
    fn reference_cubic() {
        let spec = Family::Cubic.reference_curve();
        let t = reference_points_default(&spec, -2.0, 7.0).unwrap();
        assert!(close(t.x_l.unwrap(), 4.75, 1e-9) && close(t.x_r.unwrap(), 0.25, 1e-9));
        // Independent: roots of −x² + 5x − 4 = λ by the quadratic formula.
        let lambda = (spec.eval(7.0) - spec.eval(-2.0)) / 9.0;
        let disc = (25.0 - 4.0 * (4.0 + lambda)).sqrt();
        assert!(close(t.x_f1.unwrap(), (5.0 - disc) / 2.0, 1e-9));
        assert!(close(t.x_f2.unwrap(), (5.0 + disc) / 2.0, 1e-9));
        let t = reference_points_default(&spec, -2.0, 8.0).unwrap();
        assert!(close(t.x_r.unwrap(), -0.25, 1e-9) && close(t.x_s.unwrap(), 2.25, 1e-9));
        assert!(close(t.x_f1.unwrap(), -0.429732639, 1e-8));
    }

    #[test]
    fn reference_reports_missing_roots() {
        // No window extension: x_r of the left-asymmetric window is outside.
        let t = reference_points(&Family::FisherPry.reference_curve(), 4.2, 8.0, 0.0, 0.0).unwrap();
        assert!(t.x_r.is_none() && t.x_s.is_none());
        assert!(t.x_l.is_some());
    }

    #[test]
    fn orient_examples() {
        let c = grid(Family::FisherPry, 2.0, 8.0);
        let (same, flipped) = orient(&c, Shape::ConvexConcave).unwrap();
        assert!(!flipped && same == c);
        let (back, flipped) = orient(&c.negated(), Shape::Auto).unwrap();
        assert!(flipped);
        assert_eq!(ese(&back).chi_s, ese(&c).chi_s);
        let (_, flipped) = orient(&c, Shape::Auto).unwrap();
        assert!(!flipped);
        let zero = SampledCurve::new(c.xs().to_vec(), vec![0.0; c.len()]).unwrap();
        assert!(matches!(orient(&zero, Shape::Auto), Err(Error::OrientationUndetermined)));
    }

    #[test]
    fn orient_auto_handles_asymmetric_windows() {
        // Both residual lobes present: orientation is recoverable either way.
        for (a, b) in [(3.0, 8.0), (2.0, 6.5), (3.5, 8.0)] {
            let family = if a == 3.5 { Family::Gompertz } else { Family::FisherPry };
            let c = grid(family, a, b);
            assert!(!orient(&c, Shape::Auto).unwrap().1, "[{a},{b}]");
            assert!(orient(&c.negated(), Shape::Auto).unwrap().1, "[{a},{b}]");
        }
        // One lobe only: left as given.
        for (a, b) in [(4.2, 8.0), (2.0, 5.8)] {
            let c = grid(Family::FisherPry, a, b);
            assert!(!orient(&c, Shape::Auto).unwrap().1, "[{a},{b}]");
        }
    }
}
