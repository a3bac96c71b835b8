//! Chords, residuals from the total chord, trapezoidal quadrature, and the
//! left/right signed-area profiles that drive the extremum-surface estimator.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::SampledCurve;

/// Straight line `y = slope·x + intercept` through two data points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChordLine {
    pub slope: f64,
    pub intercept: f64,
}

impl ChordLine {
    pub fn at(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }
}

/// Line through `(x0, y0)` and `(x1, y1)`.
pub fn chord(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<ChordLine> {
    if x0 == x1 {
        return Err(Error::DegenerateChord { x: x0 });
    }
    let slope = (y1 - y0) / (x1 - x0);
    let line = ChordLine { slope, intercept: y0 - slope * x0 };
    if !(line.slope.is_finite() && line.intercept.is_finite()) {
        return Err(Error::InvalidParameter("chord coefficients overflow".into()));
    }
    Ok(line)
}

/// Chord through the first and last data points.
pub fn total_chord(curve: &SampledCurve) -> ChordLine {
    let (xs, ys) = (curve.xs(), curve.ys());
    let n = curve.intervals();
    chord(xs[0], ys[0], xs[n], ys[n]).expect("sampled curves have distinct endpoints")
}

/// `Φ[i] = ys[i] − g(xs[i])` for the total chord `g`.
///
/// The chord is evaluated in two-point form so both endpoint residuals are
/// exactly zero.
pub fn total_residuals(curve: &SampledCurve) -> Vec<f64> {
    residuals_from_slices(curve.xs(), curve.ys())
}

pub(crate) fn residuals_from_slices(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    let n = xs.len() - 1;
    let (x0, xn, y0, yn) = (xs[0], xs[n], ys[0], ys[n]);
    let width = xn - x0;
    xs.iter()
        .zip(ys)
        .map(|(&x, &y)| {
            let g = y0 * ((xn - x) / width) + yn * ((x - x0) / width);
            y - g
        })
        .collect()
}

/// Elementary trapezoid `(y0 + y1)/2 · (x1 − x0)`.
pub fn trapezoid(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<f64> {
    if !(x0 < x1) {
        return Err(Error::InvalidInterval { a: x0, b: x1 });
    }
    Ok(0.5 * (y0 + y1) * (x1 - x0))
}

/// Composite trapezoidal rule over the whole partition.
pub fn composite_trapezoid(curve: &SampledCurve) -> f64 {
    let (xs, ys) = (curve.xs(), curve.ys());
    let mut sum = CompensatedSum::default();
    for i in 0..curve.intervals() {
        sum.add(0.5 * (ys[i] + ys[i + 1]) * (xs[i + 1] - xs[i]));
    }
    sum.value()
}

/// Trapezoidal signed areas between the data and the left/right chords.
///
/// `left[j]` integrates `Φ_l` (data minus the chord from the first point to
/// point `j`) over `[x_0, x_j]`; `right[j]` integrates `Φ_r` (data minus
/// the chord from point `j` to the last point) over `[x_j, x_n]`.
/// `left[0]` and `right[n]` are empty integrals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceProfiles {
    pub left: Vec<f64>,
    pub right: Vec<f64>,
}

/// Both profiles in O(n).
///
/// The trapezoidal integral of a chord over its own span is exactly its
/// endpoint trapezoid, so each profile value is a prefix (or suffix) sum of
/// the raw data trapezoids minus one trapezoid.
pub fn surface_profiles(curve: &SampledCurve) -> SurfaceProfiles {
    profiles_from_slices(curve.xs(), curve.ys())
}

pub(crate) fn profiles_from_slices(xs: &[f64], ys: &[f64]) -> SurfaceProfiles {
    let n = xs.len() - 1;
    let mut cumulative = Vec::with_capacity(n + 1);
    let mut sum = CompensatedSum::default();
    cumulative.push(0.0);
    for i in 0..n {
        sum.add(0.5 * (ys[i] + ys[i + 1]) * (xs[i + 1] - xs[i]));
        cumulative.push(sum.value());
    }
    let total = cumulative[n];

    let left = (0..=n)
        .map(|j| {
            if j == 0 {
                0.0
            } else {
                cumulative[j] - 0.5 * (xs[j] - xs[0]) * (ys[0] + ys[j])
            }
        })
        .collect();
    let right = (0..=n)
        .map(|j| {
            if j == n {
                0.0
            } else {
                (total - cumulative[j]) - 0.5 * (xs[n] - xs[j]) * (ys[j] + ys[n])
            }
        })
        .collect();
    SurfaceProfiles { left, right }
}

/// Neumaier running sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.compensation += (self.sum - t) + v;
        } else {
            self.compensation += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimators::ese;
    use crate::model::{sample, Family};

    fn fp_curve() -> SampledCurve {
        sample(&Family::FisherPry.reference_curve(), 2.0, 8.0, 500).unwrap()
    }

    fn linear_curve() -> SampledCurve {
        let xs: Vec<f64> = (0..50).map(|i| i as f64 * 0.37 - 3.0).collect();
        let ys = xs.iter().map(|x| 2.5 * x - 1.25).collect();
        SampledCurve::new(xs, ys).unwrap()
    }

    #[test]
    fn chord_examples() {
        let c = chord(0.0, 0.0, 1.0, 1.0).unwrap();
        assert_eq!((c.slope, c.intercept), (1.0, 0.0));
        let f = Family::FisherPry.reference_curve();
        let c = chord(2.0, f.eval(2.0), 8.0, f.eval(8.0)).unwrap();
        let expected = (5.0 * (3f64).tanh() - 5.0 * (-3f64).tanh()) / 6.0;
        assert!((c.slope - expected).abs() < 1e-15);
        assert!((c.at(2.0) - f.eval(2.0)).abs() < 1e-14);
        assert!(matches!(chord(3.0, 7.0, 3.0, 9.0), Err(Error::DegenerateChord { .. })));
    }

    #[test]
    fn residuals_vanish_on_lines_and_at_endpoints() {
        for r in total_residuals(&linear_curve()) {
            assert!(r.abs() < 1e-12);
        }
        let r = total_residuals(&fp_curve());
        assert_eq!(r[0], 0.0);
        assert_eq!(r[500], 0.0);
    }

    #[test]
    fn residual_extremes_fisher_pry() {
        let r = total_residuals(&fp_curve());
        let (imin, _) = r.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).unwrap();
        let (imax, _) = r.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap();
        // 0-based neighbours of the tabulated 155/347.
        assert!((imin as i64 - 155).abs() <= 1, "{imin}");
        assert!((imax as i64 - 347).abs() <= 1, "{imax}");
    }

    #[test]
    fn residual_extremes_cubic() {
        let c = sample(&Family::Cubic.reference_curve(), -2.0, 7.0, 500).unwrap();
        let r = total_residuals(&c);
        let (imin, _) = r.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).unwrap();
        let (imax, _) = r.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap();
        let step = 9.0 / 500.0;
        assert!((c.xs()[imin] - -0.09807621078).abs() <= step);
        assert!((c.xs()[imax] - 5.098076211).abs() <= step);
    }

    #[test]
    fn trapezoid_examples() {
        assert_eq!(trapezoid(0.0, 1.0, 2.0, 1.0).unwrap(), 2.0);
        assert_eq!(trapezoid(0.0, 0.0, 1.0, 1.0).unwrap(), 0.5);
        assert_eq!(trapezoid(0.0, -1.0, 2.0, 3.0).unwrap(), 2.0);
        assert!(trapezoid(1.0, 0.0, 1.0, 0.0).is_err());
        assert!(trapezoid(2.0, 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn composite_examples() {
        let xs = vec![0.0, 0.1, 0.5, 1.2, 2.0];
        let c = SampledCurve::new(xs, vec![1.0; 5]).unwrap();
        assert!((composite_trapezoid(&c) - 2.0).abs() < 1e-15);

        let n = 10_000;
        let xs: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
        let ys = xs.iter().map(|x| x * x).collect();
        let c = SampledCurve::new(xs, ys).unwrap();
        assert!((composite_trapezoid(&c) - 1.0 / 3.0).abs() < 1e-8);
    }

    #[test]
    fn refinement_error_shrinks() {
        // Trapezoid error for x³ on [0,1] is h²/4·… ; doubling n must reduce
        // it and the change must stay below the coarse error.
        let integral = |n: usize| {
            let xs: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
            let ys = xs.iter().map(|x| x * x * x).collect();
            composite_trapezoid(&SampledCurve::new(xs, ys).unwrap())
        };
        let mut n = 4;
        while n < 4096 {
            let (coarse, fine) = (integral(n), integral(2 * n));
            let (e_coarse, e_fine) = ((coarse - 0.25).abs(), (fine - 0.25).abs());
            assert!(e_fine < e_coarse);
            assert!((coarse - fine).abs() <= e_coarse);
            n *= 2;
        }
    }

    #[test]
    fn profiles_vanish_on_lines() {
        let p = surface_profiles(&linear_curve());
        for (l, r) in p.left.iter().zip(&p.right) {
            assert!(l.abs() < 1e-12 && r.abs() < 1e-12, "{l} {r}");
        }
    }

    #[test]
    fn profile_extremes_fisher_pry() {
        let c = fp_curve();
        let report = ese(&c);
        assert!((c.xs()[report.j_l] - 5.972).abs() < 1e-9);
        assert!((c.xs()[report.j_r] - 4.028).abs() < 1e-9);
    }

    #[test]
    fn profiles_single_extremum_on_catalog() {
        let cases = [
            (Family::FisherPry, 2.0, 8.0),
            (Family::FisherPry, 4.2, 8.0),
            (Family::Gompertz, 3.5, 8.0),
            (Family::Cubic, -2.0, 7.0),
            (Family::Cubic, -2.0, 8.0),
        ];
        for (family, a, b) in cases {
            let c = sample(&family.reference_curve(), a, b, 500).unwrap();
            let p = surface_profiles(&c);
            // Interior only; the last few points are pure rounding noise.
            for profile in [&p.left[1..498], &p.right[2..499]] {
                let changes = profile
                    .windows(3)
                    .filter(|w| {
                        let (d1, d2) = (w[1] - w[0], w[2] - w[1]);
                        d1.abs() > 1e-12 && d2.abs() > 1e-12 && d1.signum() != d2.signum()
                    })
                    .count();
                assert!(changes <= 1, "{family} [{a},{b}] changes={changes}");
            }
        }
    }

    #[test]
    fn compensated_sum_beats_naive() {
        let mut s = CompensatedSum::default();
        s.add(1e16);
        for _ in 0..1000 {
            s.add(1.0);
        }
        s.add(-1e16);
        assert_eq!(s.value(), 1000.0);
    }
}
