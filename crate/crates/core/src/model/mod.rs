//! Sampled curves, the analytic test-curve catalog, noise injection and the
//! data-symmetry taxonomy.

mod curve;
mod noise;

pub use curve::{capacity_points, sample, symmetry_defect, CurveSpec, Family};
pub use noise::{add_noise, NoiseKind, NoiseSpec};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest grid the estimators accept (`n ≥ 3` intervals).
pub const MIN_POINTS: usize = 4;

/// Absolute tolerance for the data-symmetric classification.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// Data on a strictly increasing abscissa grid `a = x_0 < … < x_n = b`.
///
/// The grid need not be equally spaced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCurve")]
pub struct SampledCurve {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

#[derive(Deserialize)]
struct RawCurve {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl TryFrom<RawCurve> for SampledCurve {
    type Error = Error;

    fn try_from(raw: RawCurve) -> Result<Self> {
        SampledCurve::new(raw.xs, raw.ys)
    }
}

impl SampledCurve {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::LengthMismatch { xs: xs.len(), ys: ys.len() });
        }
        if xs.len() < MIN_POINTS {
            return Err(Error::TooFewPoints { got: xs.len(), min: MIN_POINTS });
        }
        for (index, (x, y)) in xs.iter().zip(&ys).enumerate() {
            if !x.is_finite() || !y.is_finite() {
                return Err(Error::NonFinite { index });
            }
        }
        if let Some(index) = xs.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::NotSorted { index: index + 1 });
        }
        Ok(Self { xs, ys })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    /// Number of points, `n + 1`.
    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// Number of intervals, `n`.
    pub fn intervals(&self) -> usize {
        self.xs.len() - 1
    }

    /// Left end of the window.
    pub fn a(&self) -> f64 {
        self.xs[0]
    }

    /// Right end of the window.
    pub fn b(&self) -> f64 {
        self.xs[self.xs.len() - 1]
    }

    /// Largest gap between neighbouring abscissae (the partition mesh).
    pub fn mesh(&self) -> f64 {
        self.xs.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
    }

    /// Points `lo..=hi` as a new curve.
    pub fn subcurve(&self, lo: usize, hi: usize) -> Result<Self> {
        if hi >= self.len() || lo > hi {
            return Err(Error::InvalidParameter(format!(
                "subrange {lo}..={hi} outside 0..{}",
                self.len()
            )));
        }
        if hi - lo + 1 < MIN_POINTS {
            return Err(Error::TooFewPoints { got: hi - lo + 1, min: MIN_POINTS });
        }
        Ok(Self { xs: self.xs[lo..=hi].to_vec(), ys: self.ys[lo..=hi].to_vec() })
    }

    /// Same grid, ordinates replaced.
    pub fn with_ordinates(&self, ys: Vec<f64>) -> Result<Self> {
        Self::new(self.xs.clone(), ys)
    }

    /// Same grid, ordinates negated.
    pub fn negated(&self) -> Self {
        Self { xs: self.xs.clone(), ys: self.ys.iter().map(|y| -y).collect() }
    }
}

/// Position of the window `[a, b]` relative to the inflection point `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetryClass {
    DataSymmetric,
    DataLeftAsymmetric,
    DataRightAsymmetric,
}

/// Classify the window by comparing `p − b` with `a − p`: equal (within
/// [`SYMMETRY_TOLERANCE`]) is symmetric, `p − b < a − p` is left
/// asymmetry, `p − b > a − p` is right asymmetry.
pub fn classify_data_symmetry(a: f64, b: f64, p: f64) -> SymmetryClass {
    let diff = (p - b) - (a - p);
    if diff.abs() <= SYMMETRY_TOLERANCE {
        SymmetryClass::DataSymmetric
    } else if diff < 0.0 {
        SymmetryClass::DataLeftAsymmetric
    } else {
        SymmetryClass::DataRightAsymmetric
    }
}
