//! Closed-form results for third-order polynomials.
//!
//! For `f(x) = αx³ + βx² + γx + δ` the left and right tangency points of the
//! chords anchored at `a` and `b` are linear in the anchors, so the
//! inflection point `p = −β/(3α)` can be recovered exactly from
//! `(x_l, x_r, a, b)`. Replacing the tangency points by their ESE estimates
//! gives a corrected inflection estimate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients of `αx³ + βx² + γx + δ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicCoefficients {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl CubicCoefficients {
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<Self> {
        let c = Self { alpha, beta, gamma, delta };
        c.validate()?;
        Ok(c)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if ![self.alpha, self.beta, self.gamma, self.delta].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParameter("cubic coefficients must be finite".into()));
        }
        if self.alpha == 0.0 {
            return Err(Error::DegenerateCubic);
        }
        Ok(())
    }

    /// `p = −β/(3α)`.
    pub fn inflection(&self) -> f64 {
        -self.beta / (3.0 * self.alpha)
    }

    pub fn eval(&self, x: f64) -> f64 {
        ((self.alpha * x + self.beta) * x + self.gamma) * x + self.delta
    }

    pub fn eval_d1(&self, x: f64) -> f64 {
        (3.0 * self.alpha * x + 2.0 * self.beta) * x + self.gamma
    }
}

/// Tangency points of the left chord (anchored at `a`) and the right chord
/// (anchored at `b`): `x_l = −(αa+β)/(2α)`, `x_r = −(αb+β)/(2α)`.
pub fn cubic_tangency(coeffs: &CubicCoefficients, a: f64, b: f64) -> Result<(f64, f64)> {
    if coeffs.alpha == 0.0 {
        return Err(Error::DegenerateCubic);
    }
    if !(a < b) {
        return Err(Error::InvalidInterval { a, b });
    }
    let two_alpha = 2.0 * coeffs.alpha;
    let x_l = -(coeffs.alpha * a + coeffs.beta) / two_alpha;
    let x_r = -(coeffs.alpha * b + coeffs.beta) / two_alpha;
    Ok((x_l, x_r))
}

/// Inflection point recovered from the two tangency abscissae (or their
/// estimates) and the window: `(x_l + x_r)/3 + a/6 + b/6`.
pub fn cubic_corrected_p(chi_l: f64, chi_r: f64, a: f64, b: f64) -> f64 {
    (chi_l + chi_r) / 3.0 + a / 6.0 + b / 6.0
}
