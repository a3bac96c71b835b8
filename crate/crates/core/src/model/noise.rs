//! Zero-mean additive noise.
//!
//! Draws come from ChaCha8 seeded with `seed_from_u64`, whose output stream is
//! fixed across platforms and releases of `rand_chacha`. Uniform noise on
//! `[−r, r)` is `r·(2u − 1)` for a unit uniform `u`; normal noise uses the
//! cosine branch of Box–Muller on two unit uniforms.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::SampledCurve;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseKind {
    /// `U(−r, r)`, `scale` is the half-width `r`.
    Uniform,
    /// `N(0, σ²)`, `scale` is `σ`.
    Normal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub distribution: NoiseKind,
    pub scale: f64,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(distribution: NoiseKind, scale: f64, seed: u64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidParameter(format!("noise scale must be positive, got {scale}")));
        }
        Ok(Self { distribution, scale, seed })
    }

    pub fn uniform(half_width: f64, seed: u64) -> Result<Self> {
        Self::new(NoiseKind::Uniform, half_width, seed)
    }

    pub fn normal(sigma: f64, seed: u64) -> Result<Self> {
        Self::new(NoiseKind::Normal, sigma, seed)
    }

    /// Same distribution, different seed.
    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..*self }
    }

    /// Variance of a single draw: `r²/3` for uniform, `σ²` for normal.
    pub fn variance(&self) -> f64 {
        match self.distribution {
            NoiseKind::Uniform => self.scale * self.scale / 3.0,
            NoiseKind::Normal => self.scale * self.scale,
        }
    }

    /// `count` draws from this spec's stream.
    pub fn draws(&self, count: usize) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        (0..count).map(|_| self.draw(&mut rng)).collect()
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        match self.distribution {
            NoiseKind::Uniform => {
                let u: f64 = rng.random();
                self.scale * (2.0 * u - 1.0)
            }
            NoiseKind::Normal => {
                let u1: f64 = 1.0 - rng.random::<f64>();
                let u2: f64 = rng.random();
                self.scale * (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
            }
        }
    }
}

/// Parses `uniform:<r>` or `normal:<sigma>`, seed 0.
impl FromStr for NoiseSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, scale) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidParameter(format!("expected <kind>:<scale>, got `{s}`")))?;
        let scale: f64 = scale
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad noise scale `{scale}`")))?;
        let kind = match kind.trim().to_ascii_lowercase().as_str() {
            "uniform" | "u" => NoiseKind::Uniform,
            "normal" | "n" | "gaussian" => NoiseKind::Normal,
            other => return Err(Error::InvalidParameter(format!("unknown noise kind `{other}`"))),
        };
        Self::new(kind, scale, 0)
    }
}

impl fmt::Display for NoiseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.distribution {
            NoiseKind::Uniform => "uniform",
            NoiseKind::Normal => "normal",
        };
        write!(f, "{kind}:{}", self.scale)
    }
}

/// `ys'[i] = ys[i] + ε_i` with iid draws from `noise`.
pub fn add_noise(curve: &SampledCurve, noise: &NoiseSpec) -> SampledCurve {
    let eps = noise.draws(curve.len());
    let ys = curve.ys().iter().zip(eps).map(|(y, e)| y + e).collect();
    SampledCurve { xs: curve.xs().to_vec(), ys }
}
