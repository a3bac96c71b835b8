use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SampledCurve;
use crate::cubic::CubicCoefficients;
use crate::error::{Error, Result};
use crate::solver;

/// Probe points used by [`symmetry_defect`].
pub const SYMMETRY_PROBES: usize = 10_000;

/// Residual bound for [`capacity_points`].
const CAPACITY_RESIDUAL: f64 = 1e-10;

/// Analytic test curve with a known inflection point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum CurveSpec {
    /// `L/2 + L/2·tanh(x − p)`.
    FisherPry { capacity: f64, center: f64 },
    /// `L·exp(−e^p·e^{−x})`.
    Gompertz { capacity: f64, center: f64 },
    /// `αx³ + βx² + γx + δ`, inflection at `−β/(3α)`.
    Cubic { coefficients: CubicCoefficients },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    FisherPry,
    Gompertz,
    Cubic,
}

impl Family {
    /// The catalog member of this family: capacity 10 and inflection at 5
    /// for the sigmoids, `−x³/3 + 5x²/2 − 4x + 1/2` for the cubic.
    pub fn reference_curve(self) -> CurveSpec {
        match self {
            Family::FisherPry => CurveSpec::FisherPry { capacity: 10.0, center: 5.0 },
            Family::Gompertz => CurveSpec::Gompertz { capacity: 10.0, center: 5.0 },
            Family::Cubic => CurveSpec::Cubic {
                coefficients: CubicCoefficients {
                    alpha: -1.0 / 3.0,
                    beta: 2.5,
                    gamma: -4.0,
                    delta: 0.5,
                },
            },
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Family::FisherPry => "fisher-pry",
            Family::Gompertz => "gompertz",
            Family::Cubic => "cubic",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fisher-pry" | "fisherpry" | "fisher_pry" => Ok(Family::FisherPry),
            "gompertz" => Ok(Family::Gompertz),
            "cubic" => Ok(Family::Cubic),
            other => Err(Error::InvalidParameter(format!("unknown curve family `{other}`"))),
        }
    }
}

impl CurveSpec {
    pub fn fisher_pry(capacity: f64, center: f64) -> Result<Self> {
        let spec = CurveSpec::FisherPry { capacity, center };
        spec.validate()?;
        Ok(spec)
    }

    pub fn gompertz(capacity: f64, center: f64) -> Result<Self> {
        let spec = CurveSpec::Gompertz { capacity, center };
        spec.validate()?;
        Ok(spec)
    }

    pub fn cubic(coefficients: CubicCoefficients) -> Result<Self> {
        let spec = CurveSpec::Cubic { coefficients };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            CurveSpec::FisherPry { capacity, center } | CurveSpec::Gompertz { capacity, center } => {
                if !(capacity > 0.0 && capacity.is_finite()) {
                    return Err(Error::InvalidParameter(format!(
                        "capacity must be positive, got {capacity}"
                    )));
                }
                if !center.is_finite() {
                    return Err(Error::InvalidParameter("center must be finite".into()));
                }
                Ok(())
            }
            CurveSpec::Cubic { coefficients } => coefficients.validate(),
        }
    }

    pub fn family(&self) -> Family {
        match self {
            CurveSpec::FisherPry { .. } => Family::FisherPry,
            CurveSpec::Gompertz { .. } => Family::Gompertz,
            CurveSpec::Cubic { .. } => Family::Cubic,
        }
    }

    /// True inflection abscissa `p`.
    pub fn inflection(&self) -> f64 {
        match *self {
            CurveSpec::FisherPry { center, .. } | CurveSpec::Gompertz { center, .. } => center,
            CurveSpec::Cubic { coefficients } => coefficients.inflection(),
        }
    }

    /// Sigmoid capacity `L`; `None` for the cubic.
    pub fn capacity(&self) -> Option<f64> {
        match *self {
            CurveSpec::FisherPry { capacity, .. } | CurveSpec::Gompertz { capacity, .. } => {
                Some(capacity)
            }
            CurveSpec::Cubic { .. } => None,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            CurveSpec::FisherPry { capacity, center } => {
                0.5 * capacity + 0.5 * capacity * (x - center).tanh()
            }
            CurveSpec::Gompertz { capacity, center } => capacity * (-(center - x).exp()).exp(),
            CurveSpec::Cubic { coefficients } => coefficients.eval(x),
        }
    }

    /// First derivative in closed form.
    pub fn eval_d1(&self, x: f64) -> f64 {
        match *self {
            CurveSpec::FisherPry { capacity, center } => {
                let c = (x - center).cosh();
                0.5 * capacity / (c * c)
            }
            CurveSpec::Gompertz { capacity, center } => {
                let e = (center - x).exp();
                let f = capacity * (-e).exp();
                if f == 0.0 {
                    0.0
                } else {
                    f * e
                }
            }
            CurveSpec::Cubic { coefficients } => coefficients.eval_d1(x),
        }
    }
}

/// Abscissae where a sigmoid reaches 1% and 99% of its capacity.
pub fn capacity_points(spec: &CurveSpec) -> Result<(f64, f64)> {
    let capacity = spec.capacity().ok_or(Error::UnsupportedFamily("cubic has no capacity"))?;
    let p = spec.inflection();
    let solve = |fraction: f64| -> Result<f64> {
        let target = fraction * capacity;
        let x = solver::solve_monotone(|x| spec.eval(x), target, p, 1.0)?;
        if (spec.eval(x) - target).abs() >= CAPACITY_RESIDUAL {
            return Err(Error::RootNotBracketed { lo: x, hi: x });
        }
        Ok(x)
    };
    Ok((solve(0.01)?, solve(0.99)?))
}

/// Equal-spaced samples `x_i = a + i(b − a)/n`, `i = 0..=n`, of `spec`.
pub fn sample(spec: &CurveSpec, a: f64, b: f64, n: usize) -> Result<SampledCurve> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidInterval { a, b });
    }
    if n + 1 < super::MIN_POINTS {
        return Err(Error::TooFewPoints { got: n + 1, min: super::MIN_POINTS });
    }
    let width = b - a;
    let xs: Vec<f64> = (0..=n)
        .map(|i| if i == n { b } else { a + width * i as f64 / n as f64 })
        .collect();
    let ys = xs.iter().map(|&x| spec.eval(x)).collect();
    SampledCurve::new(xs, ys)
}

/// Largest `|f(p+x) + f(p−x) − 2f(p)|` over a probe grid on `(0, δ)`.
///
/// A curve is (ε, δ)-asymptotically symmetric about its inflection point
/// when the result is below ε.
pub fn symmetry_defect(spec: &CurveSpec, delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidParameter(format!("delta must be positive, got {delta}")));
    }
    let p = spec.inflection();
    let f_p = spec.eval(p);
    let probes = SYMMETRY_PROBES as f64;
    Ok((1..=SYMMETRY_PROBES)
        .map(|k| delta * k as f64 / (probes + 1.0))
        .map(|x| (spec.eval(p + x) + spec.eval(p - x) - 2.0 * f_p).abs())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp() -> CurveSpec {
        Family::FisherPry.reference_curve()
    }
    fn gz() -> CurveSpec {
        Family::Gompertz.reference_curve()
    }
    fn cu() -> CurveSpec {
        Family::Cubic.reference_curve()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(fp().eval(5.0), 5.0);
        assert!((gz().eval(5.0) - 10.0 * (-1f64).exp()).abs() < 1e-15);
        assert!((gz().eval(5.0) - 3.678794).abs() < 1e-6);
        // -1/3·(5/2)³ + 5/2·(5/2)² − 4·5/2 + 1/2 = 11/12
        assert!((cu().eval(2.5) - 11.0 / 12.0).abs() < 1e-14);
    }

    #[test]
    fn derivative_matches_central_differences() {
        let h = 1e-5;
        for (spec, lo, hi) in [(fp(), 2.0, 8.0), (gz(), 3.5, 8.0), (cu(), -2.0, 8.0)] {
            for k in 0..=200 {
                let x = lo + (hi - lo) * k as f64 / 200.0;
                let fd = (spec.eval(x + h) - spec.eval(x - h)) / (2.0 * h);
                let d = spec.eval_d1(x);
                let scale = d.abs().max(1e-3);
                assert!((fd - d).abs() / scale < 1e-6, "{spec:?} x={x} fd={fd} d={d}");
            }
        }
    }

    #[test]
    fn fisher_pry_exactly_symmetric() {
        let f = fp();
        for k in 0..=1000 {
            let x = 10.0 * k as f64 / 1000.0;
            let defect = f.eval(5.0 + x) + f.eval(5.0 - x) - 2.0 * f.eval(5.0);
            assert!(defect.abs() < 1e-13, "x={x} defect={defect}");
        }
    }

    #[test]
    fn capacity_points_match_catalog() {
        let (x1, x99) = capacity_points(&fp()).unwrap();
        assert!((x1 - 2.7024).abs() < 5e-5 && (x99 - 7.2976).abs() < 5e-5);
        assert!((fp().eval(x1) - 0.1).abs() < 1e-10);
        let (x1, x99) = capacity_points(&gz()).unwrap();
        assert!((x1 - 3.472820374).abs() < 1e-8, "{x1}");
        assert!((x99 - 9.600149227).abs() < 1e-8, "{x99}");
        assert!(matches!(capacity_points(&cu()), Err(Error::UnsupportedFamily(_))));
    }

    #[test]
    fn sample_grid() {
        let c = sample(&fp(), 2.0, 8.0, 500).unwrap();
        assert_eq!(c.len(), 501);
        assert_eq!(c.a(), 2.0);
        assert_eq!(c.b(), 8.0);
        assert!((c.xs()[1] - 2.012).abs() < 1e-14);
        assert_eq!(sample(&cu(), 0.0, 1.0, 3).unwrap().len(), 4);
        let c = sample(&cu(), -2.0, 7.0, 500).unwrap();
        assert!((c.xs()[125] - 0.25).abs() < 1e-12);
        assert!((c.xs()[126] - 0.268).abs() < 1e-12);
        assert!(matches!(sample(&fp(), 1.0, 1.0, 10), Err(Error::InvalidInterval { .. })));
        assert!(matches!(sample(&fp(), 0.0, 1.0, 2), Err(Error::TooFewPoints { .. })));
    }

    #[test]
    fn symmetry_defects() {
        assert!(symmetry_defect(&fp(), 1.0).unwrap() < 1e-12);
        // Supremum sits at the edge of the window, 0.22430 to five places;
        // the catalog quotes it to three.
        let gompertz = symmetry_defect(&gz(), 1.0).unwrap();
        assert!(gompertz < 0.2245 && (gompertz - 0.224).abs() < 5e-4, "{gompertz}");
        assert!(symmetry_defect(&cu(), 2.0).unwrap() < 1e-10);
        assert!(symmetry_defect(&fp(), 0.0).is_err());
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(CurveSpec::fisher_pry(0.0, 5.0).is_err());
        assert!(CurveSpec::gompertz(-1.0, 5.0).is_err());
        assert!(CurveSpec::cubic(CubicCoefficients { alpha: 0.0, beta: 1.0, gamma: 0.0, delta: 0.0 })
            .is_err());
        assert_eq!("Fisher-Pry".parse::<Family>().unwrap(), Family::FisherPry);
        assert!("logistic".parse::<Family>().is_err());
    }

    proptest! {
        #[test]
        fn sample_always_valid(a in -100.0f64..100.0, width in 1e-3f64..100.0, n in 3usize..2000) {
            let b = a + width;
            let c = sample(&fp(), a, b, n).unwrap();
            prop_assert_eq!(c.len(), n + 1);
            prop_assert_eq!(c.a(), a);
            prop_assert_eq!(c.b(), b);
            prop_assert!(c.xs().windows(2).all(|w| w[0] < w[1]));
        }
    }
}
