//! Derivative-free bracketed root finding.
//!
//! A uniform sign-change scan locates candidate brackets; each bracket is then
//! closed by plain bisection. Used by the reference solver and by
//! capacity-point search, where the target functions are smooth but their
//! derivatives are not always convenient.

use crate::error::{Error, Result};

/// Default number of subintervals for [`scan_roots`].
pub const SCAN_SUBINTERVALS: usize = 10_000;

/// Bisection stops once the bracket is narrower than this.
pub const BRACKET_WIDTH: f64 = 1e-12;

const MAX_BISECTIONS: usize = 200;

/// A root located by [`scan_roots`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    /// `true` if the function goes from negative to positive across the root.
    pub rising: bool,
}

/// Bisection on `[lo, hi]`; requires a sign change (or a zero) at the ends.
pub fn bisect<F>(f: F, mut lo: f64, mut hi: f64, width: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(lo < hi) {
        return Err(Error::InvalidInterval { a: lo, b: hi });
    }
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if !(f_lo.is_finite() && f_hi.is_finite()) || f_lo.signum() == f_hi.signum() {
        return Err(Error::RootNotBracketed { lo, hi });
    }
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= width {
            break;
        }
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo + 0.5 * (hi - lo))
}

/// Every sign change of `f` over `[lo, hi]`, scanned on `subintervals` equal
/// cells and refined by bisection, in increasing order of `x`.
///
/// Non-finite samples break the scan locally (no bracket spans them).
pub fn scan_roots<F>(f: F, lo: f64, hi: f64, subintervals: usize) -> Result<Vec<Root>>
where
    F: Fn(f64) -> f64,
{
    if !(lo < hi) {
        return Err(Error::InvalidInterval { a: lo, b: hi });
    }
    if subintervals == 0 {
        return Err(Error::InvalidParameter("subintervals must be positive".into()));
    }
    let step = (hi - lo) / subintervals as f64;
    let grid = |k: usize| if k == subintervals { hi } else { lo + k as f64 * step };

    let mut roots = Vec::new();
    let mut x_prev = grid(0);
    let mut v_prev = f(x_prev);
    let mut k = 1;
    while k <= subintervals {
        let x = grid(k);
        let v = f(x);
        if v_prev.is_finite() && v.is_finite() {
            if v == 0.0 {
                // Exact zero on the grid: classify by the neighbours.
                let x_next = if k < subintervals { grid(k + 1) } else { x + step };
                let v_next = f(x_next);
                if v_prev != 0.0 && v_next.is_finite() && v_next.signum() != v_prev.signum() {
                    roots.push(Root { x, rising: v_prev < 0.0 });
                }
                x_prev = x_next;
                v_prev = v_next;
                k += 2;
                continue;
            }
            if v_prev != 0.0 && v.signum() != v_prev.signum() {
                let x_root = bisect(&f, x_prev, x, BRACKET_WIDTH)?;
                roots.push(Root { x: x_root, rising: v_prev < 0.0 });
            }
        }
        x_prev = x;
        v_prev = v;
        k += 1;
    }
    Ok(roots)
}

/// Solve `f(x) = target` for a monotone `f`, widening a bracket around
/// `center` until the target is enclosed.
pub fn solve_monotone<F>(f: F, target: f64, center: f64, initial_half_width: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let g = |x: f64| f(x) - target;
    let mut w = initial_half_width.abs().max(1e-3);
    for _ in 0..60 {
        let (lo, hi) = (center - w, center + w);
        let (g_lo, g_hi) = (g(lo), g(hi));
        if g_lo.is_finite() && g_hi.is_finite() && g_lo.signum() != g_hi.signum() {
            return bisect(g, lo, hi, BRACKET_WIDTH);
        }
        w *= 2.0;
    }
    Err(Error::RootNotBracketed { lo: center - w, hi: center + w })
}
