//! Bracketed scalar root finding: bisection safeguarding secant steps.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub fx: f64,
    pub iterations: usize,
}

/// Finds a root of `f` in `[a, b]` given `f(a)` and `f(b)` of opposite sign
/// (or one of them zero). Stops when the bracket is narrower than
/// `tol * max(1, |x|)`.
pub fn bracketed_root<F>(mut f: F, a: f64, b: f64, tol: f64, max_iter: usize) -> Result<Root>
where
    F: FnMut(f64) -> f64,
{
    let (mut lo, mut hi) = (a.min(b), a.max(b));
    let (mut flo, mut fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(Root { x: lo, fx: 0.0, iterations: 0 });
    }
    if fhi == 0.0 {
        return Ok(Root { x: hi, fx: 0.0, iterations: 0 });
    }
    if !(flo.is_finite() && fhi.is_finite()) || flo.signum() == fhi.signum() {
        return Err(Error::invalid(format!(
            "root not bracketed on [{lo}, {hi}]: f = ({flo}, {fhi})"
        )));
    }
    let mut prev_width = hi - lo;
    for iterations in 1..=max_iter {
        // secant through the bracket ends, kept only if it lands well inside
        let secant = hi - fhi * (hi - lo) / (fhi - flo);
        let margin = 0.01 * (hi - lo);
        let shrinking = hi - lo <= 0.5 * prev_width;
        let x = if secant.is_finite() && secant > lo + margin && secant < hi - margin && shrinking {
            secant
        } else {
            0.5 * (lo + hi)
        };
        prev_width = hi - lo;
        let fx = f(x);
        if fx == 0.0 {
            return Ok(Root { x, fx, iterations });
        }
        if !fx.is_finite() {
            return Err(Error::Numerical(format!("non-finite function value at {x}")));
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
        if hi - lo <= tol * x.abs().max(1.0) {
            let (x, fx) = if flo.abs() <= fhi.abs() { (lo, flo) } else { (hi, fhi) };
            return Ok(Root { x, fx, iterations });
        }
    }
    Err(Error::Numerical(format!(
        "root finder did not reach width {tol:e} in {max_iter} iterations; bracket [{lo}, {hi}], f = ({flo:e}, {fhi:e})"
    )))
}
