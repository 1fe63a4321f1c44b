//! Finite windows of the infinite paths `Z` and `N`.
//!
//! Only quotients whose outer ball `B(x, 2k+1)` lies inside the window are
//! reported, so each one is a genuine quotient of the infinite measure.

use serde::{Deserialize, Serialize};

use crate::doubling::QuotientWitness;
use crate::error::{Error, Result};
use crate::measure::{check_alpha, Measure};

/// Bound checked by `all_quotients_bounded`.
pub const WINDOW_BOUND: f64 = 3.0;
const BOUND_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lattice {
    /// Window `[-N, N]` of the integers.
    Z,
    /// Window `[1, N]` of the naturals; the left end is a true boundary.
    N,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowReport {
    pub lattice: Lattice,
    /// Inclusive vertex labels covered by the window.
    pub window: (i64, i64),
    pub max_quotient: f64,
    /// `center` is the 0-based position inside the window.
    pub witness: QuotientWitness,
    /// Label of the witness center (`-N..=N` or `1..=N`).
    pub witness_label: i64,
    /// Largest radius-0 quotient `mu(B(x,1)) / mu(x)` over contained balls.
    pub c0: f64,
    pub all_quotients_bounded: bool,
    pub quotient_count: usize,
}

struct Prefix(Vec<f64>);

impl Prefix {
    fn new(w: &[f64]) -> Self {
        let mut p = Vec::with_capacity(w.len() + 1);
        p.push(0.0);
        let mut acc = 0.0;
        for x in w {
            acc += x;
            p.push(acc);
        }
        Prefix(p)
    }

    // mass of positions lo..=hi, clamped at the left end
    fn range(&self, lo: i64, hi: i64) -> f64 {
        let lo = lo.max(0) as usize;
        self.0[hi as usize + 1] - self.0[lo]
    }
}

fn scan(lattice: Lattice, mu: &Measure, offset: i64) -> Result<WindowReport> {
    let w = mu.weights();
    let len = w.len() as i64;
    let prefix = Prefix::new(w);
    let mut best: Option<QuotientWitness> = None;
    let mut c0 = f64::NEG_INFINITY;
    let mut count = 0;
    for x in 0..len {
        let mut k = 0i64;
        loop {
            let outer_lo = x - 2 * k - 1;
            let outer_hi = x + 2 * k + 1;
            let left_ok = lattice == Lattice::N || outer_lo >= 0;
            if !left_ok || outer_hi >= len {
                break;
            }
            let num = prefix.range(outer_lo, outer_hi);
            let den = prefix.range(x - k, x + k);
            let q = QuotientWitness {
                center: x as usize,
                k: k as usize,
                numerator: num,
                denominator: den,
                ratio: num / den,
            };
            count += 1;
            if k == 0 {
                c0 = c0.max(q.ratio);
            }
            if best.map_or(true, |b| q.ratio > b.ratio) {
                best = Some(q);
            }
            k += 1;
        }
    }
    let witness = best.ok_or_else(|| Error::invalid("window too small to contain any ball"))?;
    Ok(WindowReport {
        lattice,
        window: (offset, offset + len - 1),
        max_quotient: witness.ratio,
        witness_label: witness.center as i64 + offset,
        witness,
        c0,
        all_quotients_bounded: witness.ratio <= WINDOW_BOUND + BOUND_SLACK,
        quotient_count: count,
    })
}

/// Quotients of a measure on the window `[-N, N]` of `Z` (`2N + 1` weights,
/// position `i` holding the mass of `i - N`).
pub fn z_window_report(half_width: usize, mu: &Measure) -> Result<WindowReport> {
    if half_width < 2 {
        return Err(Error::invalid("window half-width must be at least 2"));
    }
    if mu.len() != 2 * half_width + 1 {
        return Err(Error::invalid(format!(
            "expected {} weights for the window [-{half_width}, {half_width}], got {}",
            2 * half_width + 1,
            mu.len()
        )));
    }
    scan(Lattice::Z, mu, -(half_width as i64))
}

/// Quotients of a measure on the window `[1, N]` of `N` (`N` weights).
pub fn n_window_report(width: usize, mu: &Measure) -> Result<WindowReport> {
    if width < 2 {
        return Err(Error::invalid("window width must be at least 2"));
    }
    if mu.len() != width {
        return Err(Error::invalid(format!(
            "expected {width} weights for the window [1, {width}], got {}",
            mu.len()
        )));
    }
    scan(Lattice::N, mu, 1)
}

/// Counting-measure quotient on `Z`: `(4k + 3) / (2k + 1)`.
pub fn counting_z_quotient(k: usize) -> f64 {
    (4 * k + 3) as f64 / (2 * k + 1) as f64
}

/// `lambda_alpha(B(j, 2k+1)) / lambda_alpha(B(j, k))` on `N`, where
/// `lambda_alpha` puts mass `alpha` at 1 and 1 elsewhere. For `k >= j - 1`
/// this is `(alpha + j + 2k) / (alpha + j + k - 1)`.
pub fn lambda_alpha_quotient(alpha: f64, j: usize, k: usize) -> Result<f64> {
    check_alpha(alpha)?;
    if j == 0 {
        return Err(Error::invalid("vertices of N start at 1"));
    }
    if k + 1 >= j {
        let (j, k) = (j as f64, k as f64);
        return Ok((alpha + j + 2.0 * k) / (alpha + j + k - 1.0));
    }
    // B(j, r) = [max(1, j - r), j + r]; vertex 1 carries alpha instead of 1
    let mass = |r: usize| {
        let lo = j.saturating_sub(r).max(1);
        let count = (j + r - lo + 1) as f64;
        if lo == 1 { count - 1.0 + alpha } else { count }
    };
    Ok(mass(2 * k + 1) / mass(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counting_z_window() {
        let r = z_window_report(50, &Measure::counting(101)).unwrap();
        assert_eq!(r.max_quotient, 3.0);
        assert_eq!(r.witness.k, 0);
        assert!(r.all_quotients_bounded);
        assert_eq!(r.window, (-50, 50));
        // the first center with a contained radius-1 ball
        assert_eq!(r.witness_label, -49);
    }

    #[test]
    fn valley_forces_local_constant_above_three() {
        let mut w = vec![1.0; 101];
        w[50] = 0.7;
        let r = z_window_report(50, &Measure::new(w).unwrap()).unwrap();
        assert!(r.c0 >= 3.0);
    }

    #[test]
    fn exponential_weights_exceed_three() {
        let w: Vec<f64> = (-10i32..=10).map(|j| 2f64.powi(j.abs())).collect();
        let r = z_window_report(10, &Measure::new(w).unwrap()).unwrap();
        // center 0, k = 0: (2 + 1 + 2) / 1
        assert!(r.max_quotient >= 5.0);
        assert!(!r.all_quotients_bounded);
    }

    #[test]
    fn window_size_checks() {
        assert!(z_window_report(1, &Measure::counting(3)).is_err());
        assert!(z_window_report(5, &Measure::counting(10)).is_err());
        assert!(n_window_report(5, &Measure::counting(4)).is_err());
    }

    #[test]
    fn z_quotient_values() {
        assert_eq!(counting_z_quotient(0), 3.0);
        assert!((counting_z_quotient(5) - 23.0 / 11.0).abs() < 1e-15);
        let seq: Vec<f64> = (0..200).map(counting_z_quotient).collect();
        assert!(seq.windows(2).all(|p| p[1] < p[0]));
        assert!(seq.iter().all(|&q| q > 2.0));
        assert!(seq[199] - 2.0 < 1e-2);
    }

    #[test]
    fn lambda_alpha_examples() {
        assert_eq!(lambda_alpha_quotient(0.5, 1, 0).unwrap(), 3.0);
        assert!((lambda_alpha_quotient(0.75, 2, 3).unwrap() - 8.75 / 4.75).abs() < 1e-15);
        for j in 1..20 {
            for k in 0..40 {
                assert!(lambda_alpha_quotient(1.0, j, k).unwrap() <= 3.0);
            }
        }
        assert!(lambda_alpha_quotient(0.3, 1, 0).is_err());
        assert!(lambda_alpha_quotient(0.6, 0, 0).is_err());
    }

    #[test]
    fn lambda_alpha_quotient_matches_window_scan() {
        let n = 60;
        for alpha in [0.5, 0.8, 1.0] {
            let mut w = vec![1.0; n];
            w[0] = alpha;
            let mu = Measure::new(w).unwrap();
            let pre = Prefix::new(mu.weights());
            for j in 1..20usize {
                for k in 0..10usize {
                    let x = j as i64 - 1;
                    let k = k as i64;
                    let direct = pre.range(x - 2 * k - 1, x + 2 * k + 1) / pre.range(x - k, x + k);
                    let formula = lambda_alpha_quotient(alpha, j, k as usize).unwrap();
                    assert!((direct - formula).abs() < 1e-14, "alpha={alpha} j={j} k={k}");
                }
            }
        }
    }
}
