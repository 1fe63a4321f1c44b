//! Least doubling constant `C_G` of an arbitrary finite connected graph.
//!
//! For a fixed level `t`, `C_mu <= t` is the finite conjunction of linear
//! inequalities `mu(B(x, 2k+1)) - t mu(B(x, k)) <= 0`, so `C_G` is the least
//! `t` at which that system has a positive solution. Scaling invariance lets
//! the solution be normalized to `mu >= 1`; bisection on `t` with a phase-1
//! simplex oracle then brackets `C_G`.

use serde::{Deserialize, Serialize};

use crate::doubling::doubling_constant;
use crate::error::{Error, Result};
use crate::graph::BallIndex;
use crate::measure::Measure;
use crate::simplex::{Feasibility, InequalitySystem};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const MAX_BISECTIONS: usize = 60;

// A witness returned at level t is accepted when its own doubling constant
// does not exceed t by more than this (relative) amount.
const WITNESS_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BisectionResult {
    pub c_estimate: f64,
    pub bracket: (f64, f64),
    /// Measure whose doubling constant certifies the upper end of the bracket.
    pub minimizer: Measure,
    /// Doubling constant of `minimizer`.
    pub minimizer_c: f64,
    pub iterations: usize,
    pub constraint_count: usize,
    /// Levels where the oracle reported feasibility but the extracted point
    /// failed verification; these were treated as lower bounds.
    pub unverified_levels: usize,
}

/// The non-vacuous `(x, k)` pairs: `B(x, k) != B(x, 2k+1)`.
fn constraint_pairs(idx: &BallIndex) -> Vec<(usize, usize)> {
    let kmax = idx.max_doubling_radius();
    let mut out = Vec::new();
    for x in 0..idx.order_n() {
        for k in 0..=kmax {
            if idx.ball_size(x, k) < idx.ball_size(x, 2 * k + 1) {
                out.push((x, k));
            }
        }
    }
    out
}

fn assemble(idx: &BallIndex, pairs: &[(usize, usize)], t: f64) -> InequalitySystem {
    let n = idx.order_n();
    let mut sys = InequalitySystem::new(n);
    for &(x, k) in pairs {
        let inner = idx.ball_size(x, k);
        let outer = idx.ball_size(x, 2 * k + 1);
        let scale = 1.0 / outer as f64;
        let mut row = vec![0.0; n];
        for (pos, &v) in idx.order(x)[..outer].iter().enumerate() {
            row[v as usize] = if pos < inner { (1.0 - t) * scale } else { scale };
        }
        // mu = 1 + y, so a.(1 + y) <= 0 becomes a.y <= -a.1
        let rhs = (t * inner as f64 - outer as f64) * scale;
        sys.push(row, rhs);
    }
    sys
}

/// A measure with `mu >= 1` and every doubling quotient at most `t`, or
/// `None` when the phase-1 optimum certifies infeasibility.
pub fn feasible_at(idx: &BallIndex, t: f64) -> Result<Option<Measure>> {
    if !(t >= 1.0) {
        return Err(Error::invalid(format!("level must be >= 1, got {t}")));
    }
    let pairs = constraint_pairs(idx);
    feasible_with(idx, &pairs, t)
}

fn feasible_with(idx: &BallIndex, pairs: &[(usize, usize)], t: f64) -> Result<Option<Measure>> {
    match assemble(idx, pairs, t).solve()? {
        Feasibility::Infeasible { .. } => Ok(None),
        Feasibility::Feasible { point, .. } => {
            let weights = point.into_iter().map(|y| 1.0 + y).collect();
            Measure::new(weights)
                .map(Some)
                .map_err(|e| Error::Numerical(e.to_string()))
        }
    }
}

/// Bisection for `C_G` over `[2, C_counting]`.
pub fn least_doubling(idx: &BallIndex, tol: f64) -> Result<BisectionResult> {
    let n = idx.order_n();
    if n < 2 {
        return Err(Error::invalid("least doubling constant needs at least 2 vertices"));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let pairs = constraint_pairs(idx);
    let counting = Measure::counting(n);
    let mut hi = doubling_constant(idx, &counting)?.c_mu;
    let mut lo = 2.0_f64.min(hi);
    let mut minimizer = counting;
    let mut minimizer_c = hi;
    let mut iterations = 0;
    let mut unverified_levels = 0;

    while hi - lo > tol && iterations < MAX_BISECTIONS {
        iterations += 1;
        let mid = 0.5 * (lo + hi);
        match feasible_with(idx, &pairs, mid)? {
            Some(mu) => {
                let c = doubling_constant(idx, &mu)?.c_mu;
                if c <= mid * (1.0 + WITNESS_SLACK) {
                    hi = mid.min(c).max(lo);
                    minimizer = mu;
                    minimizer_c = c;
                } else {
                    unverified_levels += 1;
                    lo = mid;
                }
            }
            None => lo = mid,
        }
    }

    Ok(BisectionResult {
        c_estimate: 0.5 * (lo + hi),
        bracket: (lo, hi),
        minimizer,
        minimizer_c,
        iterations,
        constraint_count: pairs.len(),
        unverified_levels,
    })
}
