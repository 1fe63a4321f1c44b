//! Path graphs `L_n`: the restricted quotient families `M1`/`M2`, the
//! decomposition `C_mu = max{M1, M2, C0}` for symmetric measures with
//! `C0 < 3`, and a dedicated solver for `C_{L_n}`.
//!
//! Vertex labels in this module's public API are 1-based (`j = 1..=n`) to
//! match the usual labelling of `L_n`. Measures are still stored 0-based.
//!
//! The solver assumes a symmetric minimizer whose local quotients
//! `(mu(j-1) + mu(j) + mu(j+1)) / mu(j)` all equal `C` for `2 <= j <= n-1`,
//! and whose left-end quotient `mu(B(1, 2k+1)) / mu(B(1, k))` equals `C` for
//! some radius `k`. With `mu(1) = 1` and `s = mu(2)` the interior equations
//! are the recurrence `mu(j+1) = (C - 1) mu(j) - mu(j-1)`, so every weight is
//! affine in `s`; the symmetric boundary fixes `s(C)` and only a scalar root
//! in `C` remains. Every candidate is validated against the full doubling
//! constant before it is accepted.

use serde::{Deserialize, Serialize};

use crate::doubling::{doubling_constant, local_constant};
use crate::error::{Error, Result};
use crate::graph::{distance_table, BallIndex, Graph};
use crate::measure::{perturb, Measure};
use crate::optimizer::least_doubling;
use crate::roots::bracketed_root;
use crate::spectral::c0_path_closed_form;

pub const DEFAULT_TOL: f64 = 1e-12;
/// Largest `n` for which the solver re-runs the general optimizer as a cross-check.
pub const CROSS_CHECK_MAX_N: usize = 30;

const SCAN_POINTS: usize = 2000;
const ROOT_MAX_ITER: usize = 500;
// Accept a system solution when the full doubling constant of the rebuilt
// measure agrees with C within VALIDATION_FACTOR * tol.
const VALIDATION_FACTOR: f64 = 100.0;
const DECOMPOSE_REL_TOL: f64 = 1e-12;
// Quotient gaps below this relative size are rounding noise.
const ROUNDOFF: f64 = 1e-14;

fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0)
}

/// `ceil(n / 2)`, the (left) middle vertex.
pub fn middle(n: usize) -> usize {
    n.div_ceil(2)
}

/// Number of radii in `M1`: `ceil((n - 2) / 3)`.
pub fn m1_radius_count(n: usize) -> usize {
    ceil_div(n as i64 - 2, 3).max(0) as usize
}

/// The empirical radius `ceil((n - 8.6) / 5.6)`, clamped to the `M1` range.
pub fn heuristic_radius(n: usize) -> usize {
    let k = ((n as f64 - 8.6) / 5.6).ceil().max(0.0) as usize;
    k.min(m1_radius_count(n).saturating_sub(1))
}

/// `(j, k)` pairs entering `M2`, in lexicographic order.
pub fn m2_index_set(n: usize) -> Vec<(usize, usize)> {
    let n = n as i64;
    let m = ceil_div(n, 2);
    let mut out = Vec::new();
    for j in 2..m {
        for k in 0..n {
            let lower = m - j - 1 < 2 * k;
            let upper = 2 * k < j - 2 && k < ceil_div(n - 2 * j, 3) && k < m - j;
            if lower && upper {
                out.push((j as usize, k as usize));
            }
        }
    }
    out
}

/// Prefix sums on `L_n` for O(1) ball masses with 1-based centers.
struct PathMasses {
    prefix: Vec<f64>,
}

impl PathMasses {
    fn new(mu: &Measure) -> Self {
        let mut prefix = Vec::with_capacity(mu.len() + 1);
        prefix.push(0.0);
        let mut acc = 0.0;
        for &w in mu.weights() {
            acc += w;
            prefix.push(acc);
        }
        PathMasses { prefix }
    }

    fn ball(&self, j: usize, r: usize) -> f64 {
        let n = self.prefix.len() - 1;
        let lo = j.saturating_sub(r).max(1);
        let hi = (j + r).min(n);
        self.prefix[hi] - self.prefix[lo - 1]
    }

    fn quotient(&self, j: usize, k: usize) -> f64 {
        self.ball(j, 2 * k + 1) / self.ball(j, k)
    }
}

fn require_path_size(mu: &Measure, min: usize) -> Result<usize> {
    let n = mu.len();
    if n < min {
        return Err(Error::invalid(format!("needs a path with n >= {min}, got {n}")));
    }
    Ok(n)
}

/// `M1(mu) = max_{0 <= k < ceil((n-2)/3)} mu(B(1, 2k+1)) / mu(B(1, k))`.
pub fn m1(mu: &Measure) -> Result<(f64, usize)> {
    let n = require_path_size(mu, 3)?;
    let pm = PathMasses::new(mu);
    let mut best = (f64::NEG_INFINITY, 0);
    for k in 0..m1_radius_count(n) {
        let q = pm.quotient(1, k);
        if q > best.0 {
            best = (q, k);
        }
    }
    Ok(best)
}

/// `M2(mu)` with its `(j, k)` witness, or `None` when the index set is empty.
pub fn m2(mu: &Measure) -> Result<Option<(f64, (usize, usize))>> {
    let n = require_path_size(mu, 3)?;
    let pm = PathMasses::new(mu);
    let mut best: Option<(f64, (usize, usize))> = None;
    for (j, k) in m2_index_set(n) {
        let q = pm.quotient(j, k);
        if best.map_or(true, |(b, _)| q > b) {
            best = Some((q, (j, k)));
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathQuotients {
    pub m1: (f64, usize),
    /// `None` when the `M2` index set is empty (compares as 0).
    pub m2: Option<(f64, (usize, usize))>,
    /// `C0_mu` with its 1-based witness vertex.
    pub c0: (f64, usize),
    pub c: f64,
}

impl PathQuotients {
    pub fn restricted_max(&self) -> f64 {
        let m2 = self.m2.map_or(0.0, |(v, _)| v);
        self.m1.0.max(m2).max(self.c0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub quotients: PathQuotients,
    /// `C0_mu < 3`, the hypothesis under which the identity holds.
    pub applicable: bool,
    /// `|C - max{M1, M2, C0}| < 1e-12 C` and `applicable`.
    pub equality: bool,
}

pub fn decompose(mu: &Measure) -> Result<Decomposition> {
    let n = require_path_size(mu, 3)?;
    if !mu.is_symmetric(1e-12) {
        return Err(Error::invalid("decomposition needs a symmetric measure"));
    }
    let idx = path_index(n)?;
    let (c0, x0) = local_constant(&idx, mu)?;
    let c = doubling_constant(&idx, mu)?.c_mu;
    let quotients = PathQuotients {
        m1: m1(mu)?,
        m2: m2(mu)?,
        c0: (c0, x0 + 1),
        c,
    };
    let applicable = c0 < 3.0;
    let equality = applicable && (c - quotients.restricted_max()).abs() < DECOMPOSE_REL_TOL * c;
    Ok(Decomposition {
        quotients,
        applicable,
        equality,
    })
}

fn path_index(n: usize) -> Result<BallIndex> {
    Ok(distance_table(&Graph::path(n)?))
}

/// Coefficients `(A_j, B_j)` for `j = 1..=len` with `mu(j) = A_j + B_j s`
/// under `mu(1) = 1`, `mu(2) = s` and `mu(j+1) = (c - 1) mu(j) - mu(j-1)`.
/// Index 0 of each vector is vertex 1.
pub fn recurrence_coefficients(len: usize, c: f64) -> (Vec<f64>, Vec<f64>) {
    let mut a = vec![1.0, 0.0];
    let mut b = vec![0.0, 1.0];
    while a.len() < len {
        let j = a.len();
        a.push((c - 1.0) * a[j - 1] - a[j - 2]);
        b.push((c - 1.0) * b[j - 1] - b[j - 2]);
    }
    a.truncate(len);
    b.truncate(len);
    (a, b)
}

/// Half-path weights `mu(1..=m)` solving the interior recurrence and the
/// symmetric boundary equation at level `c`, or `None` if the boundary
/// equation does not determine `s`.
fn half_weights(n: usize, c: f64) -> Option<Vec<f64>> {
    let m = middle(n);
    let (a, b) = recurrence_coefficients(m.max(2), c);
    if m == 1 {
        return Some(vec![1.0]);
    }
    let (am, bm, am1, bm1) = (a[m - 1], b[m - 1], a[m - 2], b[m - 2]);
    // (c-1) mu(m) = mu(m-1) + mu(m+1), with mu(m+1) = mu(m) for even n and
    // mu(m+1) = mu(m-1) for odd n.
    let (coef_a, coef_b) = if n % 2 == 0 {
        ((c - 2.0) * am - am1, (c - 2.0) * bm - bm1)
    } else {
        ((c - 1.0) * am - 2.0 * am1, (c - 1.0) * bm - 2.0 * bm1)
    };
    if coef_b == 0.0 || !coef_b.is_finite() {
        return None;
    }
    let s = -coef_a / coef_b;
    Some((0..m).map(|j| a[j] + b[j] * s).collect())
}

fn mirror(n: usize, half: &[f64]) -> Vec<f64> {
    (0..n).map(|i| half[i.min(n - 1 - i)]).collect()
}

/// `mu(B(1, 2k+1)) - c mu(B(1, k))` for the system measure at level `c`.
fn m1_gap(n: usize, k: usize, c: f64) -> f64 {
    match half_weights(n, c) {
        None => f64::NAN,
        Some(half) => {
            let w = mirror(n, &half);
            let outer: f64 = w[..(2 * k + 2).min(n)].iter().sum();
            let inner: f64 = w[..(k + 1).min(n)].iter().sum();
            outer - c * inner
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum ScanOutcome {
    /// A sign change was found but no root produced positive increasing weights.
    NoAdmissibleRoot { roots: usize },
    /// Admissible root whose full doubling constant disagrees with `c`.
    Rejected { c: f64, full_c: f64 },
    Validated { c: f64 },
    NoSignChange,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub k: usize,
    #[serde(flatten)]
    pub outcome: ScanOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub global_estimate: f64,
    pub difference: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathMinimizerResult {
    pub n: usize,
    pub k_star: usize,
    pub c: f64,
    /// Symmetric minimizer normalized to `mu(1) = 1`.
    pub weights: Measure,
    /// Doubling constant of `weights` computed over every ball.
    pub full_c: f64,
    /// `|mu(m-1) + mu(m) + mu(m+1) - c mu(m)| / mu(m)` at the middle vertex.
    pub boundary_residual: f64,
    /// `|mu(B(1, 2k+1)) - c mu(B(1, k))| / mu(B(1, 2k+1))` at `k_star`.
    pub m1_residual: f64,
    pub validated: bool,
    pub scan_log: Vec<ScanEntry>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cross_check: Option<CrossCheck>,
}

fn residuals(n: usize, k: usize, c: f64, w: &[f64]) -> (f64, f64) {
    let pm = PathMasses::new(&Measure::new(w.to_vec()).expect("positive weights"));
    let m = middle(n);
    let boundary = if n >= 2 {
        (pm.ball(m, 1) - c * w[m - 1]).abs() / w[m - 1]
    } else {
        0.0
    };
    let outer = pm.ball(1, 2 * k + 1);
    let m1 = (outer - c * pm.ball(1, k)).abs() / outer;
    (boundary, m1)
}

fn admissible(half: &[f64]) -> bool {
    half.iter().all(|&w| w.is_finite() && w > 0.0) && half.windows(2).all(|p| p[0] < p[1])
}

struct Candidate {
    c: f64,
    weights: Vec<f64>,
    full_c: f64,
    validated: bool,
}

fn solve_radius(n: usize, k: usize, tol: f64, idx: &BallIndex) -> Result<(ScanOutcome, Option<Candidate>)> {
    let lo = c0_path_closed_form(n)? - 1e-9;
    let hi = 3.0 - 1e-12;
    let grid: Vec<f64> = (0..=SCAN_POINTS)
        .map(|i| lo + (hi - lo) * i as f64 / SCAN_POINTS as f64)
        .collect();
    let values: Vec<f64> = grid.iter().map(|&c| m1_gap(n, k, c)).collect();

    let mut roots = 0;
    let mut best: Option<Candidate> = None;
    for i in 0..SCAN_POINTS {
        let (fa, fb) = (values[i], values[i + 1]);
        let counted_before = fa == 0.0 && i > 0;
        if counted_before || !(fa.is_finite() && fb.is_finite()) || (fa.signum() == fb.signum() && fb != 0.0) {
            continue;
        }
        roots += 1;
        let root = bracketed_root(|c| m1_gap(n, k, c), grid[i], grid[i + 1], tol, ROOT_MAX_ITER)?;
        let c = root.x;
        let Some(half) = half_weights(n, c) else { continue };
        if !admissible(&half) {
            continue;
        }
        let weights = mirror(n, &half);
        let mu = Measure::new(weights.clone()).map_err(|e| Error::Numerical(e.to_string()))?;
        let full_c = doubling_constant(idx, &mu)?.c_mu;
        let validated = (full_c - c).abs() <= VALIDATION_FACTOR * tol.max(f64::EPSILON) * c;
        let cand = Candidate {
            c,
            weights,
            full_c,
            validated,
        };
        let replace = match &best {
            None => true,
            Some(b) => (cand.validated, -cand.c) > (b.validated, -b.c),
        };
        if replace {
            best = Some(cand);
        }
    }
    let outcome = match &best {
        None if roots == 0 => ScanOutcome::NoSignChange,
        None => ScanOutcome::NoAdmissibleRoot { roots },
        Some(b) if b.validated => ScanOutcome::Validated { c: b.c },
        Some(b) => ScanOutcome::Rejected {
            c: b.c,
            full_c: b.full_c,
        },
    };
    Ok((outcome, best))
}

fn into_result(n: usize, k: usize, cand: Candidate, scan_log: Vec<ScanEntry>) -> PathMinimizerResult {
    let (boundary_residual, m1_residual) = residuals(n, k, cand.c, &cand.weights);
    PathMinimizerResult {
        n,
        k_star: k,
        c: cand.c,
        weights: Measure::new(cand.weights).expect("admissible weights are positive"),
        full_c: cand.full_c,
        boundary_residual,
        m1_residual,
        validated: cand.validated,
        scan_log,
        cross_check: None,
    }
}

/// Solves the minimizer system for one `M1` radius `k`.
///
/// Returns `None` when no root in `[C0_{L_n} - 1e-9, 3)` yields positive,
/// strictly increasing half-path weights. Among admissible roots a validated
/// one with minimal `C` is preferred.
pub fn solve_system(n: usize, k: usize, tol: f64) -> Result<Option<PathMinimizerResult>> {
    if n < 3 {
        return Err(Error::invalid(format!("system needs n >= 3, got {n}")));
    }
    if k >= m1_radius_count(n) {
        return Err(Error::invalid(format!(
            "radius {k} outside the M1 range 0..{} for n = {n}",
            m1_radius_count(n)
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let idx = path_index(n)?;
    let (outcome, best) = solve_radius(n, k, tol, &idx)?;
    Ok(best.map(|cand| into_result(n, k, cand, vec![ScanEntry { k, outcome }])))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathSolverConfig {
    pub tol: f64,
    /// Re-run the general optimizer for `n <= CROSS_CHECK_MAX_N`.
    pub cross_check: bool,
    pub cross_check_tol: f64,
}

impl Default for PathSolverConfig {
    fn default() -> Self {
        PathSolverConfig {
            tol: DEFAULT_TOL,
            cross_check: true,
            cross_check_tol: crate::optimizer::DEFAULT_TOL,
        }
    }
}

/// `M1` radii ordered by distance from the heuristic radius (ties: smaller k).
pub fn scan_order(n: usize) -> Vec<usize> {
    let k0 = heuristic_radius(n);
    let mut ks: Vec<usize> = (0..m1_radius_count(n)).collect();
    ks.sort_by_key(|&k| (k.abs_diff(k0), k));
    ks
}

/// `C_{L_n}` with a symmetric minimizer.
pub fn least_doubling_path(n: usize, config: &PathSolverConfig) -> Result<PathMinimizerResult> {
    if n < 2 {
        return Err(Error::invalid(format!("path solver needs n >= 2, got {n}")));
    }
    if !(config.tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let idx = path_index(n)?;
    let mut result = if n <= 8 {
        let c = c0_path_closed_form(n)?;
        let mu = Measure::sine(n).normalized_first();
        let full_c = doubling_constant(&idx, &mu)?.c_mu;
        let validated = (full_c - c).abs() <= VALIDATION_FACTOR * config.tol * c;
        into_result(
            n,
            0,
            Candidate {
                c,
                weights: mu.into_weights(),
                full_c,
                validated,
            },
            vec![ScanEntry {
                k: 0,
                outcome: ScanOutcome::Validated { c },
            }],
        )
    } else {
        let mut log = Vec::new();
        let mut best: Option<(usize, Candidate)> = None;
        for k in scan_order(n) {
            let (outcome, cand) = solve_radius(n, k, config.tol, &idx)?;
            log.push(ScanEntry { k, outcome });
            if let Some(cand) = cand.filter(|c| c.validated) {
                if best.as_ref().map_or(true, |(_, b)| cand.c < b.c) {
                    best = Some((k, cand));
                }
            }
        }
        let (k, cand) = best.ok_or(Error::NoValidatedCandidate { n })?;
        into_result(n, k, cand, log)
    };
    if config.cross_check && n <= CROSS_CHECK_MAX_N {
        let global = least_doubling(&idx, config.cross_check_tol)?.c_estimate;
        result.cross_check = Some(CrossCheck {
            global_estimate: global,
            difference: result.c - global,
        });
    }
    Ok(result)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Refinement {
    pub measure: Measure,
    pub middle_adjusted: bool,
    pub end_adjusted: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub warning: Option<String>,
}

/// Pushes the middle and `j = 2` local quotients of a symmetric measure up to
/// `c` by lowering the middle weight(s) and raising the end weights.
///
/// The perturbations are applied symmetrically: on even paths both middle
/// vertices drop by `eps = (c mu(m) - mu(B(m,1))) / (c - d_n)` with
/// `d_n = (3 + (-1)^n) / 2`, and both ends gain
/// `theta = c nu(2) - nu(B(2,1))`.
pub fn refine_minimizer(mu: &Measure, c: f64) -> Result<Refinement> {
    let n = require_path_size(mu, 2)?;
    if !mu.is_symmetric(1e-12) {
        return Err(Error::invalid("refinement needs a symmetric measure"));
    }
    let unchanged = |warning: String| Refinement {
        measure: mu.clone(),
        middle_adjusted: false,
        end_adjusted: false,
        warning: Some(warning),
    };
    let m = middle(n);
    let d_n = if n % 2 == 0 { 2.0 } else { 1.0 };
    let mid_vertices: Vec<usize> = if n % 2 == 0 { vec![m - 1, m] } else { vec![m - 1] };

    let mut nu = mu.clone();
    let mut middle_adjusted = false;
    let pm = PathMasses::new(&nu);
    let gap = c * nu[m - 1] - pm.ball(m, 1);
    if gap > ROUNDOFF * c * nu[m - 1] {
        let eps = gap / (c - d_n);
        if !(eps < nu[m - 1]) || !eps.is_finite() {
            return Ok(unchanged(format!(
                "middle perturbation {eps} would exhaust weight {}",
                nu[m - 1]
            )));
        }
        for &v in &mid_vertices {
            nu = match perturb(&nu, v, -eps) {
                Ok(p) => p,
                Err(e) => return Ok(unchanged(e.to_string())),
            };
        }
        middle_adjusted = true;
    }

    let mut end_adjusted = false;
    if n >= 3 {
        let pm = PathMasses::new(&nu);
        let gap = c * nu[1] - pm.ball(2, 1);
        if gap > ROUNDOFF * c * nu[1] && m != 2 {
            for v in [0, n - 1] {
                nu = match perturb(&nu, v, gap) {
                    Ok(p) => p,
                    Err(e) => return Ok(unchanged(e.to_string())),
                };
            }
            end_adjusted = true;
        }
    }
    Ok(Refinement {
        measure: nu,
        middle_adjusted,
        end_adjusted,
        warning: None,
    })
}

/// Integer coefficients, highest degree first, of the polynomials whose
/// largest roots are `C_{L_9}`, `C_{L_10}` and `C_{L_51}`.
pub fn certificate_polynomial(n: usize) -> Option<&'static [i64]> {
    const P9: [i64; 5] = [1, -5, 7, -3, 1];
    const P10: [i64; 5] = [1, -3, 0, 1, -1];
    const P51: [i64; 27] = [
        1, -25, 276, -1747, 6808, -15708, 14861, 24091, -92682, 87057, 77858, -234588, 102327,
        199171, -225057, -41798, 165000, -36531, -58763, 25759, 10011, -6268, -646, 597, 6, -12,
        0,
    ];
    match n {
        9 => Some(&P9),
        10 => Some(&P10),
        51 => Some(&P51),
        _ => None,
    }
}

/// `|p(c)| / sum_i |coef_i c^i|` for the certificate polynomial of `n`.
pub fn poly_residual(n: usize, c: f64) -> Result<f64> {
    let coeffs = certificate_polynomial(n)
        .ok_or_else(|| Error::invalid(format!("no certificate polynomial for n = {n}")))?;
    let (mut value, mut scale) = (0.0f64, 0.0f64);
    for &a in coeffs {
        value = value * c + a as f64;
        scale = scale * c.abs() + (a as f64).abs();
    }
    Ok(if scale == 0.0 { 0.0 } else { value.abs() / scale })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::chebyshev_u;

    #[test]
    fn m1_examples() {
        assert_eq!(m1(&Measure::counting(20)).unwrap().0, 2.0);
        let (v, k) = m1(&Measure::sine(3)).unwrap();
        assert!((v - (1.0 + 2f64.sqrt())).abs() < 1e-14);
        assert_eq!(k, 0);
        assert_eq!(m1(&Measure::counting(5)).unwrap(), (2.0, 0));
        assert!(m1(&Measure::counting(2)).is_err());
    }

    /// Brute-force M2 index set straight from the real-valued inequalities.
    fn m2_oracle(n: usize) -> Vec<(usize, usize)> {
        let nf = n as f64;
        let m = (nf / 2.0).ceil();
        let mut out = Vec::new();
        for j in 2..n {
            for k in 0..n {
                let (jf, kf) = (j as f64, k as f64);
                let ok = 1.0 < jf
                    && jf < m
                    && (m - jf - 1.0) / 2.0 < kf
                    && kf < ((jf - 2.0) / 2.0).min(((nf - 2.0 * jf) / 3.0).ceil()).min(m - jf);
                if ok {
                    out.push((j, k));
                }
            }
        }
        out
    }

    #[test]
    fn m2_index_set_matches_real_inequalities() {
        for n in 3..=120 {
            assert_eq!(m2_index_set(n), m2_oracle(n), "n = {n}");
        }
    }

    #[test]
    fn m2_examples() {
        let (v, w) = m2(&Measure::counting(20)).unwrap().unwrap();
        assert!((v - 7.0 / 3.0).abs() < 1e-15);
        assert_eq!(w, (8, 1));
        assert_eq!(m2(&Measure::new(vec![1.0, 2.0, 3.0, 2.0, 1.0]).unwrap()).unwrap(), None);
        // Enumerated independently: sigma(B(18,3)) / sigma(B(18,1)) on L_40,
        // which is (1 + 2(c1 + c2 + c3)) / (1 + 2 c1) with ci = cos(i pi / 41).
        let (v, w) = m2(&Measure::sine(40)).unwrap().unwrap();
        assert_eq!(w, (18, 1));
        assert!((v - 2.310_547_503_060_172_8).abs() < 1e-13);
        assert!(v < 7.0 / 3.0 && v < c0_path_closed_form(40).unwrap());
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(&Measure::sine(12)).unwrap();
        assert!(d.applicable && d.equality);
        let d = decompose(&Measure::counting(6)).unwrap();
        assert!(!d.applicable && !d.equality);
        let d = decompose(&Measure::sine(3)).unwrap();
        assert!(d.equality);
        assert!((d.quotients.c - (1.0 + 2f64.sqrt())).abs() < 1e-12);
        assert!(decompose(&Measure::new(vec![1.0, 2.0, 3.0]).unwrap()).is_err());
    }

    #[test]
    fn recurrence_matches_chebyshev() {
        for &c in &[2.1, 2.5, 2.93, 2.999] {
            let x = (c - 1.0) / 2.0;
            let (a, b) = recurrence_coefficients(30, c);
            for j in 2..30 {
                // vertex j + 1 in 1-based labels
                assert!((b[j] - chebyshev_u(j - 1, x)).abs() < 1e-9 * chebyshev_u(j - 1, x).abs().max(1.0));
                assert!((a[j] + chebyshev_u(j - 2, x)).abs() < 1e-9 * chebyshev_u(j - 2, x).abs().max(1.0));
            }
        }
    }

    #[test]
    fn solve_system_small_path_is_sine() {
        let r = solve_system(5, 0, DEFAULT_TOL).unwrap().unwrap();
        assert!((r.c - (1.0 + 3f64.sqrt())).abs() < 1e-10);
        let sine = Measure::sine(5).normalized_first();
        for (a, b) in r.weights.weights().iter().zip(sine.weights()) {
            assert!((a - b).abs() < 1e-9);
        }
        assert!(r.validated);
    }

    #[test]
    fn solve_system_range_checks() {
        assert!(solve_system(9, 3, DEFAULT_TOL).is_err());
        assert!(solve_system(2, 0, DEFAULT_TOL).is_err());
        assert!(solve_system(9, 0, 0.0).is_err());
    }

    #[test]
    fn solve_system_l9_l10() {
        let r = solve_system(9, 1, DEFAULT_TOL).unwrap().unwrap();
        assert!(r.validated);
        assert!((r.c - 2.905_166_167_754_018_8).abs() < 1e-10);
        let r = solve_system(10, 1, DEFAULT_TOL).unwrap().unwrap();
        assert!(r.validated);
        assert!((r.c - 2.922_999_610_168_972_6).abs() < 1e-10);
    }

    #[test]
    fn heuristic_radius_values() {
        assert_eq!(heuristic_radius(9), 1);
        assert_eq!(heuristic_radius(20), 3);
        assert_eq!(heuristic_radius(51), 8);
        assert_eq!(heuristic_radius(4), 0);
        assert_eq!(scan_order(20), vec![3, 2, 4, 1, 5, 0]);
    }

    #[test]
    fn least_doubling_path_small_n() {
        let cfg = PathSolverConfig {
            cross_check: false,
            ..Default::default()
        };
        let r = least_doubling_path(8, &cfg).unwrap();
        assert!((r.c - 2.879_385_241_571_817).abs() < 1e-12);
        assert!(r.validated);
        assert_eq!(r.weights[0], 1.0);
        assert!(least_doubling_path(1, &cfg).is_err());
        let r = least_doubling_path(2, &cfg).unwrap();
        assert_eq!(r.c, 2.0);
    }

    #[test]
    fn least_doubling_path_l9_with_cross_check() {
        let r = least_doubling_path(9, &PathSolverConfig::default()).unwrap();
        assert!((r.c - 2.905_166_167_754_018_8).abs() < 1e-9);
        assert_eq!(r.k_star, 1);
        assert!(r.weights.is_symmetric(1e-12));
        assert!(r.boundary_residual < 1e-9 && r.m1_residual < 1e-9);
        assert!(r.cross_check.unwrap().difference.abs() < 1e-6);
    }

    #[test]
    fn refine_examples() {
        // The sine measure on L_7 already attains every local equality.
        let mu = Measure::sine(7);
        let c = 1.0 + 2.0 * (std::f64::consts::PI / 8.0).cos();
        let r = refine_minimizer(&mu, c).unwrap();
        assert!(!r.middle_adjusted && !r.end_adjusted);
        assert_eq!(r.measure, mu);
        assert!(refine_minimizer(&Measure::new(vec![1.0, 2.0, 4.0]).unwrap(), 2.5).is_err());
    }

    #[test]
    fn refine_raises_both_quotients_to_c() {
        for n in [9usize, 10] {
            let mu = Measure::counting(n);
            let c = 3.2;
            let r = refine_minimizer(&mu, c).unwrap();
            assert!(r.middle_adjusted && r.end_adjusted, "n={n}");
            let pm = PathMasses::new(&r.measure);
            let m = middle(n);
            assert!((pm.ball(m, 1) / r.measure[m - 1] - c).abs() < 1e-12);
            assert!((pm.ball(2, 1) / r.measure[1] - c).abs() < 1e-12);
            assert!(r.measure.is_symmetric(1e-12));
        }
    }

    #[test]
    fn refine_guard_returns_input() {
        // n = 2: both vertices drop, the middle quotient cannot move.
        let mu = Measure::counting(2);
        let r = refine_minimizer(&mu, 2.5).unwrap();
        assert!(r.warning.is_some());
        assert_eq!(r.measure, mu);
    }

    #[test]
    fn poly_residual_examples() {
        assert!(poly_residual(9, 2.905_166_167_754_018_8).unwrap() < 1e-9);
        assert!(poly_residual(10, 2.922_999_610_168_972_6).unwrap() < 1e-9);
        // p9(3) = 81 - 135 + 63 - 9 + 1 = 1; scale = 81 + 135 + 63 + 9 + 1
        let r = poly_residual(9, 3.0).unwrap();
        assert!((r - 1.0 / 289.0).abs() < 1e-15);
        assert!(poly_residual(11, 2.9).is_err());
    }
}
