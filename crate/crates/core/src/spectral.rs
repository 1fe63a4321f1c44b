//! Largest adjacency eigenvalue and Perron vector, giving `C0_G = 1 + lambda_1(A_G)`.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::measure::Measure;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 100_000;

// Dimension of the Krylov space used to polish the power-iteration vector.
const RITZ_DIM: usize = 24;
const RITZ_ROUNDS: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    pub lambda1: f64,
    /// Positive eigenvector scaled to max entry 1.
    pub perron: Measure,
    pub iterations: usize,
    /// `max_i |(A v)_i - lambda1 v_i|`.
    pub residual: f64,
}

fn adjacency_apply(g: &Graph, v: &[f64], out: &mut [f64]) {
    for (x, o) in out.iter_mut().enumerate() {
        *o = g.neighbors(x).iter().map(|&y| v[y]).sum();
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn residual_inf(g: &Graph, v: &[f64], lambda: f64) -> f64 {
    let mut av = vec![0.0; v.len()];
    adjacency_apply(g, v, &mut av);
    av.iter()
        .zip(v)
        .map(|(a, x)| (a - lambda * x).abs())
        .fold(0.0, f64::max)
}

fn normalize_max(v: &mut [f64]) {
    let max = v.iter().cloned().fold(f64::MIN, f64::max);
    v.iter_mut().for_each(|x| *x /= max);
}

/// Power iteration on `A + I` from the all-ones vector.
///
/// The shift keeps bipartite graphs (where `-lambda_1` is also an eigenvalue)
/// from oscillating. Once the Rayleigh quotient stalls to within `tol`, the
/// vector is polished by Rayleigh-Ritz over a small Krylov space, since the
/// stall criterion alone leaves an eigenvalue error of order
/// `tol / spectral_gap` on long paths.
pub fn power_iteration(g: &Graph, tol: f64, max_iter: usize) -> Result<SpectralResult> {
    if !(tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let n = g.order();
    let mut v = vec![1.0; n];
    let mut w = vec![0.0; n];
    let mut lambda = f64::NAN;
    let mut iterations = 0;
    while iterations < max_iter {
        iterations += 1;
        adjacency_apply(g, &v, &mut w);
        w.iter_mut().zip(&v).for_each(|(a, x)| *a += x);
        let next = dot(&v, &w) / dot(&v, &v) - 1.0;
        std::mem::swap(&mut v, &mut w);
        normalize_max(&mut v);
        let stalled = (next - lambda).abs() < tol;
        lambda = next;
        if stalled {
            break;
        }
    }

    let mut residual = residual_inf(g, &v, lambda);
    for _ in 0..RITZ_ROUNDS {
        if residual <= tol * 1e-2 {
            break;
        }
        let (ritz_value, ritz_vec) = ritz_polish(g, &v);
        let r = residual_inf(g, &ritz_vec, ritz_value);
        if r >= residual {
            break;
        }
        v = ritz_vec;
        lambda = ritz_value;
        residual = r;
    }

    if residual > tol || v.iter().any(|&x| !(x > 0.0)) {
        return Err(Error::NoConvergence {
            iterations,
            residual,
        });
    }
    Ok(SpectralResult {
        lambda1: lambda,
        perron: Measure::new(v).map_err(|e| Error::Numerical(e.to_string()))?,
        iterations,
        residual,
    })
}

/// Largest Ritz pair of `A` over the Krylov space spanned from `start`.
fn ritz_polish(g: &Graph, start: &[f64]) -> (f64, Vec<f64>) {
    let n = start.len();
    let dim = RITZ_DIM.min(n);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(dim);
    let norm = dot(start, start).sqrt();
    basis.push(start.iter().map(|x| x / norm).collect());
    let mut images: Vec<Vec<f64>> = Vec::with_capacity(dim);
    loop {
        let mut av = vec![0.0; n];
        adjacency_apply(g, basis.last().unwrap(), &mut av);
        images.push(av.clone());
        if basis.len() == dim {
            break;
        }
        // two passes of Gram-Schmidt
        for _ in 0..2 {
            for q in &basis {
                let c = dot(q, &av);
                av.iter_mut().zip(q).for_each(|(a, x)| *a -= c * x);
            }
        }
        let beta = dot(&av, &av).sqrt();
        if beta < 1e-13 {
            break;
        }
        av.iter_mut().for_each(|x| *x /= beta);
        basis.push(av);
    }
    let m = basis.len();
    let projected = DMatrix::from_fn(m, m, |i, j| {
        0.5 * (dot(&basis[i], &images[j]) + dot(&basis[j], &images[i]))
    });
    let eig = SymmetricEigen::new(projected);
    let (top, _) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .fold((0, f64::MIN), |acc, (i, &l)| if l > acc.1 { (i, l) } else { acc });
    let coeffs = eig.eigenvectors.column(top);
    let mut vec = vec![0.0; n];
    for (q, c) in basis.iter().zip(coeffs.iter()) {
        vec.iter_mut().zip(q).for_each(|(v, x)| *v += c * x);
    }
    if vec.iter().sum::<f64>() < 0.0 {
        vec.iter_mut().for_each(|x| *x = -*x);
    }
    normalize_max(&mut vec);
    let mut av = vec![0.0; n];
    adjacency_apply(g, &vec, &mut av);
    let value = dot(&vec, &av) / dot(&vec, &vec);
    (value, vec)
}

/// `C0_G = 1 + lambda_1(A_G)`.
pub fn c0_spectral(g: &Graph) -> Result<f64> {
    power_iteration(g, DEFAULT_TOL, DEFAULT_MAX_ITER).map(|r| 1.0 + r.lambda1)
}

/// `C0_{L_n} = 1 + 2 cos(pi / (n + 1))`.
pub fn c0_path_closed_form(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::invalid(format!("closed form needs n >= 2, got {n}")));
    }
    Ok(1.0 + 2.0 * (std::f64::consts::PI / (n as f64 + 1.0)).cos())
}

/// Chebyshev polynomial of the second kind, `U_k(x)`, by forward recurrence.
pub fn chebyshev_u(k: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * x);
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}
