//! Doubling constant `C_mu` and local constant `C0_mu` of a measure on a graph.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BallIndex, BallMasses};
use crate::measure::Measure;

/// One quotient `mu(B(center, 2k+1)) / mu(B(center, k))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuotientWitness {
    pub center: usize,
    pub k: usize,
    pub numerator: f64,
    pub denominator: f64,
    pub ratio: f64,
}

impl QuotientWitness {
    fn new(center: usize, k: usize, numerator: f64, denominator: f64) -> Self {
        QuotientWitness {
            center,
            k,
            numerator,
            denominator,
            ratio: numerator / denominator,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DoublingReport {
    pub c_mu: f64,
    pub c_mu0: f64,
    /// `None` only for the one-vertex graph.
    pub witness: Option<QuotientWitness>,
    pub witness0: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub table: Option<Vec<QuotientWitness>>,
}

fn check_sizes(idx: &BallIndex, mu: &Measure) -> Result<()> {
    if idx.order_n() != mu.len() {
        return Err(Error::invalid(format!(
            "measure has {} weights but the graph has {} vertices",
            mu.len(),
            idx.order_n()
        )));
    }
    Ok(())
}

/// `max_x mu(B(x,1)) / mu(x)` with the smallest maximizing vertex.
pub fn local_constant(idx: &BallIndex, mu: &Measure) -> Result<(f64, usize)> {
    check_sizes(idx, mu)?;
    let masses = BallMasses::new(idx, mu);
    Ok(local_from_masses(&masses, mu))
}

fn local_from_masses(masses: &BallMasses<'_>, mu: &Measure) -> (f64, usize) {
    let mut best = (f64::NEG_INFINITY, 0);
    for x in 0..mu.len() {
        let q = masses.mass(x, 1) / mu[x];
        if q > best.0 {
            best = (q, x);
        }
    }
    best
}

/// Every quotient entering `C_mu`, ordered by `(center, k)`.
pub fn quotient_table(idx: &BallIndex, mu: &Measure) -> Result<Vec<QuotientWitness>> {
    check_sizes(idx, mu)?;
    let masses = BallMasses::new(idx, mu);
    Ok(table_from_masses(idx, &masses))
}

fn table_from_masses(idx: &BallIndex, masses: &BallMasses<'_>) -> Vec<QuotientWitness> {
    let kmax = idx.max_doubling_radius();
    let mut out = Vec::with_capacity(idx.order_n() * (kmax + 1));
    for x in 0..idx.order_n() {
        for k in 0..=kmax {
            out.push(QuotientWitness::new(
                x,
                k,
                masses.mass(x, 2 * k + 1),
                masses.mass(x, k),
            ));
        }
    }
    out
}

pub fn doubling_constant(idx: &BallIndex, mu: &Measure) -> Result<DoublingReport> {
    doubling_report(idx, mu, false)
}

/// `C_mu = max_{x, k} mu(B(x, 2k+1)) / mu(B(x, k))` over
/// `k = 0..=ceil((diam - 1) / 2)`. Ties resolve to the lexicographically
/// smallest `(center, k)`.
pub fn doubling_report(idx: &BallIndex, mu: &Measure, with_table: bool) -> Result<DoublingReport> {
    check_sizes(idx, mu)?;
    let masses = BallMasses::new(idx, mu);
    let (c_mu0, witness0) = local_from_masses(&masses, mu);
    if idx.order_n() == 1 {
        return Ok(DoublingReport {
            c_mu: 1.0,
            c_mu0,
            witness: None,
            witness0,
            table: with_table.then(Vec::new),
        });
    }
    let table = table_from_masses(idx, &masses);
    let mut best = table[0];
    for q in &table[1..] {
        if q.ratio > best.ratio {
            best = *q;
        }
    }
    Ok(DoublingReport {
        c_mu: best.ratio,
        c_mu0,
        witness: Some(best),
        witness0,
        table: with_table.then_some(table),
    })
}
