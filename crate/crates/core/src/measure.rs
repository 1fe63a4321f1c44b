//! Positive measures on the vertices of a finite graph.

use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Strictly positive, finite vertex weights. `weights[j - 1]` is the mass of
/// the 1-based vertex `j` of a path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Measure {
    weights: Vec<f64>,
}

/// Named measure constructors.
#[derive(Debug, Clone, PartialEq)]
pub enum MeasureKind {
    Counting,
    /// `sin(j pi / (n + 1))` at vertex `j`.
    Sine,
    /// Weight `alpha` at vertex 1 and 1 elsewhere, `alpha` in `[1/2, 1]`.
    LambdaAlpha(f64),
    Explicit(Vec<f64>),
}

impl Measure {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::invalid("measure needs at least one weight"));
        }
        if let Some((i, w)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !(w.is_finite() && **w > 0.0))
        {
            return Err(Error::invalid(format!(
                "weight at vertex {} must be positive and finite, got {w}",
                i + 1
            )));
        }
        Ok(Measure { weights })
    }

    pub fn counting(n: usize) -> Self {
        Measure {
            weights: vec![1.0; n],
        }
    }

    pub fn sine(n: usize) -> Self {
        let step = std::f64::consts::PI / (n as f64 + 1.0);
        Measure {
            weights: (1..=n).map(|j| (j as f64 * step).sin()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn into_weights(self) -> Vec<f64> {
        self.weights
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Mass of an arbitrary vertex set (0-based ids).
    pub fn mass_of<I: IntoIterator<Item = usize>>(&self, vertices: I) -> f64 {
        vertices.into_iter().map(|v| self.weights[v]).sum()
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Measure::new(self.weights.iter().map(|w| w * factor).collect())
    }

    /// Rescales so that the largest weight is 1.
    pub fn normalized_max(&self) -> Self {
        let max = self.weights.iter().cloned().fold(f64::MIN, f64::max);
        Measure {
            weights: self.weights.iter().map(|w| w / max).collect(),
        }
    }

    /// Rescales so that the first weight is 1.
    pub fn normalized_first(&self) -> Self {
        let first = self.weights[0];
        Measure {
            weights: self.weights.iter().map(|w| w / first).collect(),
        }
    }

    pub fn sum(&self, other: &Measure) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::invalid("measures live on different vertex sets"));
        }
        Measure::new(
            self.weights
                .iter()
                .zip(&other.weights)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// `mu(j) == mu(n + 1 - j)` up to a relative tolerance.
    pub fn is_symmetric(&self, rel_tol: f64) -> bool {
        let n = self.len();
        (0..n / 2).all(|i| {
            let (a, b) = (self.weights[i], self.weights[n - 1 - i]);
            (a - b).abs() <= rel_tol * a.abs().max(b.abs())
        })
    }

    /// Parses either one positive decimal per line or a single JSON array.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.starts_with('[') {
            let weights: Vec<f64> = serde_json::from_str(trimmed)
                .map_err(|e| Error::parse(e.line(), format!("invalid JSON array: {e}")))?;
            return Measure::new(weights).map_err(|e| Error::parse(1, e.to_string()));
        }
        let mut weights = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let w: f64 = line
                .parse()
                .map_err(|_| Error::parse(i + 1, format!("`{line}` is not a number")))?;
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::parse(i + 1, format!("weight {w} is not positive")));
            }
            weights.push(w);
        }
        if weights.is_empty() {
            return Err(Error::parse(1, "no weights given"));
        }
        Ok(Measure { weights })
    }
}

impl Index<usize> for Measure {
    type Output = f64;

    fn index(&self, v: usize) -> &f64 {
        &self.weights[v]
    }
}

pub fn make_measure(kind: &MeasureKind, n: usize) -> Result<Measure> {
    if n == 0 {
        return Err(Error::invalid("measure needs at least one vertex"));
    }
    match kind {
        MeasureKind::Counting => Ok(Measure::counting(n)),
        MeasureKind::Sine => Ok(Measure::sine(n)),
        MeasureKind::LambdaAlpha(alpha) => {
            check_alpha(*alpha)?;
            let mut weights = vec![1.0; n];
            weights[0] = *alpha;
            Ok(Measure { weights })
        }
        MeasureKind::Explicit(weights) => {
            if weights.len() != n {
                return Err(Error::invalid(format!(
                    "expected {n} weights, got {}",
                    weights.len()
                )));
            }
            Measure::new(weights.clone())
        }
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if (0.5..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::invalid(format!("alpha must lie in [1/2, 1], got {alpha}")))
    }
}

/// `mu~(j) = mu(j) + mu(n + 1 - j)`.
pub fn symmetrize(mu: &Measure) -> Measure {
    let w = &mu.weights;
    let n = w.len();
    Measure {
        weights: (0..n).map(|i| w[i] + w[n - 1 - i]).collect(),
    }
}

/// Adds `theta` to the weight at vertex `i` (0-based).
pub fn perturb(mu: &Measure, i: usize, theta: f64) -> Result<Measure> {
    if i >= mu.len() {
        return Err(Error::invalid(format!("vertex {} out of range", i + 1)));
    }
    let updated = mu.weights[i] + theta;
    if !(updated.is_finite() && updated > 0.0) {
        return Err(Error::invalid(format!(
            "perturbation leaves weight {updated} at vertex {}",
            i + 1
        )));
    }
    let mut weights = mu.weights.clone();
    weights[i] = updated;
    Ok(Measure { weights })
}
