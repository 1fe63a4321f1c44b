//! Phase-1 simplex for systems `A y <= b, y >= 0`.
//!
//! Dense dictionary form with a single auxiliary variable `x0`:
//! maximize `-x0` subject to `A y - x0 <= b`. The system is feasible iff
//! the auxiliary optimum is zero. The dictionary stores only the nonbasic
//! columns, so a pivot costs `O(rows * (vars + 1))`.

use crate::error::{Error, Result};

/// Auxiliary optimum above which the system is declared infeasible.
pub const FEASIBILITY_SLACK: f64 = 1e-9;

const PIVOT_EPS: f64 = 1e-11;
const COST_EPS: f64 = 1e-12;
// Consecutive degenerate pivots tolerated under the largest-coefficient
// rule before switching to Bland's rule.
const DEGENERATE_SWITCH: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    /// A point `y >= 0` satisfying every row up to the auxiliary optimum.
    Feasible { point: Vec<f64>, aux_optimum: f64 },
    /// The auxiliary optimum exceeds [`FEASIBILITY_SLACK`].
    Infeasible { aux_optimum: f64 },
}

#[derive(Debug, Clone)]
pub struct InequalitySystem {
    vars: usize,
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
}

impl InequalitySystem {
    pub fn new(vars: usize) -> Self {
        InequalitySystem {
            vars,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    /// Adds `coeffs . y <= rhs`.
    pub fn push(&mut self, coeffs: Vec<f64>, rhs: f64) {
        assert_eq!(coeffs.len(), self.vars);
        self.rows.push(coeffs);
        self.rhs.push(rhs);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn solve(&self) -> Result<Feasibility> {
        Dictionary::new(self).run()
    }
}

struct Dictionary {
    m: usize,
    cols: usize,
    // basic_r = rhs[r] - sum_c coef[r * cols + c] * nonbasic_c
    coef: Vec<f64>,
    rhs: Vec<f64>,
    // objective = obj0 + sum_c obj[c] * nonbasic_c
    obj: Vec<f64>,
    obj0: f64,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
    vars: usize,
}

impl Dictionary {
    // Variable ids: 0..vars are y, vars..vars+m are slacks, vars+m is x0.
    fn new(sys: &InequalitySystem) -> Self {
        let m = sys.rows.len();
        let cols = sys.vars + 1;
        let mut coef = Vec::with_capacity(m * cols);
        for row in &sys.rows {
            coef.extend_from_slice(row);
            coef.push(-1.0);
        }
        let mut obj = vec![0.0; cols];
        obj[sys.vars] = -1.0;
        Dictionary {
            m,
            cols,
            coef,
            rhs: sys.rhs.clone(),
            obj,
            obj0: 0.0,
            basic: (sys.vars..sys.vars + m).collect(),
            nonbasic: (0..=sys.vars).map(|c| if c == sys.vars { sys.vars + m } else { c }).collect(),
            vars: sys.vars,
        }
    }

    fn aux_id(&self) -> usize {
        self.vars + self.m
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let cols = self.cols;
        let p = self.coef[row * cols + col];
        // Solve the pivot row for the entering variable.
        let inv = 1.0 / p;
        for c in 0..cols {
            self.coef[row * cols + c] *= inv;
        }
        self.coef[row * cols + col] = inv;
        self.rhs[row] *= inv;

        let pivot_row: Vec<f64> = self.coef[row * cols..(row + 1) * cols].to_vec();
        let pivot_rhs = self.rhs[row];
        for r in 0..self.m {
            if r == row {
                continue;
            }
            let factor = self.coef[r * cols + col];
            if factor == 0.0 {
                continue;
            }
            let base = r * cols;
            for c in 0..cols {
                if c == col {
                    self.coef[base + c] = -factor * pivot_row[c];
                } else {
                    self.coef[base + c] -= factor * pivot_row[c];
                }
            }
            self.rhs[r] -= factor * pivot_rhs;
        }
        let factor = self.obj[col];
        if factor != 0.0 {
            for c in 0..cols {
                if c == col {
                    self.obj[c] = -factor * pivot_row[c];
                } else {
                    self.obj[c] -= factor * pivot_row[c];
                }
            }
            self.obj0 += factor * pivot_rhs;
        }
        std::mem::swap(&mut self.basic[row], &mut self.nonbasic[col]);
    }

    fn run(mut self) -> Result<Feasibility> {
        let x0_col = self.cols - 1;
        let (worst_row, worst) = self
            .rhs
            .iter()
            .enumerate()
            .fold((0, 0.0), |acc, (r, &b)| if b < acc.1 { (r, b) } else { acc });
        if worst >= 0.0 {
            return Ok(Feasibility::Feasible {
                point: vec![0.0; self.vars],
                aux_optimum: 0.0,
            });
        }
        self.pivot(worst_row, x0_col);

        let max_pivots = 50 * (self.m + self.cols) + 1000;
        let mut degenerate_run = 0;
        for _ in 0..max_pivots {
            if !self.obj0.is_finite() {
                return Err(Error::Numerical("non-finite phase-1 objective".into()));
            }
            let bland = degenerate_run >= DEGENERATE_SWITCH;
            let Some(col) = self.entering(bland) else {
                return Ok(self.finish());
            };
            let Some(row) = self.leaving(col) else {
                // The auxiliary objective is bounded by zero.
                return Err(Error::Numerical("phase-1 reported unbounded".into()));
            };
            if self.rhs[row].abs() <= PIVOT_EPS {
                degenerate_run += 1;
            } else {
                degenerate_run = 0;
            }
            self.pivot(row, col);
            if self.basic.iter().all(|&b| b != self.aux_id()) && self.obj0 >= -COST_EPS {
                // x0 left the basis at value zero: optimum reached.
                return Ok(self.finish());
            }
        }
        Err(Error::Numerical(format!(
            "phase-1 simplex exceeded {max_pivots} pivots"
        )))
    }

    fn entering(&self, bland: bool) -> Option<usize> {
        let candidates = (0..self.cols).filter(|&c| self.obj[c] > COST_EPS);
        if bland {
            candidates.min_by_key(|&c| self.nonbasic[c])
        } else {
            candidates.max_by(|&a, &b| self.obj[a].total_cmp(&self.obj[b]))
        }
    }

    fn leaving(&self, col: usize) -> Option<usize> {
        let aux = self.aux_id();
        let mut best: Option<(usize, f64)> = None;
        for r in 0..self.m {
            let a = self.coef[r * self.cols + col];
            if a <= PIVOT_EPS {
                continue;
            }
            let ratio = self.rhs[r].max(0.0) / a;
            best = match best {
                None => Some((r, ratio)),
                Some((br, bratio)) => {
                    let tie = (ratio - bratio).abs() <= 1e-12 * bratio.abs().max(1.0);
                    let better = if tie {
                        // Prefer x0 leaving, then the smallest variable id.
                        self.basic[r] == aux
                            || (self.basic[br] != aux && self.basic[r] < self.basic[br])
                    } else {
                        ratio < bratio
                    };
                    if better {
                        Some((r, ratio))
                    } else {
                        Some((br, bratio))
                    }
                }
            };
        }
        best.map(|(r, _)| r)
    }

    fn finish(&self) -> Feasibility {
        let aux_optimum = (-self.obj0).max(0.0);
        if aux_optimum > FEASIBILITY_SLACK {
            return Feasibility::Infeasible { aux_optimum };
        }
        let mut point = vec![0.0; self.vars];
        for (r, &b) in self.basic.iter().enumerate() {
            if b < self.vars {
                point[b] = self.rhs[r].max(0.0);
            }
        }
        Feasibility::Feasible { point, aux_optimum }
    }
}
