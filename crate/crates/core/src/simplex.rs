//! Dense two-phase primal simplex for the small linear programs used by the
//! polytope probes.
//!
//! maximise c·x subject to A x ≤ b, x ≥ 0. Bland's anti-cycling rule is used
//! for both the entering and the leaving variable, so the iteration
//! terminates on these degenerate vertex-rich instances. Determinism over
//! speed: the instances here have at most a few thousand rows.

use crate::error::Error;
use crate::Result;

/// maximise `objective · x` subject to each `(row, rhs)`: row·x ≤ rhs, x ≥ 0.
#[derive(Debug, Clone)]
pub struct LpProblem {
    pub objective: Vec<f64>,
    pub constraints: Vec<(Vec<f64>, f64)>,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub value: f64,
    pub x: Vec<f64>,
    pub iterations: usize,
}

const MAX_PIVOTS: usize = 50_000;

struct Tableau {
    /// m basic rows then one objective row; width = cols + 1 (rhs last).
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    cols: usize,
    tol: f64,
    pivots: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> f64 {
        let w = self.cols;
        self.rows[r][w]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.cols + 1;
        let inv = 1.0 / self.rows[r][c];
        for j in 0..w {
            self.rows[r][j] *= inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for j in 0..w {
                    row[j] -= f * pivot_row[j];
                }
            }
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Run Bland-rule pivots until the objective row has no improving column.
    /// `allowed` limits the candidate entering columns.
    fn optimise(&mut self, allowed: &[bool]) -> Result<()> {
        let m = self.rows.len() - 1;
        loop {
            if self.pivots > MAX_PIVOTS {
                return Err(Error::NoConvergence {
                    iterations: MAX_PIVOTS,
                });
            }
            // entering: smallest-index column with negative reduced cost
            let obj = m;
            let mut enter = None;
            for c in 0..self.cols {
                if allowed[c] && self.rows[obj][c] < -self.tol {
                    enter = Some(c);
                    break;
                }
            }
            let Some(c) = enter else { return Ok(()) };
            // leaving: min ratio, ties broken by smallest basis index (Bland)
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..m {
                let a = self.rows[r][c];
                if a > self.tol {
                    let ratio = self.rhs(r) / a;
                    let better = match leave {
                        None => true,
                        Some((lr, lratio)) => {
                            ratio < lratio - self.tol
                                || (ratio < lratio + self.tol && self.basis[r] < self.basis[lr])
                        }
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            let Some((r, _)) = leave else {
                return Err(Error::LpUnbounded);
            };
            self.pivot(r, c);
        }
    }
}

/// Solve the LP; `tol` is the pivot/zero tolerance (1e-9 in the callers).
pub fn solve(p: &LpProblem, tol: f64) -> Result<LpSolution> {
    let n = p.objective.len();
    let m = p.constraints.len();
    for (row, _) in &p.constraints {
        if row.len() != n {
            return Err(Error::DimMismatch {
                left: row.len(),
                right: n,
            });
        }
    }
    // columns: n structural, m slacks, then one artificial per negative-rhs row
    let negatives: Vec<usize> = (0..m)
        .filter(|&i| p.constraints[i].1 < 0.0)
        .collect();
    let n_art = negatives.len();
    let cols = n + m + n_art;
    let mut rows = vec![vec![0.0; cols + 1]; m + 1];
    let mut basis = vec![0usize; m];
    let mut art_of_row = vec![usize::MAX; m];
    for (a, &i) in negatives.iter().enumerate() {
        art_of_row[i] = n + m + a;
    }
    for i in 0..m {
        let (coef, rhs) = &p.constraints[i];
        let flip = if *rhs < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            rows[i][j] = flip * coef[j];
        }
        rows[i][n + i] = flip; // slack
        rows[i][cols] = flip * rhs;
        if art_of_row[i] != usize::MAX {
            rows[i][art_of_row[i]] = 1.0;
            basis[i] = art_of_row[i];
        } else {
            basis[i] = n + i;
        }
    }

    let mut t = Tableau {
        rows,
        basis,
        cols,
        tol,
        pivots: 0,
    };

    if n_art > 0 {
        // phase 1: minimise the artificial sum, i.e. maximise its negative.
        // objective row starts as Σ(artificial columns), priced out over the
        // rows where artificials are basic.
        for c in 0..=cols {
            t.rows[m][c] = 0.0;
        }
        for i in 0..m {
            if art_of_row[i] != usize::MAX {
                let row_i = t.rows[i].clone();
                for c in 0..=cols {
                    t.rows[m][c] -= row_i[c];
                }
                t.rows[m][art_of_row[i]] += 1.0;
            }
        }
        let allowed = vec![true; cols];
        t.optimise(&allowed)?;
        let residual = -t.rows[m][cols];
        if residual > tol.sqrt() {
            return Err(Error::LpInfeasible { residual });
        }
        // drive any basic artificial (necessarily at level ~0) out of the basis
        for r in 0..m {
            if t.basis[r] >= n + m {
                let mut swapped = false;
                for c in 0..n + m {
                    if t.rows[r][c].abs() > tol {
                        t.pivot(r, c);
                        swapped = true;
                        break;
                    }
                }
                if !swapped {
                    // redundant row: zero it so it can never pivot again
                    for c in 0..=cols {
                        t.rows[r][c] = 0.0;
                    }
                }
            }
        }
    }

    // phase 2: real objective, priced out over the current basis
    for c in 0..=cols {
        t.rows[m][c] = 0.0;
    }
    for j in 0..n {
        t.rows[m][j] = -p.objective[j];
    }
    for r in 0..m {
        let b = t.basis[r];
        if b < n + m {
            let f = t.rows[m][b];
            if f != 0.0 {
                let row_r = t.rows[r].clone();
                for c in 0..=cols {
                    t.rows[m][c] -= f * row_r[c];
                }
            }
        }
    }
    let mut allowed = vec![true; cols];
    for a in n + m..cols {
        allowed[a] = false;
    }
    t.optimise(&allowed)?;

    let mut x = vec![0.0; n];
    for r in 0..m {
        if t.basis[r] < n {
            x[t.basis[r]] = t.rhs(r);
        }
    }
    Ok(LpSolution {
        value: t.rows[m][cols],
        x,
        iterations: t.pivots,
    })
}
