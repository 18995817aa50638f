//! Small dense linear programs solved by a two-phase tableau simplex.
//!
//! Variables are free (unrestricted in sign). Sign constraints, when needed,
//! are ordinary `≤` rows. Pivoting follows Bland's rule, so the solver never
//! cycles and identical inputs always produce identical outputs.

use serde::Serialize;

/// Pivot magnitudes below this are treated as zero.
const PIVOT_EPS: f64 = 1e-11;
/// Phase-one residual above which the problem is declared infeasible.
const FEAS_EPS: f64 = 1e-9;

/// `maximize c·z` subject to `a·z ≤ b` rows and `a·z = b` rows.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LpProblem {
    pub objective: Vec<f64>,
    pub inequalities: Vec<(Vec<f64>, f64)>,
    pub equalities: Vec<(Vec<f64>, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub z: Vec<f64>,
    pub value: f64,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

impl LpProblem {
    pub fn new(objective: Vec<f64>) -> Self {
        Self {
            objective,
            ..Default::default()
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    /// Adds `a·z ≤ b`.
    pub fn le(&mut self, a: Vec<f64>, b: f64) -> &mut Self {
        self.inequalities.push((a, b));
        self
    }

    /// Adds `a·z = b`.
    pub fn equals(&mut self, a: Vec<f64>, b: f64) -> &mut Self {
        self.equalities.push((a, b));
        self
    }

    /// Largest violation of any constraint at `z` (0 when feasible).
    pub fn max_violation(&self, z: &[f64]) -> f64 {
        let ineq = self
            .inequalities
            .iter()
            .map(|(a, b)| (dot(a, z) - b).max(0.0));
        let eq = self.equalities.iter().map(|(a, b)| (dot(a, z) - b).abs());
        ineq.chain(eq).fold(0.0, f64::max)
    }

    fn is_well_formed(&self) -> bool {
        let n = self.num_vars();
        let rows_ok = self
            .inequalities
            .iter()
            .chain(&self.equalities)
            .all(|(a, b)| a.len() == n && b.is_finite() && a.iter().all(|v| v.is_finite()));
        rows_ok && self.objective.iter().all(|v| v.is_finite())
    }
}

pub(crate) fn dot(a: &[f64], z: &[f64]) -> f64 {
    a.iter().zip(z).map(|(x, y)| x * y).sum()
}

/// Solves the program. Malformed input is reported as infeasible.
pub fn lp_solve(p: &LpProblem) -> LpSolution {
    let n = p.num_vars();
    if !p.is_well_formed() {
        return LpSolution {
            status: LpStatus::Infeasible,
            z: vec![0.0; n],
            value: f64::NAN,
        };
    }
    let mut t = Tableau::build(p);
    if !t.phase_one() {
        return LpSolution {
            status: LpStatus::Infeasible,
            z: vec![0.0; n],
            value: f64::NAN,
        };
    }
    let bounded = t.phase_two(p);
    let z = t.extract(n);
    if !bounded {
        return LpSolution {
            status: LpStatus::Unbounded,
            z,
            value: f64::INFINITY,
        };
    }
    let value = dot(&p.objective, &z);
    LpSolution {
        status: LpStatus::Optimal,
        z,
        value,
    }
}

/// Column layout: `[z⁺ (n) | z⁻ (n) | slacks (m_le) | artificials]`, then RHS.
struct Tableau {
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    n_struct: usize,
    n_art_start: usize,
    n_cols: usize,
}

impl Tableau {
    fn build(p: &LpProblem) -> Self {
        let n = p.num_vars();
        let m_le = p.inequalities.len();
        let m = m_le + p.equalities.len();
        let n_struct = 2 * n;
        let n_art_start = n_struct + m_le;

        // Rows needing an artificial: inequalities with b < 0 and all equalities.
        let needs_art: Vec<bool> = p
            .inequalities
            .iter()
            .map(|(_, b)| *b < 0.0)
            .chain(p.equalities.iter().map(|_| true))
            .collect();
        let n_art = needs_art.iter().filter(|x| **x).count();
        let n_cols = n_art_start + n_art;

        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut art = n_art_start;
        for (r, (a, b)) in p.inequalities.iter().chain(&p.equalities).enumerate() {
            let mut row = vec![0.0; n_cols + 1];
            let sign = if *b < 0.0 { -1.0 } else { 1.0 };
            for j in 0..n {
                row[j] = sign * a[j];
                row[n + j] = -sign * a[j];
            }
            if r < m_le {
                row[n_struct + r] = sign;
            }
            row[n_cols] = sign * b;
            if needs_art[r] {
                row[art] = 1.0;
                basis.push(art);
                art += 1;
            } else {
                basis.push(n_struct + r);
            }
            rows.push(row);
        }
        Self {
            rows,
            basis,
            n_struct,
            n_art_start,
            n_cols,
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let piv = self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v /= piv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v -= f * pv;
                }
                row[c] = 0.0;
            }
        }
        self.basis[r] = c;
    }

    /// Reduced costs `c_j - c_B B⁻¹ A_j` for a maximization objective over columns.
    fn reduced_costs(&self, cost: &[f64]) -> Vec<f64> {
        let mut rc = cost.to_vec();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = cost[b];
            if cb != 0.0 {
                for (j, r) in rc.iter_mut().enumerate() {
                    *r -= cb * row[j];
                }
            }
        }
        rc
    }

    /// Bland's rule iterations; returns false when unbounded.
    fn optimize(&mut self, cost: &[f64], allowed: usize) -> bool {
        loop {
            let rc = self.reduced_costs(cost);
            let Some(enter) = (0..allowed).find(|&j| rc[j] > PIVOT_EPS && !self.basis.contains(&j))
            else {
                return true;
            };
            let rhs = self.n_cols;
            let mut leave: Option<(usize, f64)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let a = row[enter];
                if a > PIVOT_EPS {
                    let ratio = row[rhs] / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((li, lr)) => {
                            if ratio < lr - 1e-12
                                || (ratio <= lr + 1e-12 && self.basis[i] < self.basis[li])
                            {
                                Some((i, ratio))
                            } else {
                                Some((li, lr))
                            }
                        }
                    };
                }
            }
            match leave {
                None => return false,
                Some((r, _)) => self.pivot(r, enter),
            }
        }
    }

    fn phase_one(&mut self) -> bool {
        if self.n_art_start == self.n_cols {
            return true;
        }
        let mut cost = vec![0.0; self.n_cols];
        for c in cost.iter_mut().skip(self.n_art_start) {
            *c = -1.0;
        }
        self.optimize(&cost, self.n_cols);
        let infeas: f64 = self
            .rows
            .iter()
            .zip(&self.basis)
            .filter(|(_, b)| **b >= self.n_art_start)
            .map(|(row, _)| row[self.n_cols])
            .sum();
        if infeas > FEAS_EPS {
            return false;
        }
        // Drive remaining (zero-level) artificials out of the basis.
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= self.n_art_start {
                let col = (0..self.n_art_start).find(|&j| self.rows[r][j].abs() > PIVOT_EPS);
                match col {
                    Some(c) => {
                        self.pivot(r, c);
                        r += 1;
                    }
                    None => {
                        self.rows.remove(r);
                        self.basis.remove(r);
                    }
                }
            } else {
                r += 1;
            }
        }
        true
    }

    fn phase_two(&mut self, p: &LpProblem) -> bool {
        let n = p.num_vars();
        let mut cost = vec![0.0; self.n_cols];
        for j in 0..n {
            cost[j] = p.objective[j];
            cost[n + j] = -p.objective[j];
        }
        self.optimize(&cost, self.n_art_start)
    }

    fn extract(&self, n: usize) -> Vec<f64> {
        let mut raw = vec![0.0; self.n_struct];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < self.n_struct {
                raw[b] = row[self.n_cols];
            }
        }
        (0..n).map(|j| raw[j] - raw[n + j]).collect()
    }
}
