//! Half-space description of a tropical simplex and the min-tropical
//! hyperplane arrangement of its vertices.
//!
//! For a simplex `P = tconv(v¹, …, vᵉ)` with non-singular vertex matrix `A`,
//! the columns of `A` are reordered along the permutation attaining the
//! tropical determinant and each column is shifted so its diagonal entry is
//! zero. The resulting weight matrix `m` yields the classical system
//! `y_j - y_i ≤ -m_ij` (with `y_1 = 0`), whose solution set is the
//! full-dimensional trunk of `P`. When `P` is a polytrope that trunk is `P`.

use serde::Serialize;

use crate::error::{Result, TropError};
use crate::tropical::{trop_det, TropMatrix, TropPoint};

/// Weight matrix extracted from a tropical simplex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KleeneStar {
    m: TropMatrix,
    sigma: Vec<usize>,
}

impl KleeneStar {
    pub fn matrix(&self) -> &TropMatrix {
        &self.m
    }

    /// `m_ij`, 0-based.
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.m.get(i, j)
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    /// Determinant-attaining permutation (0-based, column -> row).
    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    /// `m^{⊙(e-1)}`: longest-path weights, the transitive closure of `m`.
    ///
    /// Equal to `m` itself when the simplex is a polytrope; otherwise it
    /// tightens redundant constraints without changing the solution set.
    pub fn closure(&self) -> TropMatrix {
        self.m.tpow(self.dim() - 1).expect("square")
    }

    /// Whether `m` is its own transitive closure.
    pub fn is_closed(&self) -> bool {
        self.closure() == self.m
    }

    /// Largest 2-cycle weight `m_ij + m_ji` over `i ≠ j`; negative for a
    /// non-singular simplex.
    pub fn max_two_cycle(&self) -> f64 {
        let e = self.dim();
        let mut best = f64::NEG_INFINITY;
        for i in 0..e {
            for j in 0..e {
                if i != j {
                    best = best.max(self.m.get(i, j) + self.m.get(j, i));
                }
            }
        }
        best
    }
}

/// Builds the weight matrix of the simplex spanned by `vertices`.
pub fn kleene_star(vertices: &[TropPoint]) -> Result<KleeneStar> {
    let e = vertices.first().ok_or(TropError::EmptyPolytope)?.dim();
    if vertices.len() != e {
        return Err(TropError::NotASimplex {
            expected: e,
            found: vertices.len(),
        });
    }
    let a = TropMatrix::from_columns(vertices)?;
    let det = trop_det(&a)?;
    if det.singular {
        return Err(TropError::DegenerateSimplex);
    }
    // column i of A moves to position sigma[i] so that A[sigma[i], i] lands on the diagonal
    let mut m = TropMatrix::filled(e, e, 0.0);
    for (col, &target) in det.sigma.iter().enumerate() {
        let diag = a.get(target, col);
        for row in 0..e {
            m.set(row, target, a.get(row, col) - diag);
        }
    }
    Ok(KleeneStar {
        m,
        sigma: det.sigma,
    })
}

/// One inequality `y_j - y_i ≤ bound` (0-based indices).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HalfSpace {
    pub i: usize,
    pub j: usize,
    pub bound: f64,
}

impl HalfSpace {
    /// `bound - (y_j - y_i)`; non-negative when satisfied.
    pub fn slack(&self, y: &[f64]) -> f64 {
        self.bound - (y[self.j] - y[self.i])
    }
}

impl std::fmt::Display for HalfSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "y{} - y{} <= {}", self.j + 1, self.i + 1, self.bound)
    }
}

/// `{ y : y_j - y_i ≤ -m_ij for all i ≠ j, y_1 = 0 }`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HRep {
    e: usize,
    constraints: Vec<HalfSpace>,
}

impl HRep {
    pub fn dim(&self) -> usize {
        self.e
    }

    pub fn constraints(&self) -> &[HalfSpace] {
        &self.constraints
    }

    /// Whether the normalized point satisfies every inequality within `tol`.
    pub fn contains(&self, y: &TropPoint, tol: f64) -> bool {
        y.dim() == self.e && self.constraints.iter().all(|h| h.slack(y.coords()) >= -tol)
    }

    /// Number of inequalities tight (within `tol`) at `y`.
    pub fn active_count(&self, y: &TropPoint, tol: f64) -> usize {
        self.constraints
            .iter()
            .filter(|h| h.slack(y.coords()).abs() <= tol)
            .count()
    }

    /// Human-readable system, one inequality per line, gauge last.
    pub fn to_lines(&self) -> Vec<String> {
        let mut lines: Vec<String> = self.constraints.iter().map(ToString::to_string).collect();
        lines.push("y1 = 0".to_string());
        lines
    }
}

/// Emits the `e(e-1)` inequalities of the weight matrix, ordered by `i` then `j`.
pub fn h_rep(ks: &KleeneStar) -> HRep {
    let e = ks.dim();
    let mut constraints = Vec::with_capacity(e * (e - 1));
    for i in 0..e {
        for j in 0..e {
            if i != j {
                constraints.push(HalfSpace {
                    i,
                    j,
                    bound: 0.0 - ks.weight(i, j),
                });
            }
        }
    }
    HRep { e, constraints }
}

/// Min-tropical hyperplane `H_ω`: points where `min_i (ω_i + x_i)` is attained
/// at least twice. Its apex is `-ω`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinHyperplane {
    omega: Vec<f64>,
}

impl MinHyperplane {
    pub fn new(omega: Vec<f64>) -> Self {
        Self { omega }
    }

    /// Hyperplane with its apex at `apex`.
    pub fn with_apex(apex: &TropPoint) -> Self {
        Self {
            omega: apex.coords().iter().map(|c| -c).collect(),
        }
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn distance(&self, x: &TropPoint) -> Result<f64> {
        hyperplane_distance(x, self)
    }
}

/// Tropical distance from `x` to `H_ω`: the gap between the two smallest
/// coordinates of `x + ω`.
pub fn hyperplane_distance(x: &TropPoint, h: &MinHyperplane) -> Result<f64> {
    x.check_dim(h.omega.len())?;
    let mut lo = f64::INFINITY;
    let mut second = f64::INFINITY;
    for (a, w) in x.coords().iter().zip(&h.omega) {
        let v = a + w;
        if v < lo {
            second = lo;
            lo = v;
        } else if v < second {
            second = v;
        }
    }
    Ok(second - lo)
}

/// Min-tropical hyperplanes with apices at the given vertices.
pub fn arrangement(vertices: &[TropPoint]) -> Vec<MinHyperplane> {
    vertices.iter().map(MinHyperplane::with_apex).collect()
}
