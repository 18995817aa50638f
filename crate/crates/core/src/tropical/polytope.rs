use serde::Serialize;

use super::point::dist_raw;
use super::{TropMatrix, TropPoint};
use crate::error::{Result, TropError};

/// Max-plus tropical convex hull of a finite generating set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TropPolytope {
    vertices: Vec<TropPoint>,
}

impl TropPolytope {
    /// Builds the polytope; rejects mixed dimensions and repeated vertices.
    pub fn new(vertices: Vec<TropPoint>) -> Result<Self> {
        let first = vertices.first().ok_or(TropError::EmptyPolytope)?;
        let e = first.dim();
        for (i, v) in vertices.iter().enumerate() {
            v.check_dim(e)?;
            if vertices[..i].iter().any(|w| w == v) {
                return Err(TropError::DuplicateVertex { index: i });
            }
        }
        Ok(Self { vertices })
    }

    /// Builds from raw coordinate rows, normalizing each.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let pts = rows
            .iter()
            .map(|r| TropPoint::from_slice(r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(pts)
    }

    /// Like [`TropPolytope::new`] but drops repeated vertices instead of failing.
    pub fn new_dedup(vertices: Vec<TropPoint>) -> Result<Self> {
        let mut kept: Vec<TropPoint> = Vec::with_capacity(vertices.len());
        for v in vertices {
            if !kept.contains(&v) {
                kept.push(v);
            }
        }
        Self::new(kept)
    }

    pub fn vertices(&self) -> &[TropPoint] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Ambient coordinate count `e`.
    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    /// True when there are exactly `e` generators.
    pub fn is_simplex(&self) -> bool {
        self.len() == self.dim()
    }

    /// Vertex matrix with the generators as columns.
    pub fn vertex_matrix(&self) -> TropMatrix {
        TropMatrix::from_columns(&self.vertices).expect("vertices share a dimension")
    }

    /// Sub-polytope spanned by the vertices at `indices`.
    pub fn subset(&self, indices: &[usize]) -> TropPolytope {
        TropPolytope {
            vertices: indices.iter().map(|&i| self.vertices[i].clone()).collect(),
        }
    }

    pub fn project(&self, x: &TropPoint) -> Result<TropPoint> {
        project(self, x)
    }

    pub fn contains(&self, x: &TropPoint, tol: f64) -> bool {
        contains(self, x, tol)
    }
}

/// Tropical projection `π_P(x) = ⊕_l λ_l ⊙ v^l` with `λ_l = min(x - v^l)`.
pub fn project(p: &TropPolytope, x: &TropPoint) -> Result<TropPoint> {
    project_onto(p.vertices(), x)
}

/// Projection onto the tropical hull of an arbitrary non-empty vertex slice.
pub fn project_onto(vertices: &[TropPoint], x: &TropPoint) -> Result<TropPoint> {
    let e = x.dim();
    if vertices.is_empty() {
        return Err(TropError::EmptyPolytope);
    }
    let mut out = vec![f64::NEG_INFINITY; e];
    for v in vertices {
        v.check_dim(e)?;
        let lambda = x
            .coords()
            .iter()
            .zip(v.coords())
            .map(|(a, b)| a - b)
            .fold(f64::INFINITY, f64::min);
        for (o, vi) in out.iter_mut().zip(v.coords()) {
            *o = o.max(lambda + vi);
        }
    }
    Ok(TropPoint::normalized_unchecked(out))
}

/// Membership by projection: `d_tr(x, π_P(x)) ≤ tol`.
pub fn contains(p: &TropPolytope, x: &TropPoint, tol: f64) -> bool {
    match project(p, x) {
        Ok(proj) => dist_raw(x.coords(), proj.coords()) <= tol,
        Err(_) => false,
    }
}
