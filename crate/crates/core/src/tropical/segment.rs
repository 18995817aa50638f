use super::TropPoint;
use crate::error::Result;

/// Coincident bends closer than this (max-norm) are merged.
const BEND_MERGE_TOL: f64 = 1e-12;

/// A max-plus line segment stored as its chain of bend points.
///
/// Consecutive bends are joined by ordinary straight pieces. Lengths are
/// Euclidean, measured in the normalized chart (`coords[0] == 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct TropSegment {
    bends: Vec<TropPoint>,
    cumulative: Vec<f64>,
}

impl TropSegment {
    fn from_bends(raw: Vec<TropPoint>) -> Self {
        let mut bends: Vec<TropPoint> = Vec::with_capacity(raw.len());
        for b in raw {
            match bends.last() {
                Some(last) if last.max_abs_diff(&b) <= BEND_MERGE_TOL => {}
                _ => bends.push(b),
            }
        }
        let mut cumulative = Vec::with_capacity(bends.len());
        let mut acc = 0.0;
        cumulative.push(0.0);
        for w in bends.windows(2) {
            acc += euclid(&w[0], &w[1]);
            cumulative.push(acc);
        }
        Self { bends, cumulative }
    }

    /// First bend.
    pub fn start(&self) -> &TropPoint {
        &self.bends[0]
    }

    /// Last bend.
    pub fn end(&self) -> &TropPoint {
        self.bends.last().expect("segment has at least one bend")
    }

    /// All bends in order, endpoints included.
    pub fn bends(&self) -> &[TropPoint] {
        &self.bends
    }

    /// Bends strictly between the endpoints.
    pub fn interior_bends(&self) -> &[TropPoint] {
        if self.bends.len() <= 2 {
            &[]
        } else {
            &self.bends[1..self.bends.len() - 1]
        }
    }

    /// Arc length from the start to each bend.
    pub fn cumulative_lengths(&self) -> &[f64] {
        &self.cumulative
    }

    pub fn total_length(&self) -> f64 {
        *self.cumulative.last().expect("non-empty")
    }

    pub fn is_degenerate(&self) -> bool {
        self.bends.len() == 1
    }

    /// Number of straight pieces.
    pub fn pieces(&self) -> usize {
        self.bends.len() - 1
    }

    /// Sub-segment from the start up to and including bend `idx`.
    pub fn truncated_at(&self, idx: usize) -> TropSegment {
        let idx = idx.min(self.bends.len() - 1);
        Self {
            bends: self.bends[..=idx].to_vec(),
            cumulative: self.cumulative[..=idx].to_vec(),
        }
    }

    /// Point at arc length `t` from the start, clamped to `[0, total_length]`.
    pub fn point_at(&self, t: f64) -> TropPoint {
        if self.is_degenerate() || t <= 0.0 {
            return self.start().clone();
        }
        if t >= self.total_length() {
            return self.end().clone();
        }
        // first bend whose cumulative length exceeds t
        let k = self.cumulative.partition_point(|&c| c <= t).max(1);
        let (a, b) = (&self.bends[k - 1], &self.bends[k]);
        let len = self.cumulative[k] - self.cumulative[k - 1];
        let s = (t - self.cumulative[k - 1]) / len;
        let coords = a
            .coords()
            .iter()
            .zip(b.coords())
            .map(|(x, y)| x + s * (y - x))
            .collect();
        TropPoint::normalized_unchecked(coords)
    }
}

fn euclid(a: &TropPoint, b: &TropPoint) -> f64 {
    a.coords()
        .iter()
        .zip(b.coords())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// The max-plus segment `{ λ ⊙ u ⊕ v }` between `u` and `v`.
///
/// Bends are the points `(v_k - u_k) ⊙ u ⊕ v` for each coordinate `k`, taken
/// in increasing order of `v_k - u_k`; the result runs from `v` to `u`.
pub fn trop_segment(u: &TropPoint, v: &TropPoint) -> Result<TropSegment> {
    u.check_dim(v.dim())?;
    let mut lambdas: Vec<f64> = v
        .coords()
        .iter()
        .zip(u.coords())
        .map(|(a, b)| a - b)
        .collect();
    lambdas.sort_by(f64::total_cmp);
    lambdas.dedup();
    let bends = lambdas
        .into_iter()
        .map(|lam| {
            let c = u
                .coords()
                .iter()
                .zip(v.coords())
                .map(|(ui, vi)| (lam + ui).max(*vi))
                .collect();
            TropPoint::normalized_unchecked(c)
        })
        .collect();
    Ok(TropSegment::from_bends(bends))
}
