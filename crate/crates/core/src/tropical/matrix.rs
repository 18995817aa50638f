use serde::Serialize;

use super::{trop_add, trop_mul, TropPoint};
use crate::error::{Result, TropError};

/// Dense matrix over `R ∪ {-∞}` with max-plus operations.
///
/// Storage is row-major and 0-based; [`TropMatrix::entry`] offers the 1-based
/// addressing used in the literature.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TropMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl TropMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(TropError::InvalidArgument(
                "matrix must be at least 1x1".into(),
            ));
        }
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(TropError::DimensionError {
                expected: c,
                found: bad.len(),
            });
        }
        let data: Vec<f64> = rows.into_iter().flatten().collect();
        if data.iter().any(|v| v.is_nan() || *v == f64::INFINITY) {
            return Err(TropError::InvalidArgument(
                "entries must be finite or -inf".into(),
            ));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data,
        })
    }

    /// Matrix whose columns are the given points.
    pub fn from_columns(points: &[TropPoint]) -> Result<Self> {
        let e = points.first().map_or(0, TropPoint::dim);
        if e == 0 {
            return Err(TropError::EmptyPolytope);
        }
        for p in points {
            p.check_dim(e)?;
        }
        let s = points.len();
        let mut data = vec![0.0; e * s];
        for (j, p) in points.iter().enumerate() {
            for i in 0..e {
                data[i * s + j] = p[i];
            }
        }
        Ok(Self {
            rows: e,
            cols: s,
            data,
        })
    }

    pub fn filled(rows: usize, cols: usize, value: f64) -> Self {
        Self {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    /// Max-plus identity: 0 on the diagonal, -∞ elsewhere.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::filled(n, n, f64::NEG_INFINITY);
        for i in 0..n {
            m.set(i, i, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    /// 1-based access: `entry(1, 1)` is the top-left element.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.get(i - 1, j - 1)
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.cols).map(<[f64]>::to_vec).collect()
    }

    /// Entrywise `A ⊕ B`.
    pub fn tadd(&self, other: &TropMatrix) -> Result<TropMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(TropError::DimensionError {
                expected: self.data.len(),
                found: other.data.len(),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| trop_add(*a, *b))
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Max-plus product `A ⊗ B`.
    pub fn tmul(&self, other: &TropMatrix) -> Result<TropMatrix> {
        if self.cols != other.rows {
            return Err(TropError::DimensionError {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::filled(self.rows, other.cols, f64::NEG_INFINITY);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let v = (0..self.cols)
                    .map(|l| trop_mul(self.get(i, l), other.get(l, j)))
                    .fold(f64::NEG_INFINITY, trop_add);
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    /// `A^{⊙k}` for a square matrix, `k ≥ 1`.
    pub fn tpow(&self, k: usize) -> Result<TropMatrix> {
        if !self.is_square() {
            return Err(TropError::DimensionError {
                expected: self.rows,
                found: self.cols,
            });
        }
        let mut acc = self.clone();
        for _ in 1..k.max(1) {
            acc = acc.tmul(self)?;
        }
        Ok(acc)
    }
}

/// Result of a tropical determinant evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TropDet {
    /// `max_σ Σ_i A[σ(i), i]`.
    pub value: f64,
    /// Attaining permutation, 0-based: column `i` uses row `sigma[i]`.
    pub sigma: Vec<usize>,
    /// True when the value is -∞ or at least two permutations attain it.
    pub singular: bool,
}

impl TropDet {
    /// The permutation in the 1-based notation `(σ(1), …, σ(e))`.
    pub fn sigma_one_based(&self) -> Vec<usize> {
        self.sigma.iter().map(|r| r + 1).collect()
    }
}

/// Above this size the determinant switches from permutation enumeration to
/// a subset dynamic program with identical summation order.
const ENUMERATION_LIMIT: usize = 8;

/// Tropical determinant of a square matrix.
///
/// Ties are detected with exact float equality on the permutation sums.
pub fn trop_det(a: &TropMatrix) -> Result<TropDet> {
    if !a.is_square() {
        return Err(TropError::DimensionError {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    if a.rows() <= ENUMERATION_LIMIT {
        Ok(det_enumerate(a))
    } else {
        Ok(det_subset_dp(a))
    }
}

fn det_enumerate(a: &TropMatrix) -> TropDet {
    let n = a.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = f64::NEG_INFINITY;
    let mut best_perm = perm.clone();
    let mut ties = 0usize;
    loop {
        let mut sum = 0.0;
        for (col, &row) in perm.iter().enumerate() {
            sum = trop_mul(sum, a.get(row, col));
        }
        if sum > best {
            best = sum;
            best_perm.copy_from_slice(&perm);
            ties = 1;
        } else if sum == best {
            ties += 1;
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    TropDet {
        value: best,
        sigma: best_perm,
        singular: best == f64::NEG_INFINITY || ties >= 2,
    }
}

/// Lexicographic successor; returns false after the last permutation.
fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn det_subset_dp(a: &TropMatrix) -> TropDet {
    let n = a.rows();
    let size = 1usize << n;
    // best[mask]: best sum assigning the rows in `mask` to the first |mask| columns
    let mut best = vec![f64::NEG_INFINITY; size];
    let mut count = vec![0u8; size];
    let mut choice = vec![usize::MAX; size];
    best[0] = 0.0;
    count[0] = 1;
    for mask in 1..size {
        let col = mask.count_ones() as usize - 1;
        for row in 0..n {
            if mask & (1 << row) == 0 {
                continue;
            }
            let prev = mask ^ (1 << row);
            if count[prev] == 0 {
                continue;
            }
            let v = trop_mul(best[prev], a.get(row, col));
            if v > best[mask] || count[mask] == 0 {
                best[mask] = v;
                count[mask] = count[prev];
                choice[mask] = row;
            } else if v == best[mask] {
                count[mask] = count[mask].saturating_add(count[prev]).min(2);
            }
        }
    }
    let full = size - 1;
    let mut sigma = vec![0; n];
    let mut mask = full;
    for col in (0..n).rev() {
        let row = choice[mask];
        sigma[col] = row;
        mask ^= 1 << row;
    }
    TropDet {
        value: best[full],
        sigma,
        singular: best[full] == f64::NEG_INFINITY || count[full] >= 2,
    }
}
