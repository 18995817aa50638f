use serde::{Deserialize, Serialize};

use crate::error::{Result, TropError};

/// A point of the tropical projective torus `R^e / R·1`.
///
/// The stored representative always has `coords[0] == 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct TropPoint {
    coords: Vec<f64>,
}

impl TropPoint {
    /// Normalizes `raw` by subtracting its first coordinate.
    pub fn new(raw: Vec<f64>) -> Result<Self> {
        if raw.len() < 2 {
            return Err(TropError::InvalidPoint(format!(
                "need at least 2 coordinates, got {}",
                raw.len()
            )));
        }
        if let Some(bad) = raw.iter().find(|c| !c.is_finite()) {
            return Err(TropError::InvalidPoint(format!(
                "non-finite coordinate {bad}"
            )));
        }
        Ok(Self::normalized_unchecked(raw))
    }

    pub fn from_slice(raw: &[f64]) -> Result<Self> {
        Self::new(raw.to_vec())
    }

    /// Origin `(0, …, 0)` with `e` coordinates.
    pub fn zero(e: usize) -> Self {
        Self {
            coords: vec![0.0; e],
        }
    }

    /// Normalizes finite coordinates without validation.
    pub(crate) fn normalized_unchecked(mut raw: Vec<f64>) -> Self {
        let shift = raw[0];
        for c in raw.iter_mut() {
            *c -= shift;
        }
        raw[0] = 0.0;
        Self { coords: raw }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Number of ambient coordinates `e`.
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.coords
    }

    /// Tropical distance to `other`; see [`trop_dist`].
    pub fn distance(&self, other: &TropPoint) -> Result<f64> {
        trop_dist(self, other)
    }

    pub(crate) fn check_dim(&self, e: usize) -> Result<()> {
        if self.dim() == e {
            Ok(())
        } else {
            Err(TropError::DimensionError {
                expected: e,
                found: self.dim(),
            })
        }
    }

    /// Largest coordinate gap to `other` in max-norm; used for deduplication.
    pub fn max_abs_diff(&self, other: &TropPoint) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl TryFrom<Vec<f64>> for TropPoint {
    type Error = TropError;

    fn try_from(raw: Vec<f64>) -> Result<Self> {
        Self::new(raw)
    }
}

impl From<TropPoint> for Vec<f64> {
    fn from(p: TropPoint) -> Self {
        p.coords
    }
}

impl std::ops::Index<usize> for TropPoint {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.coords[i]
    }
}

/// Returns the normalized representative of `raw`.
pub fn normalize(raw: &[f64]) -> Result<TropPoint> {
    TropPoint::from_slice(raw)
}

/// `max_i (v_i - w_i) - min_i (v_i - w_i)`.
pub fn trop_dist(v: &TropPoint, w: &TropPoint) -> Result<f64> {
    w.check_dim(v.dim())?;
    Ok(dist_raw(v.coords(), w.coords()))
}

pub(crate) fn dist_raw(v: &[f64], w: &[f64]) -> f64 {
    let mut hi = f64::NEG_INFINITY;
    let mut lo = f64::INFINITY;
    for (a, b) in v.iter().zip(w) {
        let d = a - b;
        hi = hi.max(d);
        lo = lo.min(d);
    }
    hi - lo
}
