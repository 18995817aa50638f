//! Vertex Hit-and-Run with extrapolation inside a tropical simplex.
//!
//! Each step picks a vertex `v^i`, projects the current point onto the hull
//! of the remaining vertices, and walks the tropical segment from that
//! projection towards `v^i`. The walk stops at the first bend that touches
//! the min-tropical arrangement of the vertices, which keeps the chain off
//! the lower-dimensional tentacles. The next point is drawn uniformly by arc
//! length on what remains.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, TropError};
use crate::hull::{arrangement, hyperplane_distance, MinHyperplane};
use crate::tropical::{contains, project_onto, trop_segment, TropPoint, TropPolytope, TropSegment};

/// Name of the generator used by every chain, recorded in run manifests.
pub const RNG_NAME: &str = "ChaCha8";

/// Bends closer than this to a hyperplane count as hits.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Starting points must pass membership at this tolerance.
pub const START_TOL: f64 = 1e-6;

/// A single-threaded Hit-and-Run chain owning its generator.
#[derive(Debug, Clone)]
pub struct HarChain {
    simplex: TropPolytope,
    arrangement: Vec<MinHyperplane>,
    current: TropPoint,
    rng: ChaCha8Rng,
    iterations: u64,
}

impl HarChain {
    pub fn new(simplex: TropPolytope, x0: TropPoint, seed: u64) -> Result<Self> {
        Self::with_rng(simplex, x0, ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn with_rng(simplex: TropPolytope, x0: TropPoint, rng: ChaCha8Rng) -> Result<Self> {
        if !simplex.is_simplex() {
            return Err(TropError::NotASimplex {
                expected: simplex.dim(),
                found: simplex.len(),
            });
        }
        x0.check_dim(simplex.dim())?;
        if !contains(&simplex, &x0, START_TOL) {
            return Err(TropError::InvalidStart);
        }
        let arrangement = arrangement(simplex.vertices());
        Ok(Self {
            simplex,
            arrangement,
            current: x0,
            rng,
            iterations: 0,
        })
    }

    pub fn current(&self) -> &TropPoint {
        &self.current
    }

    pub fn iterations(&self) -> u64 {
        self.iterations
    }

    pub fn simplex(&self) -> &TropPolytope {
        &self.simplex
    }

    pub fn arrangement(&self) -> &[MinHyperplane] {
        &self.arrangement
    }

    /// Advances one step and returns the new point.
    pub fn step(&mut self) -> TropPoint {
        let vs = self.simplex.vertices();
        let i = self.rng.random_range(0..vs.len());
        let rest: Vec<TropPoint> = vs
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, v)| v.clone())
            .collect();
        let pi = extrapolate(&rest, &self.current).expect("vertices share a dimension");
        let seg = trop_segment(&vs[i], &pi).expect("same dimension");
        let seg = truncate_segment(&seg, &self.arrangement);
        let next = sample_on_segment(&seg, &mut self.rng);
        self.current = next.clone();
        self.iterations += 1;
        next
    }

    /// Runs `n` steps and keeps every `thin`-th point.
    pub fn take(&mut self, n: usize, thin: usize) -> Vec<TropPoint> {
        let thin = thin.max(1);
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            for _ in 0..thin - 1 {
                self.step();
            }
            out.push(self.step());
        }
        out
    }

    /// Discards `n` steps.
    pub fn burn(&mut self, n: usize) {
        for _ in 0..n {
            self.step();
        }
    }
}

/// Projection of `x` onto the hull of all vertices but one.
pub fn extrapolate(v_minus_i: &[TropPoint], x: &TropPoint) -> Result<TropPoint> {
    project_onto(v_minus_i, x)
}

/// Cuts the segment at its first interior bend lying on a hyperplane of the
/// arrangement; returns it unchanged when no interior bend does.
pub fn truncate_segment(seg: &TropSegment, arrangement: &[MinHyperplane]) -> TropSegment {
    let n = seg.bends().len();
    for (j, b) in seg
        .bends()
        .iter()
        .enumerate()
        .take(n.saturating_sub(1))
        .skip(1)
    {
        let hit = arrangement.iter().any(|h| {
            hyperplane_distance(b, h)
                .map(|d| d <= BOUNDARY_TOL)
                .unwrap_or(false)
        });
        if hit {
            return seg.truncated_at(j);
        }
    }
    seg.clone()
}

/// Uniform point by Euclidean arc length.
pub fn sample_on_segment<R: Rng + ?Sized>(seg: &TropSegment, rng: &mut R) -> TropPoint {
    let total = seg.total_length();
    if seg.is_degenerate() || total <= 0.0 {
        return seg.start().clone();
    }
    seg.point_at(rng.random_range(0.0..total))
}

pub fn har_step(chain: &mut HarChain) -> TropPoint {
    chain.step()
}

/// `iterations` successive chain points from `x0`, no burn-in.
pub fn run_chain(
    simplex: &TropPolytope,
    x0: &TropPoint,
    iterations: usize,
    seed: u64,
) -> Result<Vec<TropPoint>> {
    let mut chain = HarChain::new(simplex.clone(), x0.clone(), seed)?;
    Ok(chain.take(iterations, 1))
}
