//! Monte-Carlo volume estimation inside an enclosing ball, volume bounds,
//! and rounding of a simplex through the pseudo-vertices of its trunk.

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::balls::{ball_volume, max_inscribed, min_enclosing, min_enclosing_points, TropBall};
use crate::error::{Result, TropError};
use crate::hull::{h_rep, kleene_star, HRep};
use crate::sampler::{HarChain, RNG_NAME};
use crate::tropical::{contains, TropPoint, TropPolytope, DEFAULT_TOL};

/// Feasibility and deduplication tolerance for pseudo-vertices.
pub const PSEUDO_TOL: f64 = 1e-8;

pub const DEFAULT_BURN_IN: usize = 100;

/// How points inside the enclosing ball are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum BallSampler {
    /// Hit-and-Run on the ball's generating simplex.
    #[default]
    Har,
    /// Independent draws: pick one of the `e` hypercubes, then a uniform point in it.
    Direct,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumeOptions {
    pub samples: usize,
    pub seed: u64,
    pub burn_in: usize,
    pub thinning: usize,
    /// Independent chains; each uses its own stream of the seeded generator.
    pub shards: usize,
    pub sampler: BallSampler,
    /// Enclose the trunk's pseudo-vertices instead of the vertices (simplices only).
    pub round: bool,
    pub tol: f64,
}

impl VolumeOptions {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self {
            samples,
            seed,
            burn_in: DEFAULT_BURN_IN,
            thinning: 1,
            shards: 1,
            sampler: BallSampler::Har,
            round: false,
            tol: DEFAULT_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VolumeEstimate {
    pub hits: usize,
    pub samples: usize,
    pub p: f64,
    pub enclosing_ball: TropBall,
    pub enclosing_volume: f64,
    pub estimate: f64,
    /// One binomial standard error of the estimate.
    pub std_error: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
    /// `(R/r)^(e-1)` for the inscribed and enclosing radii.
    pub hit_rate_bound: f64,
    pub seed: u64,
    pub shards: usize,
    pub burn_in: usize,
    pub thinning: usize,
    pub sampler: BallSampler,
    pub rounded: bool,
    pub rng: &'static str,
}

impl VolumeEstimate {
    /// `[estimate - k·se, estimate + k·se]`.
    pub fn band(&self, k: f64) -> (f64, f64) {
        (
            self.estimate - k * self.std_error,
            self.estimate + k * self.std_error,
        )
    }

    /// Standard error of `p` itself.
    pub fn p_std_error(&self) -> f64 {
        (self.p * (1.0 - self.p) / self.samples as f64).sqrt()
    }
}

/// `(Vol B_R, Vol B_r)`.
pub fn volume_bounds(p: &TropPolytope) -> Result<(f64, f64)> {
    let inner = max_inscribed(p)?;
    let outer = min_enclosing(p)?;
    Ok((
        ball_volume(inner.radius(), p.dim()),
        ball_volume(outer.radius(), p.dim()),
    ))
}

/// `(R/r)^(e-1)`.
pub fn acceptance_rate_bound(inner: f64, outer: f64, e: usize) -> Result<f64> {
    if outer <= 0.0 {
        return Err(TropError::DegenerateBall);
    }
    if !(0.0..=outer).contains(&inner) {
        return Err(TropError::InvalidArgument(format!(
            "inscribed radius {inner} must lie in [0, {outer}]"
        )));
    }
    Ok((inner / outer).powi(e as i32 - 1))
}

/// Volume of `p` from `samples` post-burn-in points of a Hit-and-Run chain in `B_r(p)`.
pub fn estimate_volume(
    p: &TropPolytope,
    samples: usize,
    seed: u64,
    burn_in: usize,
) -> Result<VolumeEstimate> {
    let mut opts = VolumeOptions::new(samples, seed);
    opts.burn_in = burn_in;
    estimate_volume_with(p, &opts)
}

pub fn estimate_volume_with(p: &TropPolytope, opts: &VolumeOptions) -> Result<VolumeEstimate> {
    if opts.samples == 0 {
        return Err(TropError::InvalidArgument(
            "sample count must be at least 1".into(),
        ));
    }
    if opts.shards == 0 {
        return Err(TropError::InvalidArgument(
            "shard count must be at least 1".into(),
        ));
    }
    let e = p.dim();
    let enclosing = if opts.round {
        round_polytope(p)?
    } else {
        min_enclosing(p)?
    };
    if enclosing.radius() <= 0.0 {
        return Err(TropError::DegenerateBall);
    }
    let hits = count_hits(p, &enclosing, opts)?;
    let enclosing_volume = enclosing.volume();
    let frac = hits as f64 / opts.samples as f64;

    let (inner, outer_radius) = match max_inscribed(p) {
        Ok(b) => (b.radius(), min_enclosing(p)?.radius()),
        Err(TropError::NoTrunk) | Err(TropError::TooFewVertices { .. }) => {
            (0.0, min_enclosing(p)?.radius())
        }
        Err(err) => return Err(err),
    };
    Ok(VolumeEstimate {
        hits,
        samples: opts.samples,
        p: frac,
        enclosing_volume,
        estimate: frac * enclosing_volume,
        std_error: enclosing_volume * (frac * (1.0 - frac) / opts.samples as f64).sqrt(),
        lower_bound: ball_volume(inner, e),
        upper_bound: ball_volume(outer_radius, e),
        hit_rate_bound: acceptance_rate_bound(
            inner.min(enclosing.radius()),
            enclosing.radius(),
            e,
        )?,
        enclosing_ball: enclosing,
        seed: opts.seed,
        shards: opts.shards,
        burn_in: opts.burn_in,
        thinning: opts.thinning,
        sampler: opts.sampler,
        rounded: opts.round,
        rng: RNG_NAME,
    })
}

/// Generator for shard `s`: the seeded stream number `s`.
pub fn shard_rng(seed: u64, shard: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard as u64);
    rng
}

fn shard_sizes(total: usize, shards: usize) -> Vec<usize> {
    (0..shards)
        .map(|s| total / shards + usize::from(s < total % shards))
        .collect()
}

/// Points drawn inside `ball` by the configured sampler, shard by shard.
pub fn sample_ball(ball: &TropBall, opts: &VolumeOptions) -> Result<Vec<Vec<TropPoint>>> {
    shard_sizes(opts.samples, opts.shards)
        .into_par_iter()
        .enumerate()
        .map(|(s, n)| {
            let mut rng = shard_rng(opts.seed, s);
            match opts.sampler {
                BallSampler::Har => {
                    let mut chain =
                        HarChain::with_rng(ball.to_polytope(), ball.center().clone(), rng)?;
                    chain.burn(opts.burn_in);
                    Ok(chain.take(n, opts.thinning))
                }
                BallSampler::Direct => {
                    Ok((0..n).map(|_| direct_ball_point(ball, &mut rng)).collect())
                }
            }
        })
        .collect()
}

fn count_hits(p: &TropPolytope, ball: &TropBall, opts: &VolumeOptions) -> Result<usize> {
    let shards = sample_ball(ball, opts)?;
    Ok(shards
        .par_iter()
        .map(|pts| pts.iter().filter(|x| contains(p, x, opts.tol)).count())
        .sum())
}

/// Uniform point of the ball: a uniformly chosen hypercube `{z_k = 0, z_j ∈ [0, l]}`
/// shifted by the centre.
pub fn direct_ball_point<R: Rng + ?Sized>(ball: &TropBall, rng: &mut R) -> TropPoint {
    let c = ball.center().coords();
    let k = rng.random_range(0..c.len());
    let l = ball.radius();
    let y = c
        .iter()
        .enumerate()
        .map(|(j, cj)| {
            if j == k {
                *cj
            } else {
                cj + rng.random_range(0.0..=l)
            }
        })
        .collect();
    TropPoint::normalized_unchecked(y)
}

/// Classical vertices of a simplex's trunk.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PseudoVertexSet {
    points: Vec<TropPoint>,
}

impl PseudoVertexSet {
    pub fn points(&self) -> &[TropPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `e × n` matrix with the points as columns.
    pub fn as_columns(&self) -> Vec<Vec<f64>> {
        let e = self.points.first().map_or(0, TropPoint::dim);
        (0..e)
            .map(|i| self.points.iter().map(|p| p.coords()[i]).collect())
            .collect()
    }
}

/// Vertex enumeration of `{ y : y_j - y_i ≤ b, y_1 = 0 }` by exhaustive active sets.
pub fn enumerate_hrep_vertices(hr: &HRep) -> Result<PseudoVertexSet> {
    let e = hr.dim();
    let d = e - 1;
    let cons = hr.constraints();
    let combos: Vec<Vec<usize>> = (0..cons.len()).combinations(d).collect();
    let found: Vec<Option<TropPoint>> = combos
        .into_par_iter()
        .map(|rows| {
            let mut a = DMatrix::<f64>::zeros(d, d);
            let mut b = DVector::<f64>::zeros(d);
            for (r, &k) in rows.iter().enumerate() {
                let h = cons[k];
                if h.j > 0 {
                    a[(r, h.j - 1)] += 1.0;
                }
                if h.i > 0 {
                    a[(r, h.i - 1)] -= 1.0;
                }
                b[r] = h.bound;
            }
            let y = a.lu().solve(&b)?;
            let mut coords = Vec::with_capacity(e);
            coords.push(0.0);
            // + 0.0 turns -0 into 0
            coords.extend(y.iter().map(|c| c + 0.0));
            if coords.iter().any(|c| !c.is_finite()) {
                return None;
            }
            let p = TropPoint::normalized_unchecked(coords);
            hr.contains(&p, PSEUDO_TOL).then_some(p)
        })
        .collect();
    let mut points: Vec<TropPoint> = Vec::new();
    for p in found.into_iter().flatten() {
        if !points.iter().any(|q| q.max_abs_diff(&p) <= PSEUDO_TOL) {
            points.push(p);
        }
    }
    if points.is_empty() {
        return Err(TropError::NoTrunk);
    }
    points.sort_by(|a, b| {
        a.coords()
            .iter()
            .zip(b.coords())
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(PseudoVertexSet { points })
}

/// Pseudo-vertices of the trunk of a tropical simplex.
pub fn enumerate_pseudo_vertices(p: &TropPolytope) -> Result<PseudoVertexSet> {
    let set = enumerate_hrep_vertices(&h_rep(&kleene_star(p.vertices())?))?;
    if set.len() < p.dim() {
        // fewer than e corners cannot span a full-dimensional trunk
        return Err(TropError::NoTrunk);
    }
    Ok(set)
}

/// Smallest ball around the trunk of a tropical simplex.
pub fn round_polytope(p: &TropPolytope) -> Result<TropBall> {
    let pv = enumerate_pseudo_vertices(p)?;
    min_enclosing_points(pv.points())
}
