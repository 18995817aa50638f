//! Simplicial complex of a tropical polytope, a non-overlapping simplex cover
//! of its trunk, and uniform sampling from that cover.

use itertools::Itertools;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::balls::{max_inscribed_simplex, min_enclosing};
use crate::error::{Result, TropError};
use crate::sampler::HarChain;
use crate::tropical::{contains, trop_det, TropPoint, TropPolytope, DEFAULT_TOL};
use crate::volume::{sample_ball, shard_rng, VolumeOptions, DEFAULT_BURN_IN};

/// Fraction of sampled points allowed to be uncovered or doubly covered by a cover.
pub const COVER_SLACK: f64 = 0.01;
/// Subset searches larger than this fall back to greedy selection.
const SEARCH_LIMIT: usize = 200_000;

/// One `e`-subset of the vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplexInfo {
    pub indices: Vec<usize>,
    pub degenerate: bool,
}

/// All `C(|V|, e)` vertex subsets in lexicographic order.
pub fn enumerate_simplices(p: &TropPolytope) -> Result<Vec<SimplexInfo>> {
    let e = p.dim();
    if p.len() < e {
        return Err(TropError::TooFewVertices {
            needed: e,
            found: p.len(),
        });
    }
    Ok((0..p.len())
        .combinations(e)
        .map(|indices| {
            let det = trop_det(&p.subset(&indices).vertex_matrix()).expect("square");
            SimplexInfo {
                indices,
                degenerate: det.singular,
            }
        })
        .collect())
}

/// Simplices whose union carries the trunk, with mixture weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplexCover {
    pub simplices: Vec<Vec<usize>>,
    pub weights: Vec<f64>,
    /// Number of sampled points that fell in the polytope.
    pub sample_size_used: usize,
    pub samples: usize,
    pub seed: u64,
    pub burn_in: usize,
}

impl SimplexCover {
    /// Cover of a single simplex.
    pub fn single(e: usize) -> Self {
        Self {
            simplices: vec![(0..e).collect()],
            weights: vec![1.0],
            sample_size_used: 0,
            samples: 0,
            seed: 0,
            burn_in: DEFAULT_BURN_IN,
        }
    }
}

/// Membership of each sampled point in each candidate simplex.
struct Incidence {
    rows: Vec<Vec<bool>>,
}

impl Incidence {
    /// `(uncovered, overlapping)` point counts for a selection.
    fn defects(&self, sel: &[usize]) -> (usize, usize) {
        let mut uncovered = 0;
        let mut overlap = 0;
        for row in &self.rows {
            match sel.iter().filter(|&&k| row[k]).count() {
                0 => uncovered += 1,
                1 => {}
                _ => overlap += 1,
            }
        }
        (uncovered, overlap)
    }

    /// Each point goes to the first selected simplex containing it.
    fn exclusive_weights(&self, sel: &[usize]) -> Vec<f64> {
        let mut counts = vec![0usize; sel.len()];
        for row in &self.rows {
            if let Some(pos) = sel.iter().position(|&k| row[k]) {
                counts[pos] += 1;
            }
        }
        let total: usize = counts.iter().sum();
        counts
            .iter()
            .map(|&c| {
                if total == 0 {
                    0.0
                } else {
                    c as f64 / total as f64
                }
            })
            .collect()
    }

    fn coverage(&self, k: usize) -> usize {
        self.rows.iter().filter(|r| r[k]).count()
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Smallest selection with few defects; ties go to the most balanced weights.
fn search_cover(inc: &Incidence, t: usize, slack: usize) -> Option<Vec<usize>> {
    let mut budget = SEARCH_LIMIT;
    for k in 1..=t {
        let n = binomial(t, k);
        if n > budget {
            return None;
        }
        budget -= n;
        let mut best: Option<(f64, Vec<usize>)> = None;
        for sel in (0..t).combinations(k) {
            let (u, o) = inc.defects(&sel);
            if u + o > slack {
                continue;
            }
            let min_w = inc
                .exclusive_weights(&sel)
                .into_iter()
                .fold(f64::INFINITY, f64::min);
            if best.as_ref().is_none_or(|(w, _)| min_w > *w) {
                best = Some((min_w, sel));
            }
        }
        if let Some((_, sel)) = best {
            return Some(sel);
        }
    }
    None
}

/// Greedy max-coverage: repeatedly take the simplex covering most uncovered points.
fn greedy_cover(inc: &Incidence, t: usize) -> Vec<usize> {
    let mut covered = vec![false; inc.rows.len()];
    let mut sel = Vec::new();
    loop {
        let gain = |k: usize| {
            inc.rows
                .iter()
                .zip(&covered)
                .filter(|(r, c)| r[k] && !**c)
                .count()
        };
        let Some((k, g)) = (0..t)
            .filter(|k| !sel.contains(k))
            .map(|k| (k, gain(k)))
            .max_by_key(|&(k, g)| (g, std::cmp::Reverse(k)))
        else {
            break;
        };
        if g == 0 {
            break;
        }
        sel.push(k);
        for (r, c) in inc.rows.iter().zip(covered.iter_mut()) {
            *c |= r[k];
        }
    }
    sel
}

/// Picks simplices covering the trunk from `samples` Hit-and-Run points of `B_r(P)`.
pub fn identify_cover(p: &TropPolytope, samples: usize, seed: u64) -> Result<SimplexCover> {
    identify_cover_with(p, &VolumeOptions::new(samples, seed))
}

pub fn identify_cover_with(p: &TropPolytope, opts: &VolumeOptions) -> Result<SimplexCover> {
    let candidates: Vec<Vec<usize>> = enumerate_simplices(p)?
        .into_iter()
        .filter(|s| !s.degenerate)
        .map(|s| s.indices)
        .collect();
    if candidates.is_empty() {
        return Err(TropError::NoTrunk);
    }
    let ball = min_enclosing(p)?;
    if ball.radius() <= 0.0 {
        return Err(TropError::DegenerateBall);
    }
    let xs: Vec<TropPoint> = sample_ball(&ball, opts)?.into_iter().flatten().collect();
    let simplices: Vec<TropPolytope> = candidates.iter().map(|c| p.subset(c)).collect();
    let rows: Vec<Vec<bool>> = xs
        .par_iter()
        .filter(|x| contains(p, x, opts.tol))
        .map(|x| {
            simplices
                .iter()
                .map(|s| contains(s, x, opts.tol))
                .collect::<Vec<bool>>()
        })
        // points only on tentacles belong to no full simplex
        .filter(|row| row.iter().any(|&b| b))
        .collect();
    if rows.is_empty() {
        return Err(TropError::InsufficientSamples);
    }
    let inc = Incidence { rows };
    let t = candidates.len();
    let slack = (COVER_SLACK * inc.rows.len() as f64).floor() as usize;
    let mut sel = search_cover(&inc, t, slack).unwrap_or_else(|| greedy_cover(&inc, t));
    // largest share first; the stable sort keeps lexicographic order on ties
    sel.sort_by_key(|&k| std::cmp::Reverse(inc.coverage(k)));
    let weights = inc.exclusive_weights(&sel);
    let (simplices, weights): (Vec<Vec<usize>>, Vec<f64>) = sel
        .iter()
        .zip(weights)
        .filter(|(_, w)| *w > 0.0)
        .map(|(&k, w)| (candidates[k].clone(), w))
        .unzip();
    Ok(SimplexCover {
        simplices,
        weights,
        sample_size_used: inc.rows.len(),
        samples: opts.samples,
        seed: opts.seed,
        burn_in: opts.burn_in,
    })
}

/// Draws `count` points: a simplex by the cover weights, then the next point
/// of that simplex's own chain.
pub fn uniform_sample(
    cover: &SimplexCover,
    p: &TropPolytope,
    count: usize,
    seed: u64,
) -> Result<Vec<TropPoint>> {
    uniform_sample_with(cover, p, count, seed, DEFAULT_BURN_IN, 1)
}

pub fn uniform_sample_with(
    cover: &SimplexCover,
    p: &TropPolytope,
    count: usize,
    seed: u64,
    burn_in: usize,
    thinning: usize,
) -> Result<Vec<TropPoint>> {
    if cover.simplices.is_empty() || cover.simplices.len() != cover.weights.len() {
        return Err(TropError::InvalidArgument(
            "cover needs one weight per simplex".into(),
        ));
    }
    for s in &cover.simplices {
        if s.len() != p.dim() || s.iter().any(|&i| i >= p.len()) {
            return Err(TropError::InvalidArgument(format!(
                "cover simplex {s:?} does not index the polytope"
            )));
        }
    }
    let dist = WeightedIndex::new(&cover.weights)
        .map_err(|e| TropError::InvalidArgument(format!("cover weights: {e}")))?;
    let mut picker = shard_rng(seed, 0);
    let choices: Vec<usize> = (0..count).map(|_| dist.sample(&mut picker)).collect();
    let mut per_simplex = vec![0usize; cover.simplices.len()];
    for &c in &choices {
        per_simplex[c] += 1;
    }
    let streams: Vec<Vec<TropPoint>> = cover
        .simplices
        .par_iter()
        .zip(per_simplex)
        .enumerate()
        .map(|(k, (idx, n))| {
            if n == 0 {
                return Ok(Vec::new());
            }
            let simplex = p.subset(idx);
            let start = max_inscribed_simplex(&simplex)?.center().clone();
            let mut chain = HarChain::with_rng(simplex, start, shard_rng(seed, k + 1))?;
            chain.burn(burn_in);
            Ok(chain.take(n, thinning))
        })
        .collect::<Result<_>>()?;
    let mut cursors = vec![0usize; streams.len()];
    Ok(choices
        .into_iter()
        .map(|c| {
            let x = streams[c][cursors[c]].clone();
            cursors[c] += 1;
            x
        })
        .collect())
}

/// Membership check with the default tolerance, for callers validating samples.
pub fn all_inside(p: &TropPolytope, pts: &[TropPoint], tol: Option<f64>) -> bool {
    let tol = tol.unwrap_or(DEFAULT_TOL);
    pts.par_iter().all(|x| contains(p, x, tol))
}
