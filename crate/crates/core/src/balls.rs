//! Tropical balls, maximum inscribed and minimum enclosing balls.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, TropError};
use crate::hull::{kleene_star, KleeneStar};
use crate::lp::{lp_solve, LpProblem, LpStatus};
use crate::tropical::point::dist_raw;
use crate::tropical::{TropPoint, TropPolytope};

/// Radii at or below this count as an empty trunk.
const MIN_RADIUS: f64 = 1e-12;
/// Radius ties between simplices closer than this are broken by index order.
const RADIUS_TIE: f64 = 1e-9;
/// Slack granted to the second-stage LP when the radius is pinned.
const PIN_SLACK: f64 = 1e-10;

/// `B_l(c) = { y : d_tr(c, y) ≤ l }`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TropBall {
    center: TropPoint,
    radius: f64,
}

impl TropBall {
    pub fn new(center: TropPoint, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius >= 0.0) {
            return Err(TropError::InvalidArgument(format!(
                "ball radius {radius} must be finite and non-negative"
            )));
        }
        Ok(Self { center, radius })
    }

    pub fn center(&self) -> &TropPoint {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    /// The `e` points `c + l·e_k`, normalized. Coincide when the radius is 0.
    pub fn generators(&self) -> Vec<TropPoint> {
        let c = self.center.coords();
        (0..c.len())
            .map(|k| {
                let mut g = c.to_vec();
                g[k] += self.radius;
                TropPoint::normalized_unchecked(g)
            })
            .collect()
    }

    /// The ball as a tropical polytope (a single vertex when the radius is 0).
    pub fn to_polytope(&self) -> TropPolytope {
        TropPolytope::new_dedup(self.generators()).expect("generators share a dimension")
    }

    pub fn contains(&self, y: &TropPoint, tol: f64) -> bool {
        y.dim() == self.dim() && dist_raw(self.center.coords(), y.coords()) <= self.radius + tol
    }

    pub fn volume(&self) -> f64 {
        ball_volume(self.radius, self.dim())
    }
}

/// Generating vertices of a ball as a polytope.
pub fn ball_generators(b: &TropBall) -> TropPolytope {
    b.to_polytope()
}

/// Euclidean volume `e · l^(e-1)` of a radius-`l` ball in the `(e-1)`-dimensional torus.
pub fn ball_volume(radius: f64, e: usize) -> f64 {
    e as f64 * radius.powi(e as i32 - 1)
}

/// A maximum inscribed ball together with the simplex that realizes it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InscribedBall {
    pub ball: TropBall,
    /// Vertex indices of the realizing simplex, ascending.
    pub simplex: Vec<usize>,
}

/// Solves `maximize c·z` then, with the optimum pinned, `minimize Σ centre coords`
/// so that the returned centre does not depend on pivot order.
///
/// `rows` are `(a, b)` over variables `[y_2..y_e, t]` where `t` is the radius.
fn two_stage(rows: &[(Vec<f64>, f64)], e: usize, t_sign: f64) -> Option<(Vec<f64>, f64)> {
    let n = e; // e-1 centre coords + radius
    let mut obj = vec![0.0; n];
    obj[n - 1] = t_sign;
    let mut first = LpProblem::new(obj);
    for (a, b) in rows {
        first.le(a.clone(), *b);
    }
    let mut neg_t = vec![0.0; n];
    neg_t[n - 1] = -1.0;
    first.le(neg_t, 0.0);
    let sol = lp_solve(&first);
    if sol.status != LpStatus::Optimal {
        return None;
    }
    let t = sol.z[n - 1];

    // second stage: centre coordinates only, radius fixed
    let m = e - 1;
    let obj = vec![-1.0; m];
    let pinned = |slack: f64| {
        let mut second = LpProblem::new(obj.clone());
        for (a, b) in rows {
            second.le(a[..m].to_vec(), b - a[m] * t + slack);
        }
        let s = lp_solve(&second);
        s.is_optimal().then_some(s.z)
    };
    // the exact pin usually survives the solver's feasibility tolerance
    let centre = pinned(0.0)
        .or_else(|| pinned(PIN_SLACK))
        .unwrap_or_else(|| sol.z[..m].to_vec());
    Some((centre, t))
}

fn center_point(y: &[f64]) -> TropPoint {
    let mut c = Vec::with_capacity(y.len() + 1);
    c.push(0.0);
    c.extend_from_slice(y);
    TropPoint::normalized_unchecked(c)
}

/// Row over `[y_2..y_e, t]` for `y_j - y_i + coef_t·t ≤ b`, with `y_1 = 0` substituted.
fn pair_row(e: usize, i: usize, j: usize, coef_t: f64) -> Vec<f64> {
    let mut a = vec![0.0; e];
    if j > 0 {
        a[j - 1] += 1.0;
    }
    if i > 0 {
        a[i - 1] -= 1.0;
    }
    a[e - 1] = coef_t;
    a
}

/// Largest ball inside the trunk described by a weight matrix.
pub fn max_inscribed_from_star(ks: &KleeneStar) -> Result<TropBall> {
    let e = ks.dim();
    let mut rows = Vec::with_capacity(e * (e - 1));
    for i in 0..e {
        for j in 0..e {
            if i != j {
                // x_j + R - x_i ≤ -m_ij
                rows.push((pair_row(e, i, j, 1.0), 0.0 - ks.weight(i, j)));
            }
        }
    }
    let (centre, r) = two_stage(&rows, e, 1.0).ok_or(TropError::NoTrunk)?;
    if r <= MIN_RADIUS {
        return Err(TropError::NoTrunk);
    }
    TropBall::new(center_point(&centre), r)
}

/// Maximum inscribed ball of a tropical simplex.
pub fn max_inscribed_simplex(p: &TropPolytope) -> Result<TropBall> {
    max_inscribed_from_star(&kleene_star(p.vertices())?)
}

/// Maximum inscribed ball over every simplex of the polytope's simplicial complex.
pub fn max_inscribed_detailed(p: &TropPolytope) -> Result<InscribedBall> {
    let e = p.dim();
    if p.len() < e {
        return Err(TropError::TooFewVertices {
            needed: e,
            found: p.len(),
        });
    }
    let combos: Vec<Vec<usize>> = (0..p.len()).combinations(e).collect();
    let balls: Vec<Option<InscribedBall>> = combos
        .into_par_iter()
        .map(|idx| {
            let simplex = p.subset(&idx);
            max_inscribed_simplex(&simplex)
                .ok()
                .map(|ball| InscribedBall { ball, simplex: idx })
        })
        .collect();
    // sequential reduction keeps the result independent of thread count
    let mut best: Option<InscribedBall> = None;
    for cand in balls.into_iter().flatten() {
        match &best {
            Some(b) if cand.ball.radius <= b.ball.radius + RADIUS_TIE => {}
            _ => best = Some(cand),
        }
    }
    best.ok_or(TropError::NoTrunk)
}

pub fn max_inscribed(p: &TropPolytope) -> Result<TropBall> {
    max_inscribed_detailed(p).map(|b| b.ball)
}

/// Smallest ball containing every vertex.
pub fn min_enclosing(p: &TropPolytope) -> Result<TropBall> {
    min_enclosing_points(p.vertices())
}

/// Smallest ball containing every point of a non-empty slice.
pub fn min_enclosing_points(points: &[TropPoint]) -> Result<TropBall> {
    let e = points.first().ok_or(TropError::EmptyPolytope)?.dim();
    let mut rows = Vec::with_capacity(points.len() * e * (e - 1));
    for v in points {
        v.check_dim(e)?;
        let c = v.coords();
        for j in 0..e {
            for k in 0..e {
                if j != k {
                    // v_j - y_j - v_k + y_k ≤ r
                    rows.push((pair_row(e, j, k, -1.0), c[k] - c[j]));
                }
            }
        }
    }
    if e == 1 {
        return TropBall::new(points[0].clone(), 0.0);
    }
    let (centre, r) =
        two_stage(&rows, e, -1.0).expect("enclosing LP is always feasible and bounded");
    TropBall::new(center_point(&centre), r.max(0.0))
}

/// `max_{i,j} d_tr(v_i, v_j) / 2`.
pub fn min_enclosing_lower_bound(p: &TropPolytope) -> f64 {
    let vs = p.vertices();
    vs.iter()
        .array_combinations()
        .map(|[a, b]| dist_raw(a.coords(), b.coords()))
        .fold(0.0, f64::max)
        / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::{contains, trop_dist};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn poly(rows: &[&[f64]]) -> TropPolytope {
        TropPolytope::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn pt(c: &[f64]) -> TropPoint {
        TropPoint::from_slice(c).unwrap()
    }

    #[test]
    fn generators_of_planar_ball() {
        let b = TropBall::new(pt(&[0.0, 1.0, 2.0]), 0.5).unwrap();
        let g: Vec<Vec<f64>> = b.generators().iter().map(|p| p.coords().to_vec()).collect();
        assert_eq!(
            g,
            vec![
                vec![0.0, 0.5, 1.5],
                vec![0.0, 1.5, 2.0],
                vec![0.0, 1.0, 2.5]
            ]
        );
        let zero = TropBall::new(pt(&[0.0, 1.0, 2.0]), 0.0).unwrap();
        assert!(zero.generators().iter().all(|g| g == zero.center()));
        assert_eq!(zero.to_polytope().len(), 1);
        assert!(TropBall::new(pt(&[0.0, 0.0]), -1.0).is_err());
    }

    #[test]
    fn ball_points_are_in_generator_hull() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for e in [3usize, 4, 5] {
            let c = TropPoint::new((0..e).map(|_| rng.random_range(-3.0..3.0)).collect()).unwrap();
            let b = TropBall::new(c.clone(), 1.7).unwrap();
            let p = ball_generators(&b);
            let mut n = 0;
            while n < 1000 {
                let y = TropPoint::new(
                    c.coords()
                        .iter()
                        .map(|x| x + rng.random_range(-1.7..1.7))
                        .collect(),
                )
                .unwrap();
                if trop_dist(&c, &y).unwrap() <= 1.7 {
                    assert!(contains(&p, &y, 1e-9));
                    n += 1;
                }
            }
        }
    }

    #[test]
    fn polytrope_inscribed() {
        let p = poly(&[&[0.0, 0.0, 0.0], &[0.0, 2.0, 5.0], &[0.0, 3.0, 1.0]]);
        let b = max_inscribed_simplex(&p).unwrap();
        assert_abs_diff_eq!(b.radius(), 1.5, epsilon = 1e-9);
        assert!(b.center().max_abs_diff(&pt(&[0.0, 1.5, 1.5])) < 1e-9);
        for g in b.generators() {
            assert!(contains(&p, &g, 1e-6));
        }
    }

    #[test]
    fn non_polytrope_inscribed() {
        let p = poly(&[
            &[0.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 3.0, 1.0],
            &[0.0, 1.0, 2.0, 5.0],
            &[0.0, 2.0, 5.0, 10.0],
        ]);
        let b = max_inscribed_simplex(&p).unwrap();
        assert_abs_diff_eq!(b.radius(), 0.5, epsilon = 1e-9);
        // optimal centres form (0, 0.5, 2, t), t in [5, 6.5]; the smallest sum is t = 5
        assert!(b.center().max_abs_diff(&pt(&[0.0, 0.5, 2.0, 5.0])) < 1e-9);
        for g in b.generators() {
            assert!(contains(&p, &g, 1e-6));
        }
    }

    #[test]
    fn four_vertex_polytope_inscribed() {
        let p = poly(&[
            &[0.0, -2.0, 5.0],
            &[0.0, -2.0, 3.0],
            &[0.0, 2.0, 2.0],
            &[0.0, 1.0, 0.0],
        ]);
        let b = max_inscribed_detailed(&p).unwrap();
        assert_abs_diff_eq!(b.ball.radius(), 1.0, epsilon = 1e-9);
        assert!(
            b.ball.center().max_abs_diff(&pt(&[0.0, -1.0, 4.0])) < 1e-9,
            "{:?}",
            b
        );
        for g in b.ball.generators() {
            assert!(contains(&p, &g, 1e-6));
        }
    }

    #[test]
    fn ball_inscribed_in_itself() {
        let b = TropBall::new(pt(&[0.0, 2.0, -1.0, 4.0]), 1.25).unwrap();
        let got = max_inscribed(&b.to_polytope()).unwrap();
        assert_abs_diff_eq!(got.radius(), 1.25, epsilon = 1e-9);
        assert!(got.center().max_abs_diff(b.center()) < 1e-9);
    }

    #[test]
    fn degenerate_inputs() {
        let flat = poly(&[&[0.0, 0.0, 0.0], &[0.0, 1.0, 1.0], &[0.0, 2.0, 2.0]]);
        assert_eq!(
            max_inscribed_simplex(&flat),
            Err(TropError::DegenerateSimplex)
        );
        assert_eq!(max_inscribed(&flat), Err(TropError::NoTrunk));
        let small = poly(&[&[0.0, 0.0, 0.0], &[0.0, 1.0, 3.0]]);
        assert!(matches!(
            max_inscribed(&small),
            Err(TropError::TooFewVertices { .. })
        ));
    }

    #[test]
    fn enclosing_examples() {
        let cases: Vec<(TropPolytope, f64)> = vec![
            (
                poly(&[&[0.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]]),
                1.0,
            ),
            (
                poly(&[&[0.0, 0.0, 0.0], &[0.0, 2.0, 5.0], &[0.0, 3.0, 1.0]]),
                2.5,
            ),
            (
                poly(&[
                    &[0.0, -2.0, 5.0],
                    &[0.0, -2.0, 3.0],
                    &[0.0, 2.0, 2.0],
                    &[0.0, 1.0, 0.0],
                ]),
                4.0,
            ),
            (
                poly(&[
                    &[0.0, 0.0, 0.0, 0.0],
                    &[0.0, 2.0, 5.0, 0.0],
                    &[0.0, 3.0, 1.0, 0.0],
                    &[0.0, 2.0, 5.0, 5.0],
                ]),
                10.0 / 3.0,
            ),
        ];
        for (p, r) in cases {
            let b = min_enclosing(&p).unwrap();
            assert_abs_diff_eq!(b.radius(), r, epsilon = 1e-9);
            let far = p
                .vertices()
                .iter()
                .map(|v| trop_dist(b.center(), v).unwrap())
                .fold(0.0, f64::max);
            assert!(far <= b.radius() + 1e-8);
            assert!(far >= b.radius() - 1e-6);
        }
    }

    #[test]
    fn lower_bound_examples() {
        let p = poly(&[
            &[0.0, -2.0, 5.0],
            &[0.0, -2.0, 3.0],
            &[0.0, 2.0, 2.0],
            &[0.0, 1.0, 0.0],
        ]);
        assert_eq!(min_enclosing_lower_bound(&p), 4.0);
        let q = poly(&[
            &[0.0, 0.0, 0.0, 0.0],
            &[0.0, 2.0, 5.0, 0.0],
            &[0.0, 3.0, 1.0, 0.0],
            &[0.0, 2.0, 5.0, 5.0],
        ]);
        assert_eq!(min_enclosing_lower_bound(&q), 3.0);
        assert_eq!(min_enclosing_lower_bound(&poly(&[&[0.0, 1.0]])), 0.0);
    }

    #[test]
    fn volume_formula() {
        assert_eq!(ball_volume(2.0, 4), 32.0);
        assert_eq!(ball_volume(2.0, 3), 12.0);
        assert_eq!(ball_volume(4.0, 3), 48.0);
        assert_eq!(ball_volume(2.0, 5), 80.0);
        assert_eq!(ball_volume(4.0, 6), 6144.0);
        assert!((ball_volume(4.0, 10) - 2.62e6).abs() / 2.62e6 < 0.01);
    }

    /// Counts grid cells of side `h` whose centres lie in the radius-`l` ball at the origin.
    fn grid_volume(e: usize, l: f64, h: f64) -> f64 {
        let n = (2.0 * l / h).round() as usize;
        let d = e - 1;
        let mut count = 0usize;
        let mut idx = vec![0usize; d];
        loop {
            let y: Vec<f64> = idx.iter().map(|&i| -l + (i as f64 + 0.5) * h).collect();
            let hi = y.iter().copied().fold(0.0, f64::max);
            let lo = y.iter().copied().fold(0.0, f64::min);
            if hi - lo <= l {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == d {
                    return count as f64 * h.powi(d as i32);
                }
                idx[k] += 1;
                if idx[k] < n {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn volume_matches_grid_count() {
        for (e, h) in [(3usize, 0.01), (4, 0.025)] {
            let coarse = grid_volume(e, 1.0, 2.0 * h);
            let fine = grid_volume(e, 1.0, h);
            // first-order Richardson step
            let extrapolated = 2.0 * fine - coarse;
            let exact = ball_volume(1.0, e);
            assert!(
                (extrapolated - exact).abs() / exact < 0.02,
                "e={e}: {extrapolated} vs {exact}"
            );
        }
    }

    fn random_polytope(e: usize, n: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
        prop::collection::vec(prop::collection::vec(-5.0f64..5.0, e), n)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn enclosing_dominates_pairwise_bound(rows in (2usize..6).prop_flat_map(|e| (1usize..9).prop_flat_map(move |n| random_polytope(e, n)))) {
            let pts: Vec<TropPoint> = rows.iter().map(|r| pt(r)).collect();
            let p = TropPolytope::new_dedup(pts).unwrap();
            let b = min_enclosing(&p).unwrap();
            prop_assert!(b.radius() >= min_enclosing_lower_bound(&p) - 1e-8);
            for v in p.vertices() {
                prop_assert!(trop_dist(b.center(), v).unwrap() <= b.radius() + 1e-8);
            }
        }

        #[test]
        fn sandwich(rows in (3usize..5).prop_flat_map(|e| (e..e + 3).prop_flat_map(move |n| random_polytope(e, n)))) {
            let pts: Vec<TropPoint> = rows.iter().map(|r| pt(r)).collect();
            let p = TropPolytope::new_dedup(pts).unwrap();
            if let Ok(inner) = max_inscribed(&p) {
                let outer = min_enclosing(&p).unwrap();
                prop_assert!(inner.radius() <= outer.radius() + 1e-9);
                for g in inner.generators() {
                    prop_assert!(contains(&p, &g, 1e-6));
                }
            }
        }
    }
}
