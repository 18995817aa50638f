//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fail.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, TestRunner};
use statrs::distribution::{ChiSquared, ContinuousCDF};
use tropiball::balls::{
    ball_volume, max_inscribed, max_inscribed_detailed, min_enclosing, min_enclosing_lower_bound,
    TropBall,
};
use tropiball::cli::{replay, PolytopeFile, RunManifest};
use tropiball::complex::{all_inside, identify_cover, uniform_sample, SimplexCover};
use tropiball::hull::kleene_star;
use tropiball::sampler::HarChain;
use tropiball::tropical::{trop_det, TropPoint, TropPolytope};
use tropiball::volume::{
    acceptance_rate_bound, enumerate_pseudo_vertices, estimate_volume, estimate_volume_with,
    round_polytope, VolumeOptions, DEFAULT_BURN_IN,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn load(name: &str) -> TropPolytope {
    PolytopeFile::load(&data(name))
        .unwrap()
        .to_polytope()
        .unwrap()
}

fn pt(c: &[f64]) -> TropPoint {
    TropPoint::from_slice(c).unwrap()
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

/// Collects sub-check failures so one line can report all of them.
#[derive(Default)]
struct Report {
    notes: Vec<String>,
    failed: Vec<String>,
}

impl Report {
    fn check(&mut self, ok: bool, what: String) {
        if ok {
            self.notes.push(what);
        } else {
            self.failed.push(what);
        }
    }

    fn finish(self) -> Check {
        if self.failed.is_empty() {
            Ok(self.notes.join("; "))
        } else {
            Err(self.failed.join("; "))
        }
    }
}

fn c1_determinant() -> Check {
    let p = load("triangle.json");
    let a = p.vertex_matrix();
    let d = trop_det(&a).map_err(|e| e.to_string())?;
    let t = Instant::now();
    for _ in 0..1000 {
        std::hint::black_box(trop_det(std::hint::black_box(&a)).unwrap());
    }
    let per = t.elapsed() / 1000;
    let mut r = Report::default();
    r.check(d.value == 8.0, format!("tdet = {}", d.value));
    r.check(
        d.sigma_one_based() == vec![1, 3, 2],
        format!("sigma = {:?}", d.sigma_one_based()),
    );
    r.check(!d.singular, format!("singular = {}", d.singular));
    r.check(per < Duration::from_millis(1), format!("{per:?} per call"));
    r.finish()
}

fn c2_kleene() -> Check {
    let mut r = Report::default();
    let ks = kleene_star(load("triangle.json").vertices()).map_err(|e| e.to_string())?;
    let want3 = vec![
        vec![0.0, -3.0, -5.0],
        vec![0.0, 0.0, -3.0],
        vec![0.0, -2.0, 0.0],
    ];
    r.check(ks.matrix().to_rows() == want3, "3x3 star exact".into());
    let ks = kleene_star(load("simplex4.json").vertices()).map_err(|e| e.to_string())?;
    let want4 = vec![
        vec![0.0, -1.0, -3.0, -10.0],
        vec![0.0, 0.0, -2.0, -8.0],
        vec![0.0, 1.0, 0.0, -5.0],
        vec![0.0, 4.0, -2.0, 0.0],
    ];
    r.check(ks.matrix().to_rows() == want4, "4x4 star exact".into());
    r.finish()
}

fn c3_inscribed() -> Check {
    let mut r = Report::default();
    let tri = load("triangle.json");
    let b = max_inscribed(&tri).map_err(|e| e.to_string())?;
    r.check(
        (b.radius() - 1.5).abs() <= 1e-6,
        format!("polytrope R = {}", b.radius()),
    );
    r.check(feasible(&tri, &b), "polytrope ball inside".into());

    let four = load("four_vertex.json");
    let b = max_inscribed(&four).map_err(|e| e.to_string())?;
    r.check(
        (b.radius() - 1.0).abs() <= 1e-6,
        format!("four-vertex R = {}", b.radius()),
    );
    r.check(
        close(b.center().coords(), &[0.0, -1.0, 4.0], 1e-6),
        format!("four-vertex center {:?}", b.center().coords()),
    );

    let s4 = load("simplex4.json");
    let b = max_inscribed(&s4).map_err(|e| e.to_string())?;
    r.check(
        (b.radius() - 0.5).abs() <= 1e-6,
        format!("R^4 simplex R = {}", b.radius()),
    );
    r.check(feasible(&s4, &b), "R^4 simplex ball inside".into());
    r.check(
        close(b.center().coords(), &[0.0, 0.5, 2.0, 0.5], 1e-6),
        format!(
            "R^4 simplex center {:?}, expected (0,0.5,2,0.5) which violates x2 - x4 + R <= -4",
            b.center().coords()
        ),
    );
    r.finish()
}

fn feasible(p: &TropPolytope, b: &TropBall) -> bool {
    b.generators().iter().all(|g| p.contains(g, 1e-6))
}

fn c4_enclosing() -> Check {
    let mut r = Report::default();
    for (name, want, tol) in [
        ("unit_triangle.json", 1.0, 1e-6),
        ("triangle.json", 2.5, 1e-6),
        ("four_vertex.json", 4.0, 1e-6),
        ("enclosing4.json", 3.333, 1e-3),
    ] {
        let b = min_enclosing(&load(name)).map_err(|e| e.to_string())?;
        r.check(
            (b.radius() - want).abs() <= tol,
            format!("{name} r = {:.6}", b.radius()),
        );
    }
    let mut runner = TestRunner::new(Config {
        rng_seed: proptest::test_runner::RngSeed::Fixed(12),
        ..Config::default()
    });
    let strat = (3usize..=5).prop_flat_map(|e| {
        proptest::collection::vec(proptest::collection::vec(-10.0f64..10.0, e), 1..=8)
    });
    let mut bad = 0;
    for _ in 0..1000 {
        let rows = strat.new_tree(&mut runner).unwrap().current();
        let Ok(p) = TropPolytope::new_dedup(rows.iter().map(|v| pt(v)).collect()) else {
            continue;
        };
        let ball = min_enclosing(&p).unwrap();
        let lb = min_enclosing_lower_bound(&p);
        let covers = p
            .vertices()
            .iter()
            .all(|v| ball.center().distance(v).unwrap() <= ball.radius() + 1e-7);
        if ball.radius() < lb - 1e-7 || !covers {
            bad += 1;
        }
    }
    r.check(
        bad == 0,
        format!("lower bound on 1000 random polytopes, {bad} violations"),
    );
    r.finish()
}

fn c5_ball_volume() -> Check {
    let mut r = Report::default();
    let t = Instant::now();
    let table = [
        // e = 3, l = 2 is 3 * 2^2 = 12
        (3, 2.0, 12.0),
        (3, 4.0, 48.0),
        (4, 2.0, 32.0),
        (4, 4.0, 256.0),
        (5, 2.0, 80.0),
        (5, 4.0, 1280.0),
        (6, 2.0, 192.0),
        (6, 4.0, 6144.0),
        (10, 2.0, 5120.0),
    ];
    for (e, l, want) in table {
        r.check(
            ball_volume(l, e) == want,
            format!("e={e} l={l}: {}", ball_volume(l, e)),
        );
    }
    let big = ball_volume(4.0, 10);
    r.check(
        (big / 2.62e6 - 1.0).abs() < 0.01,
        format!("e=10 l=4: {big:.4e}"),
    );
    let el = t.elapsed();
    r.check(el < Duration::from_secs(1), format!("{el:?}"));
    for e in [3usize, 4] {
        let grid = grid_volume(e, 1.0, if e == 3 { 400 } else { 150 });
        let exact = ball_volume(1.0, e);
        r.check(
            (grid / exact - 1.0).abs() < 0.02,
            format!("grid e={e}: {grid:.4} vs {exact}"),
        );
    }
    r.finish()
}

/// Midpoint grid count of `{ y : max(y) - min(y) <= l, y_1 = 0 }`.
fn grid_volume(e: usize, l: f64, n: usize) -> f64 {
    let h = 2.0 * l / n as f64;
    let d = e - 1;
    let mut hits = 0usize;
    let mut idx = vec![0usize; d];
    loop {
        let (mut lo, mut hi) = (0.0f64, 0.0f64);
        for &k in &idx {
            let y = -l + (k as f64 + 0.5) * h;
            lo = lo.min(y);
            hi = hi.max(y);
        }
        if hi - lo <= l {
            hits += 1;
        }
        let mut pos = 0;
        loop {
            if pos == d {
                return hits as f64 * h.powi(d as i32);
            }
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn c6_volume() -> Check {
    let mut r = Report::default();
    for (name, lo, hi, seed) in [
        ("simplex4.json", 2.1, 3.0, 1),
        ("four_vertex.json", 8.9, 10.0, 2),
    ] {
        let t = Instant::now();
        let est = estimate_volume(&load(name), 100_000, seed, DEFAULT_BURN_IN)
            .map_err(|e| e.to_string())?;
        let el = t.elapsed();
        let (blo, bhi) = est.band(3.0);
        r.check(
            (lo..=hi).contains(&est.estimate),
            format!(
                "{name}: {:.4} in [{lo}, {hi}], 3se band [{blo:.3}, {bhi:.3}]",
                est.estimate
            ),
        );
        r.check(el < Duration::from_secs(30), format!("{name} {el:.2?}"));
    }
    r.finish()
}

fn c7_rounding() -> Check {
    let mut r = Report::default();
    let p = load("simplex4.json");
    let pv = enumerate_pseudo_vertices(&p).map_err(|e| e.to_string())?;
    let expected = [
        [0.0, 0.0, 1.0, 4.0],
        [0.0, 0.0, 2.0, 4.0],
        [0.0, 0.0, 1.0, 6.0],
        [0.0, 0.0, 2.0, 7.0],
        [0.0, 1.0, 2.0, 5.0],
        [0.0, 1.0, 2.0, 7.0],
        [0.0, 1.0, 3.0, 5.0],
        [0.0, 1.0, 3.0, 8.0],
    ];
    let matched = expected
        .iter()
        .all(|c| pv.points().iter().any(|q| close(q.coords(), c, 1e-6)));
    r.check(
        pv.len() == 8 && matched,
        format!("{} pseudo-vertices, columns match: {matched}", pv.len()),
    );
    let k = round_polytope(&p).map_err(|e| e.to_string())?;
    r.check(
        (k.radius() - 2.0).abs() <= 1e-6,
        format!("k = {}", k.radius()),
    );
    r.check(
        (k.volume() - 32.0).abs() <= 1e-6,
        format!("Vol(B_k) = {}", k.volume()),
    );
    let mut opts = VolumeOptions::new(100_000, 3);
    opts.round = true;
    let est = estimate_volume_with(&p, &opts).map_err(|e| e.to_string())?;
    r.check(
        (2.2..=2.9).contains(&est.estimate),
        format!("rounded estimate {:.4}", est.estimate),
    );
    r.finish()
}

fn chi2_pvalue(counts: &[f64], probs: &[f64]) -> f64 {
    let n: f64 = counts.iter().sum();
    let stat: f64 = counts
        .iter()
        .zip(probs)
        .map(|(o, p)| (o - n * p).powi(2) / (n * p))
        .sum();
    1.0 - ChiSquared::new((counts.len() - 1) as f64)
        .unwrap()
        .cdf(stat)
}

fn c8_sampler() -> Check {
    let mut r = Report::default();
    let p = load("thin_triangle.json");
    let mut chain = HarChain::new(p.clone(), pt(&[0.0, 0.0, 0.0]), 8).map_err(|e| e.to_string())?;
    chain.burn(DEFAULT_BURN_IN);
    let pts = chain.take(2000, 1);
    let inside = pts.iter().filter(|x| p.contains(x, 1e-6)).count();
    r.check(inside == 2000, format!("{inside}/2000 inside"));

    // tconv{0, e_2, e_3} is exactly the unit square [0,1]^2 in (y2, y3)
    let sq = TropPolytope::from_rows(&[
        vec![0.0, 0.0, 0.0],
        vec![0.0, 1.0, 0.0],
        vec![0.0, 0.0, 1.0],
    ])
    .unwrap();
    let mut chain = HarChain::new(sq, pt(&[0.0, 0.5, 0.5]), 88).map_err(|e| e.to_string())?;
    chain.burn(DEFAULT_BURN_IN);
    let mut counts = vec![0.0; 16];
    for x in chain.take(100_000, 5) {
        let a = ((x.coords()[1] * 4.0) as usize).min(3);
        let b = ((x.coords()[2] * 4.0) as usize).min(3);
        counts[a * 4 + b] += 1.0;
    }
    let pv = chi2_pvalue(&counts, &[1.0 / 16.0; 16]);
    r.check(pv > 0.01, format!("square chi2 p = {pv:.3}"));
    r.finish()
}

fn weight_of(cover: &SimplexCover, simplex: &[usize]) -> f64 {
    cover
        .simplices
        .iter()
        .position(|s| s == simplex)
        .map_or(0.0, |k| cover.weights[k])
}

fn c9_cover() -> Check {
    let mut r = Report::default();
    let plane = load("cover_plane.json");
    let cover = identify_cover(&plane, 2000, 1).map_err(|e| e.to_string())?;
    let (a, b) = (weight_of(&cover, &[0, 1, 3]), weight_of(&cover, &[1, 2, 3]));
    r.check(
        (a - 0.62).abs() <= 0.05 && (b - 0.38).abs() <= 0.05,
        format!("plane weights ({a:.3}, {b:.3})"),
    );
    let pts = uniform_sample(&cover, &plane, 2000, 1).map_err(|e| e.to_string())?;
    r.check(
        all_inside(&plane, &pts, Some(1e-6)),
        "plane samples inside".into(),
    );

    let space = load("cover_space.json");
    let cover = identify_cover(&space, 3000, 1).map_err(|e| e.to_string())?;
    let (a, b) = (
        weight_of(&cover, &[0, 1, 2, 4]),
        weight_of(&cover, &[1, 2, 3, 4]),
    );
    let pts = uniform_sample(&cover, &space, 3000, 1).map_err(|e| e.to_string())?;
    r.check(
        all_inside(&space, &pts, Some(1e-6)),
        "space samples inside".into(),
    );
    r.check(
        (a - 0.97).abs() <= 0.02 && (b - 0.03).abs() <= 0.02,
        format!("space weights ({a:.3}, {b:.3}) vs (0.97, 0.03); exact trunk volumes 62.667 and 4.5 give (0.933, 0.067)"),
    );
    r.finish()
}

const CORPUS: [&str; 8] = [
    "triangle.json",
    "unit_triangle.json",
    "four_vertex.json",
    "simplex4.json",
    "enclosing4.json",
    "cover_plane.json",
    "cover_space.json",
    "thin_triangle.json",
];

fn c10_sandwich() -> Check {
    let mut r = Report::default();
    for (seed, name) in CORPUS.iter().enumerate() {
        let p = load(name);
        let est =
            estimate_volume(&p, 20_000, seed as u64, DEFAULT_BURN_IN).map_err(|e| e.to_string())?;
        let inner = max_inscribed_detailed(&p).map_err(|e| e.to_string())?.ball;
        let bound = acceptance_rate_bound(inner.radius(), est.enclosing_ball.radius(), p.dim())
            .map_err(|e| e.to_string())?;
        let ok = est.lower_bound <= est.estimate
            && est.estimate <= est.upper_bound
            && est.p >= bound - 3.0 * est.p_std_error();
        r.check(
            ok,
            format!(
                "{name}: {} <= {:.4} <= {}, rate {:.4} vs {:.4}",
                est.lower_bound, est.estimate, est.upper_bound, est.p, bound
            ),
        );
    }
    r.finish()
}

fn sample_manifest(name: &str, points: usize, seed: u64, cover: SimplexCover) -> RunManifest {
    let p = load(name);
    let mut m = RunManifest::new("sample", PolytopeFile::from_polytope(&p, None), seed);
    m.points = Some(points);
    m.cover = Some(cover);
    m
}

fn c11_determinism() -> Check {
    let mut r = Report::default();
    let plane = identify_cover(&load("cover_plane.json"), 2000, 1).map_err(|e| e.to_string())?;
    let space = identify_cover(&load("cover_space.json"), 3000, 1).map_err(|e| e.to_string())?;
    let runs = [
        sample_manifest("thin_triangle.json", 2000, 8, SimplexCover::single(3)),
        sample_manifest("cover_plane.json", 2000, 1, plane),
        sample_manifest("cover_space.json", 3000, 1, space),
    ];
    for m in &runs {
        let first = replay(m).map_err(|e| e.to_string())?;
        let text = serde_json::to_string(m).unwrap();
        let again = replay(&serde_json::from_str(&text).unwrap()).map_err(|e| e.to_string())?;
        r.check(
            first == again,
            format!(
                "{}-vertex replay {} bytes",
                m.polytope.vertices.len(),
                first.len()
            ),
        );
    }

    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_tropiball");
    let out = dir.path().join("s.csv");
    let ok = Command::new(bin)
        .args([
            "sample",
            data("cover_plane.json").to_str().unwrap(),
            "--points",
            "2000",
            "--seed",
            "4",
            "-o",
        ])
        .arg(&out)
        .env("TROPIBALL_THREADS", "4")
        .status()
        .unwrap()
        .success();
    let replayed = dir.path().join("r.csv");
    let ok = ok
        && Command::new(bin)
            .arg("replay")
            .arg(dir.path().join("s.csv.manifest.json"))
            .arg("-o")
            .arg(&replayed)
            .env("TROPIBALL_THREADS", "1")
            .status()
            .unwrap()
            .success();
    let same = ok && std::fs::read(&out).unwrap() == std::fs::read(&replayed).unwrap();
    r.check(same, "CLI sample vs replay across thread counts".into());
    r.finish()
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("tropical determinant", c1_determinant),
        ("Kleene star", c2_kleene),
        ("max inscribed ball", c3_inscribed),
        ("min enclosing ball", c4_enclosing),
        ("ball volume", c5_ball_volume),
        ("volume estimation", c6_volume),
        ("rounding", c7_rounding),
        ("HAR sampler", c8_sampler),
        ("cover identification", c9_cover),
        ("bound sandwich", c10_sandwich),
        ("determinism", c11_determinism),
    ];
    let mut failures = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {:>2} PASS {name}: {msg}", k + 1),
            Err(msg) => {
                failures += 1;
                println!("criterion {:>2} FAIL {name}: {msg}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
