//! Command-line front end. `main` only forwards to [`execute`].

mod files;
mod format;
mod svg;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

pub use files::{read_points, PolytopeFile, RunManifest};
pub use format::{fmt_num, round_json, round_sig, SIG_DIGITS};
pub use svg::render as render_svg;

use crate::balls::{max_inscribed_detailed, min_enclosing, min_enclosing_lower_bound};
use crate::complex::{identify_cover_with, uniform_sample_with, SimplexCover};
use crate::error::TropError;
use crate::hull::{h_rep, kleene_star};
use crate::tropical::{trop_det, TropPoint, TropPolytope, DEFAULT_TOL};
use crate::volume::{
    enumerate_pseudo_vertices, estimate_volume_with, BallSampler, VolumeOptions, DEFAULT_BURN_IN,
};

/// Env var that sets the worker thread count.
pub const THREADS_ENV: &str = "TROPIBALL_THREADS";

/// Hit-and-Run draws used to pick a cover when `sample` is not given one.
const DEFAULT_COVER_SAMPLES: usize = 5000;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Domain(#[from] TropError),
}

impl CliError {
    /// 1 for mathematical failures, 2 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            _ => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Parse(_) => "parse",
            CliError::Domain(_) => "domain",
        }
    }

    pub fn to_json(&self) -> String {
        json!({"error": self.kind(), "message": self.to_string()}).to_string()
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "tropiball",
    version,
    about = "Tropical polytopes, tropical balls and volume estimation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tropical determinant of the vertex matrix (vertices as columns).
    Tdet { polytope: PathBuf },
    /// Kleene star and H-representation of a tropical simplex.
    Hrep { polytope: PathBuf },
    /// Maximum inscribed tropical ball.
    Maxball { polytope: PathBuf },
    /// Minimum enclosing tropical ball.
    Minball { polytope: PathBuf },
    /// Monte Carlo volume estimate.
    Volume {
        polytope: PathBuf,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        shards: usize,
        /// Enclose the pseudo-vertices rather than the vertices (simplices only).
        #[arg(long)]
        round: bool,
        /// Draw independent points from the ball instead of running Hit-and-Run.
        #[arg(long)]
        direct: bool,
    },
    /// Pseudo-vertices of a tropical simplex, one column per point.
    Pseudo { polytope: PathBuf },
    /// Simplices covering the trunk, with mixture weights.
    Cover {
        polytope: PathBuf,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        shards: usize,
        /// Also write the cover to this file.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Uniform points from the polytope as CSV.
    Sample {
        polytope: PathBuf,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 1000)]
        points: usize,
        /// Cover file from `cover`; identified on the fly when absent.
        #[arg(long)]
        cover: Option<PathBuf>,
        /// CSV destination; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// SVG scatter of sampled points over a polytope in R^3/R1.
    Plot {
        points: PathBuf,
        #[arg(long)]
        polytope: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Reruns a manifest; output is byte-identical to the original run.
    Replay {
        manifest: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_BURN_IN)]
    pub burn_in: usize,
    #[arg(long, default_value_t = 1)]
    pub thinning: usize,
    /// Write the run manifest here.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Results go to `out`, JSON errors to `err`.
pub fn execute<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            let e = CliError::Usage(e.to_string().trim_end().to_string());
            let _ = writeln!(err, "{}", e.to_json());
            return e.exit_code();
        }
    };
    match run(cli.command).and_then(|text| {
        out.write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string()))
    }) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{}", e.to_json());
            e.exit_code()
        }
    }
}

/// Builds the global thread pool from [`THREADS_ENV`] when it is set.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::Usage(format!(
            "{THREADS_ENV} must be a positive integer, got {raw:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))
}

/// Runs one command and returns what it prints.
pub fn run(cmd: Command) -> Result<String, CliError> {
    match cmd {
        Command::Tdet { polytope } => tdet(&load(&polytope)?),
        Command::Hrep { polytope } => hrep(&load(&polytope)?),
        Command::Maxball { polytope } => maxball(&load(&polytope)?),
        Command::Minball { polytope } => minball(&load(&polytope)?),
        Command::Pseudo { polytope } => pseudo(&load(&polytope)?),
        Command::Volume {
            polytope,
            run,
            samples,
            shards,
            round,
            direct,
        } => {
            let mut m = manifest("volume", &polytope, &run)?;
            m.samples = Some(samples);
            m.shards = shards;
            m.round = round;
            m.sampler = if direct {
                BallSampler::Direct
            } else {
                BallSampler::Har
            };
            finish(m, run.manifest.as_deref(), None)
        }
        Command::Cover {
            polytope,
            run,
            samples,
            shards,
            output,
        } => {
            let mut m = manifest("cover", &polytope, &run)?;
            m.samples = Some(samples);
            m.shards = shards;
            finish(m, run.manifest.as_deref(), output.as_deref())
        }
        Command::Sample {
            polytope,
            run,
            points,
            cover,
            output,
        } => {
            let mut m = manifest("sample", &polytope, &run)?;
            m.points = Some(points);
            let p = m.polytope.to_polytope()?;
            m.cover = Some(match cover {
                Some(path) => files::load_cover(&path)?,
                None if p.is_simplex() => SimplexCover::single(p.dim()),
                None => {
                    let mut opts = VolumeOptions::new(DEFAULT_COVER_SAMPLES, m.seed);
                    opts.burn_in = m.burn_in;
                    identify_cover_with(&p, &opts)?
                }
            });
            let manifest_path = run
                .manifest
                .clone()
                .or_else(|| output.as_ref().map(|o| sidecar(o)));
            finish(m, manifest_path.as_deref(), output.as_deref())
        }
        Command::Plot {
            points,
            polytope,
            output,
        } => {
            let p = load(&polytope)?;
            let pts = read_points(&points)?;
            files::write(&output, &render_svg(&pts, &p)?)?;
            Ok(String::new())
        }
        Command::Replay { manifest, output } => {
            let m = RunManifest::load(&manifest)?;
            finish(m, None, output.as_deref())
        }
    }
}

/// `out.csv` → `out.csv.manifest.json`.
pub fn sidecar(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

fn load(path: &Path) -> Result<TropPolytope, CliError> {
    PolytopeFile::load(path)?.to_polytope()
}

fn manifest(command: &str, path: &Path, run: &RunArgs) -> Result<RunManifest, CliError> {
    let file = PolytopeFile::load(path)?;
    // store the normalized vertices so replays see exactly what this run saw
    let p = file.to_polytope()?;
    let mut m = RunManifest::new(
        command,
        PolytopeFile::from_polytope(&p, file.name),
        run.seed,
    );
    m.burn_in = run.burn_in;
    m.thinning = run.thinning;
    if m.thinning == 0 {
        return Err(CliError::Usage("--thinning must be at least 1".into()));
    }
    Ok(m)
}

/// Executes a stochastic run described by `m`, saving the manifest first.
/// With `output` the result goes to that file and nothing is printed.
fn finish(
    m: RunManifest,
    manifest_path: Option<&Path>,
    output: Option<&Path>,
) -> Result<String, CliError> {
    if let Some(path) = manifest_path {
        m.save(path)?;
    }
    let text = replay(&m)?;
    match output {
        Some(path) => {
            files::write(path, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

/// Output of the run described by a manifest.
pub fn replay(m: &RunManifest) -> Result<String, CliError> {
    let p = m.polytope.to_polytope()?;
    let opts = || {
        let mut o = VolumeOptions::new(m.samples.unwrap_or(0), m.seed);
        o.burn_in = m.burn_in;
        o.thinning = m.thinning;
        o.shards = m.shards;
        o.sampler = m.sampler;
        o.round = m.round;
        o.tol = m.tol;
        o
    };
    match m.command.as_str() {
        "volume" => to_json(&estimate_volume_with(&p, &opts())?),
        "cover" => to_json(&identify_cover_with(&p, &opts())?),
        "sample" => {
            let cover = m
                .cover
                .clone()
                .unwrap_or_else(|| SimplexCover::single(p.dim()));
            let pts = uniform_sample_with(
                &cover,
                &p,
                m.points.unwrap_or(0),
                m.seed,
                m.burn_in,
                m.thinning,
            )?;
            Ok(points_csv(&pts))
        }
        other => Err(CliError::Parse(format!(
            "manifest command {other:?} is not replayable"
        ))),
    }
}

/// One point per line, no header.
pub fn points_csv(pts: &[TropPoint]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for p in pts {
        w.write_record(p.coords().iter().map(|&c| fmt_num(c)))
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String, CliError> {
    let value = serde_json::to_value(v).map_err(|e| CliError::Parse(e.to_string()))?;
    Ok(format!(
        "{}\n",
        serde_json::to_string_pretty(&round_json(value)).expect("serializable")
    ))
}

fn tdet(p: &TropPolytope) -> Result<String, CliError> {
    let d = trop_det(&p.vertex_matrix())?;
    to_json(&json!({"value": d.value, "sigma": d.sigma_one_based(), "singular": d.singular}))
}

fn hrep(p: &TropPolytope) -> Result<String, CliError> {
    let ks = kleene_star(p.vertices())?;
    let hr = h_rep(&ks);
    let constraints: Vec<Value> = hr
        .constraints()
        .iter()
        .map(|h| json!({"i": h.i + 1, "j": h.j + 1, "bound": h.bound}))
        .collect();
    to_json(&json!({
        "kleene_star": ks.matrix().to_rows(),
        "sigma": ks.sigma().iter().map(|s| s + 1).collect::<Vec<_>>(),
        "polytrope": ks.is_closed(),
        "constraints": constraints,
        "lines": hr.to_lines(),
    }))
}

fn maxball(p: &TropPolytope) -> Result<String, CliError> {
    let ib = max_inscribed_detailed(p)?;
    // how far the ball's generators stray outside P; 0 up to rounding
    let residual = ib
        .ball
        .generators()
        .iter()
        .map(|g| p.project(g).and_then(|q| g.distance(&q)))
        .collect::<Result<Vec<f64>, _>>()?
        .into_iter()
        .fold(0.0, f64::max);
    to_json(&json!({
        "center": ib.ball.center(),
        "radius": ib.ball.radius(),
        "simplex": ib.simplex,
        "volume": ib.ball.volume(),
        "residual": residual,
    }))
}

fn minball(p: &TropPolytope) -> Result<String, CliError> {
    let b = min_enclosing(p)?;
    let far = p
        .vertices()
        .iter()
        .map(|v| b.center().distance(v))
        .collect::<Result<Vec<f64>, _>>()?;
    let residual = far.into_iter().fold(0.0, f64::max) - b.radius();
    to_json(&json!({
        "center": b.center(),
        "radius": b.radius(),
        "lower_bound": min_enclosing_lower_bound(p),
        "volume": b.volume(),
        "residual": residual.max(0.0),
    }))
}

fn pseudo(p: &TropPolytope) -> Result<String, CliError> {
    let pv = enumerate_pseudo_vertices(p)?;
    to_json(&json!({"count": pv.len(), "columns": pv.as_columns(), "tol": DEFAULT_TOL}))
}
