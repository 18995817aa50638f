use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::complex::SimplexCover;
use crate::sampler::RNG_NAME;
use crate::tropical::{TropPoint, TropPolytope};
use crate::volume::BallSampler;

/// `{ "e": 3, "vertices": [[...], ...], "name": "..." }`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolytopeFile {
    pub e: usize,
    pub vertices: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl PolytopeFile {
    pub fn from_polytope(p: &TropPolytope, name: Option<String>) -> Self {
        Self {
            e: p.dim(),
            vertices: p.vertices().iter().map(|v| v.coords().to_vec()).collect(),
            name,
        }
    }

    /// Validates and normalizes the vertices.
    pub fn to_polytope(&self) -> Result<TropPolytope, CliError> {
        if self.vertices.is_empty() {
            return Err(CliError::Parse("polytope file lists no vertices".into()));
        }
        let mut pts = Vec::with_capacity(self.vertices.len());
        for (k, v) in self.vertices.iter().enumerate() {
            if v.len() != self.e {
                return Err(CliError::Parse(format!(
                    "vertex {k} has {} coordinates, expected e = {}",
                    v.len(),
                    self.e
                )));
            }
            pts.push(
                TropPoint::from_slice(v)
                    .map_err(|err| CliError::Parse(format!("vertex {k}: {err}")))?,
            );
        }
        Ok(TropPolytope::new(pts)?)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("polytope file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        Self::parse(&read(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        write(
            path,
            &serde_json::to_string_pretty(self).expect("serializable"),
        )
    }
}

/// Everything needed to rerun a stochastic command bit for bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    pub rng: String,
    pub polytope: PolytopeFile,
    pub seed: u64,
    #[serde(default)]
    pub samples: Option<usize>,
    #[serde(default)]
    pub points: Option<usize>,
    pub burn_in: usize,
    pub thinning: usize,
    pub shards: usize,
    pub tol: f64,
    #[serde(default)]
    pub round: bool,
    #[serde(default)]
    pub sampler: BallSampler,
    #[serde(default)]
    pub cover: Option<SimplexCover>,
}

impl RunManifest {
    pub fn new(command: &str, polytope: PolytopeFile, seed: u64) -> Self {
        Self {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            rng: RNG_NAME.to_string(),
            polytope,
            seed,
            samples: None,
            points: None,
            burn_in: crate::volume::DEFAULT_BURN_IN,
            thinning: 1,
            shards: 1,
            tol: crate::tropical::DEFAULT_TOL,
            round: false,
            sampler: BallSampler::Har,
            cover: None,
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        serde_json::from_str(&read(path)?).map_err(|e| CliError::Parse(format!("manifest: {e}")))
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        write(
            path,
            &serde_json::to_string_pretty(self).expect("serializable"),
        )
    }
}

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn load_cover(path: &Path) -> Result<SimplexCover, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Parse(format!("cover file: {e}")))
}

/// Points CSV without a header, one point per row.
pub fn read_points(path: &Path) -> Result<Vec<TropPoint>, CliError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_path(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (k, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| CliError::Parse(format!("points row {k}: {e}")))?;
        let coords = rec
            .iter()
            .map(|f| f.trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::Parse(format!("points row {k}: {e}")))?;
        out.push(
            TropPoint::new(coords).map_err(|e| CliError::Parse(format!("points row {k}: {e}")))?,
        );
    }
    Ok(out)
}
