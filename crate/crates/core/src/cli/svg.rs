use std::fmt::Write;

use crate::error::{Result, TropError};
use crate::tropical::{trop_segment, TropPoint, TropPolytope};

const SIZE: f64 = 640.0;
const MARGIN: f64 = 40.0;

/// Scatter of `(y_2, y_3)` with the polytope's pairwise tropical segments.
pub fn render(points: &[TropPoint], polytope: &TropPolytope) -> Result<String> {
    if polytope.dim() != 3 {
        return Err(TropError::InvalidArgument(format!(
            "plotting needs points in R^3/R1, the polytope has e = {}",
            polytope.dim()
        )));
    }
    if let Some(bad) = points.iter().find(|p| p.dim() != 3) {
        return Err(TropError::DimensionError {
            expected: 3,
            found: bad.dim(),
        });
    }
    let mut edges: Vec<Vec<(f64, f64)>> = Vec::new();
    let vs = polytope.vertices();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let seg = trop_segment(&vs[i], &vs[j])?;
            edges.push(seg.bends().iter().map(xy).collect());
        }
    }
    let all: Vec<(f64, f64)> = points.iter().chain(vs).map(xy).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for &(x, y) in &all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let map = |(x, y): (f64, f64)| (MARGIN + (x - x0) * scale, SIZE - MARGIN - (y - y0) * scale);

    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#).unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    for e in &edges {
        let path: Vec<String> = e
            .iter()
            .map(|&p| map(p))
            .map(|(x, y)| format!("{x:.2},{y:.2}"))
            .collect();
        writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="gray" stroke-width="1.5"/>"#,
            path.join(" ")
        )
        .unwrap();
    }
    for p in points {
        let (x, y) = map(xy(p));
        writeln!(
            s,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="1.5" fill="black"/>"#
        )
        .unwrap();
    }
    for v in vs {
        let (x, y) = map(xy(v));
        writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="gray"/>"#).unwrap();
    }
    writeln!(
        s,
        r#"<text x="{MARGIN}" y="{}" font-size="12" font-family="sans-serif">x: y2, y: y3</text>"#,
        SIZE - 10.0
    )
    .unwrap();
    s.push_str("</svg>\n");
    Ok(s)
}

fn xy(p: &TropPoint) -> (f64, f64) {
    (p.coords()[1], p.coords()[2])
}
