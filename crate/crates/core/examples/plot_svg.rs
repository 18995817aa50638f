//! Sample a triangle and write an SVG scatter next to the target dir.
use std::path::Path;

use tropiball::cli::{render_svg, PolytopeFile};
use tropiball::complex::{uniform_sample, SimplexCover};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let file =
        PolytopeFile::load(&Path::new(env!("CARGO_MANIFEST_DIR")).join("data/thin_triangle.json"))?;
    let p = file.to_polytope()?;
    let pts = uniform_sample(&SimplexCover::single(p.dim()), &p, 2000, 11)?;
    let out = std::env::temp_dir().join("tropiball_triangle.svg");
    std::fs::write(&out, render_svg(&pts, &p)?)?;
    println!("wrote {}", out.display());
    Ok(())
}
