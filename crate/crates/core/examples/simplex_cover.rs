//! Cover a non-convex trunk by tropical simplices, then sample it uniformly.
use tropiball::complex::{all_inside, identify_cover, uniform_sample};
use tropiball::tropical::TropPolytope;

fn main() -> tropiball::Result<()> {
    let p = TropPolytope::from_rows(&[
        vec![0.0, -2.0, 3.0],
        vec![0.0, -2.0, 5.0],
        vec![0.0, 2.0, 2.0],
        vec![0.0, 1.0, 0.0],
    ])?;
    let cover = identify_cover(&p, 2000, 5)?;
    for (s, w) in cover.simplices.iter().zip(&cover.weights) {
        println!("simplex {s:?} weight {w:.3}");
    }
    let pts = uniform_sample(&cover, &p, 2000, 5)?;
    println!(
        "{} points, all inside: {}",
        pts.len(),
        all_inside(&p, &pts, Some(1e-6))
    );
    Ok(())
}
