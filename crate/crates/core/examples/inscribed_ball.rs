//! Largest tropical ball inside a simplex and inside a four-vertex polytope.
use tropiball::balls::{max_inscribed_detailed, max_inscribed_simplex};
use tropiball::tropical::TropPolytope;

fn main() -> tropiball::Result<()> {
    let simplex = TropPolytope::from_rows(&[
        vec![0.0, 0.0, 0.0, 0.0],
        vec![0.0, 1.0, 3.0, 1.0],
        vec![0.0, 1.0, 2.0, 5.0],
        vec![0.0, 2.0, 5.0, 10.0],
    ])?;
    let b = max_inscribed_simplex(&simplex)?;
    println!(
        "simplex: R = {}, center = {:?}, volume = {}",
        b.radius(),
        b.center().coords(),
        b.volume()
    );

    let four = TropPolytope::from_rows(&[
        vec![0.0, -2.0, 5.0],
        vec![0.0, -2.0, 3.0],
        vec![0.0, 2.0, 2.0],
        vec![0.0, 1.0, 0.0],
    ])?;
    let ib = max_inscribed_detailed(&four)?;
    println!(
        "four vertices: R = {} from simplex {:?}, center = {:?}",
        ib.ball.radius(),
        ib.simplex,
        ib.ball.center().coords()
    );
    for g in ib.ball.generators() {
        println!("  generator {:?}", g.coords());
    }
    Ok(())
}
