//! Tropical determinant and Kleene star of a polytrope in R^3/R1.
use tropiball::hull::{h_rep, kleene_star};
use tropiball::tropical::{trop_det, TropPolytope};

fn main() -> tropiball::Result<()> {
    let p = TropPolytope::from_rows(&[
        vec![0.0, 0.0, 0.0],
        vec![0.0, 2.0, 5.0],
        vec![0.0, 3.0, 1.0],
    ])?;
    let det = trop_det(&p.vertex_matrix())?;
    println!(
        "tdet = {}, sigma = {:?}, singular = {}",
        det.value,
        det.sigma_one_based(),
        det.singular
    );

    let ks = kleene_star(p.vertices())?;
    println!("Kleene star:");
    for row in ks.matrix().to_rows() {
        println!("  {row:?}");
    }
    println!("polytrope: {}", ks.is_closed());
    for line in h_rep(&ks).to_lines() {
        println!("  {line}");
    }
    Ok(())
}
