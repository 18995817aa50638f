//! Pseudo-vertices of a simplex's trunk and the tighter ball they give.
use tropiball::balls::min_enclosing;
use tropiball::tropical::TropPolytope;
use tropiball::volume::{
    enumerate_pseudo_vertices, estimate_volume_with, round_polytope, VolumeOptions,
};

fn main() -> tropiball::Result<()> {
    let p = TropPolytope::from_rows(&[
        vec![0.0, 0.0, 0.0, 0.0],
        vec![0.0, 1.0, 3.0, 1.0],
        vec![0.0, 1.0, 2.0, 5.0],
        vec![0.0, 2.0, 5.0, 10.0],
    ])?;
    let pv = enumerate_pseudo_vertices(&p)?;
    println!("{} pseudo-vertices (columns):", pv.len());
    for row in pv.as_columns() {
        println!("  {row:?}");
    }
    let before = min_enclosing(&p)?;
    let after = round_polytope(&p)?;
    println!(
        "enclosing radius {} -> {}, ball volume {} -> {}",
        before.radius(),
        after.radius(),
        before.volume(),
        after.volume()
    );

    let mut opts = VolumeOptions::new(100_000, 9);
    let plain = estimate_volume_with(&p, &opts)?;
    opts.round = true;
    let rounded = estimate_volume_with(&p, &opts)?;
    println!(
        "estimate {:.4} (hit rate {:.5}) -> {:.4} (hit rate {:.5})",
        plain.estimate, plain.p, rounded.estimate, rounded.p
    );
    Ok(())
}
