//! Monte Carlo volume from the minimum enclosing ball, with its bounds.
use tropiball::tropical::TropPolytope;
use tropiball::volume::{estimate_volume, DEFAULT_BURN_IN};

fn main() -> tropiball::Result<()> {
    let p = TropPolytope::from_rows(&[
        vec![0.0, -2.0, 5.0],
        vec![0.0, -2.0, 3.0],
        vec![0.0, 2.0, 2.0],
        vec![0.0, 1.0, 0.0],
    ])?;
    for samples in [1_000, 10_000, 100_000] {
        let est = estimate_volume(&p, samples, 2024, DEFAULT_BURN_IN)?;
        let (lo, hi) = est.band(3.0);
        println!(
            "I = {samples:>6}: C/I = {:.4}  Vol = {:.4}  3se band [{lo:.3}, {hi:.3}]  bounds [{}, {}]",
            est.p, est.estimate, est.lower_bound, est.upper_bound
        );
    }
    Ok(())
}
