//! Hit-and-Run on a thin tropical triangle; every draw stays inside.
use tropiball::sampler::HarChain;
use tropiball::tropical::{TropPoint, TropPolytope};

fn main() -> tropiball::Result<()> {
    let p = TropPolytope::from_rows(&[
        vec![0.0, -1.0, 1.0],
        vec![0.0, 0.0, 0.0],
        vec![0.0, 1.0, -1.0],
    ])?;
    let mut chain = HarChain::new(p.clone(), TropPoint::from_slice(&[0.0, 0.0, 0.0])?, 42)?;
    chain.burn(100);
    let pts = chain.take(2000, 1);
    let inside = pts.iter().filter(|x| p.contains(x, 1e-6)).count();
    println!("{inside}/{} points inside", pts.len());
    let (lo, hi) = pts
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
            (lo.min(x.coords()[1]), hi.max(x.coords()[1]))
        });
    println!("y2 range [{lo:.3}, {hi:.3}]");
    for x in &pts[..5] {
        println!("  {:?}", x.coords());
    }
    Ok(())
}
