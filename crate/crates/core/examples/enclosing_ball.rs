//! Smallest enclosing tropical balls, against the half-diameter lower bound.
use tropiball::balls::{min_enclosing, min_enclosing_lower_bound};
use tropiball::tropical::TropPolytope;

fn main() -> tropiball::Result<()> {
    let cases: [(&str, Vec<Vec<f64>>); 4] = [
        (
            "unit triangle",
            vec![
                vec![0.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.0, 1.0],
            ],
        ),
        (
            "polytrope",
            vec![
                vec![0.0, 0.0, 0.0],
                vec![0.0, 2.0, 5.0],
                vec![0.0, 3.0, 1.0],
            ],
        ),
        (
            "four vertices",
            vec![
                vec![0.0, -2.0, 3.0],
                vec![0.0, -2.0, 5.0],
                vec![0.0, 2.0, 2.0],
                vec![0.0, 1.0, 0.0],
            ],
        ),
        (
            "gap in R^4",
            vec![
                vec![0.0, 0.0, 0.0, 0.0],
                vec![0.0, 2.0, 5.0, 0.0],
                vec![0.0, 3.0, 1.0, 0.0],
                vec![0.0, 2.0, 5.0, 5.0],
            ],
        ),
    ];
    for (name, rows) in cases {
        let p = TropPolytope::from_rows(&rows)?;
        let b = min_enclosing(&p)?;
        println!(
            "{name:>14}: r = {:.4}  lower bound = {:.4}  center = {:?}",
            b.radius(),
            min_enclosing_lower_bound(&p),
            b.center().coords()
        );
    }
    Ok(())
}
