//! The group fixing the canonical pair, built from its triangular blocks.

use detrep::reduce::{complete_group_element, preserves_pair, random_group_element, Branch, TriangleBlock};
use detrep::ring::GaussianRational;

fn main() -> detrep::Result<()> {
    let q = |n: i64, d: i64| GaussianRational::from_frac(n, d);
    let p1 = TriangleBlock::new(q(2, 1), q(1, 1), q(0, 1));
    let p2 = TriangleBlock::new(q(0, 1), q(-1, 2), q(3, 1));
    let p3 = TriangleBlock::new(q(1, 1), q(0, 1), q(0, 1));
    for branch in [Branch::First, Branch::Second] {
        let g = complete_group_element(p1.clone(), p2.clone(), p3.clone(), branch)?;
        println!("{branch:?}: det = {}, preserves pair = {}", g.realized.det(), preserves_pair(&g.realized));
    }
    let singular = TriangleBlock::new(q(0, 1), q(1, 1), q(0, 1));
    if let Err(e) = complete_group_element(singular, p2, p3, Branch::First) {
        println!("p11 = 0: {e}");
    }
    let g = random_group_element(7, 3);
    let round = g.compose(&g.inverse());
    println!("random element composed with its inverse is the identity: {}", round.is_identity());
    Ok(())
}
