//! Self-adjoint pfaffian members and the Kippenhahn pencil x H + y K - z Id.

use detrep::cli::kippenhahn_check;
use detrep::family::{kippenhahn_pencil, selfadjoint_pfaffian_indecomposable};
use detrep::pencil::ConstMatrix;
use detrep::ring::{CurveSpec, GaussianRational, Param, Poly};

fn main() -> detrep::Result<()> {
    let curve = CurveSpec::lambda(Param::value(2));
    let p = selfadjoint_pfaffian_indecomposable(&curve, &Poly::int(1))?;
    println!("self-adjoint: {}", p.is_self_adjoint());
    println!("det = {}", p.determinant());
    println!("zero diagonal on {:?}", p.zero_diagonal_witness()?);
    let q = |n| GaussianRational::from_int(n);
    println!("definiteness at (1, 2, 3): {:?}", p.is_definite_at(&[q(1), q(2), q(3)])?);

    let h = ConstMatrix::from_ints(&[&[1, 0], &[0, -1]]);
    let k = ConstMatrix::from_ints(&[&[0, 1], &[1, 0]]);
    let numerical_range = kippenhahn_pencil(&h, &k)?;
    println!("Kippenhahn polynomial of (H, K): {}", numerical_range.determinant());

    println!("{}", serde_json::to_string_pretty(&kippenhahn_check(1, 25)?).unwrap());
    Ok(())
}
