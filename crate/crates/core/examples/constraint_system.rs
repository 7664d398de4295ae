//! Solving pf(x J_I + z J_N + y C) = ±F for the skew matrix C.

use detrep::family::{impose_curve_constraints, pfaffian_decomposable, satisfies_curve, CoeffMap};
use detrep::ring::{CurveSpec, GaussianRational, Param, Poly};

fn main() -> detrep::Result<()> {
    let curve = CurveSpec::lambda(Param::Symbolic);
    let sys = impose_curve_constraints(&curve)?;
    println!("pf = {} F", sys.sign);
    for (var, value) in &sys.substitutions {
        println!("  {} = {value}", var.name());
    }
    println!("y^3 coefficient: {}", sys.y3_coefficient);
    println!("residual after substitution: {}", sys.residual);

    let lambda = GaussianRational::from_frac(13, 4);
    let numeric = CurveSpec::lambda(Param::value(lambda));
    let member = pfaffian_decomposable(&numeric, &Poly::int(4), &Poly::int(3))?;
    let full = CoeffMap::from_matrix(&member.ay);
    let mut free = full.clone();
    for (i, j) in [(3, 6), (2, 6), (2, 5), (1, 5), (1, 4)] {
        free.set(i, j, Poly::zero());
    }
    let completed = impose_curve_constraints(&numeric)?.complete(&free);
    println!("member rebuilt from its free entries: {}", completed == full);
    println!("satisfies the curve: {}", satisfies_curve(&numeric, &completed)?);
    Ok(())
}
