//! The 3×3 determinantal representation of a cubic in Weierstrass form,
//! checked symbolically and at a rational point.

use detrep::family::{vinnikov_antidiag, vinnikov_detrep};
use detrep::ring::{CurveSpec, Param, Poly, Var};

fn main() -> detrep::Result<()> {
    let symbolic = CurveSpec::ab(Param::Symbolic, Param::Symbolic);
    let (t, s) = (Poly::var(Var::T), Poly::var(Var::S));
    let p = vinnikov_detrep(&symbolic, &t, &s)?;
    println!("F        = {}", symbolic.curve_poly());
    println!("det      = {}", p.determinant());
    println!("modulo the curve relation: {}", symbolic.poly_equal(&p.determinant(), &symbolic.curve_poly()));

    // y^2 = x^3 - x + 1 passes through (1, 1)
    let curve = CurveSpec::ab(Param::value(-1), Param::value(1));
    for (name, p) in [
        ("detrep", vinnikov_detrep(&curve, &Poly::int(1), &Poly::int(1))?),
        ("antidiag", vinnikov_antidiag(&curve, &Poly::int(1), &Poly::int(1))?),
    ] {
        let report = p.verify_representation(&curve);
        println!("{name:9} det = {}  matched = {}", p.determinant(), report.matched);
    }
    Ok(())
}
