//! The shift between the Legendre and Weierstrass forms, carried through a representation.

use detrep::family::vinnikov_lambda_form;
use detrep::ring::{convert_curve_form, CurveSpec, GaussianRational, Param, Poly};

fn main() -> detrep::Result<()> {
    for lambda in [GaussianRational::from_int(2), GaussianRational::from_int(3), GaussianRational::from_frac(13, 4)] {
        let conv = convert_curve_form(&Param::value(lambda.clone()))?;
        println!("lambda = {lambda}: alpha = {}, beta = {}, x -> x + ({}) y, sign {}", conv.alpha, conv.beta, conv.shift, conv.sign);
    }
    let curve = CurveSpec::lambda(Param::value(GaussianRational::from_frac(13, 4)));
    let p = vinnikov_lambda_form(&curve, &Poly::int(4), &Poly::int(3))?;
    println!("3x3 at (4, 3): det = {}", p.determinant());
    println!("equals -F: {}", p.determinant() == -curve.curve_poly());
    Ok(())
}
