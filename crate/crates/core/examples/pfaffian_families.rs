//! Both 6×6 skew pfaffian families over y z^2 = x(x - y)(x - λ y).

use detrep::family::{pfaffian_decomposable, pfaffian_indecomposable};
use detrep::ring::{CurveSpec, GaussianRational, Param, Poly};

fn main() -> detrep::Result<()> {
    let lambda = GaussianRational::from_frac(13, 4);
    let curve = CurveSpec::lambda(Param::value(lambda));
    println!("F = {}", curve.curve_poly());

    let p = pfaffian_decomposable(&curve, &Poly::int(4), &Poly::int(3))?;
    println!("decomposable (4, 3):  pf = {}", p.pfaffian()?);
    let report = p.verify_representation(&curve);
    println!("  det = c F^{} with c = {}, sign {:?}", report.r, report.c.unwrap(), report.sign);

    let curve = CurveSpec::lambda(Param::value(2));
    for t in 0..=2 {
        let p = pfaffian_indecomposable(&curve, &Poly::int(t))?;
        println!("indecomposable t = {t}: pf = {}  nilpotency = {}", p.pfaffian()?, p.nilpotency()?);
    }
    match pfaffian_indecomposable(&curve, &Poly::int(5)) {
        Err(e) => println!("t = 5 rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
