//! Moving a family member by a random group element and recovering its normal form.

use detrep::family::{embedded_vinnikov, pfaffian_decomposable, pfaffian_indecomposable};
use detrep::reduce::{classify, random_group_element};
use detrep::ring::{CurveSpec, GaussianRational, Param, Poly};

fn main() -> detrep::Result<()> {
    let lambda = GaussianRational::from_frac(13, 4);
    let curve = CurveSpec::lambda(Param::value(lambda.clone()));
    let member = pfaffian_decomposable(&curve, &Poly::int(4), &Poly::int(-3))?;
    for seed in 0..3 {
        let moved = member.apply_congruence(&random_group_element(seed, 4).realized)?;
        let class = classify(&moved, &lambda)?;
        println!("seed {seed}: {}", class.to_json());
    }

    let embedded = embedded_vinnikov(&curve, &Poly::int(4), &Poly::int(3))?;
    println!("embedded 3x3 member: {}", classify(&embedded, &lambda)?.to_json());

    let two = GaussianRational::from_int(2);
    let curve = CurveSpec::lambda(Param::value(two.clone()));
    let member = pfaffian_indecomposable(&curve, &Poly::int(1))?;
    let moved = member.apply_congruence(&random_group_element(11, 3).realized)?;
    println!("indecomposable: {}", classify(&moved, &two)?.to_json());
    Ok(())
}
