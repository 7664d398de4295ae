//! Acceptance suite: one PASS/FAIL line per criterion, exact comparisons only.

use std::collections::BTreeMap;
use std::process::ExitCode;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use detrep::family::{
    canonical_det_pair, canonical_skew_pair, general_pfaffian_family, impose_curve_constraints, pfaffian_decomposable,
    pfaffian_indecomposable, selfadjoint_pfaffian_decomposable, selfadjoint_pfaffian_indecomposable, vinnikov_detrep,
    CoeffMap,
};
use detrep::pencil::{pencil_nilpotency, ConstMatrix, Definiteness, Matrix, Pencil, PolyMatrix};
use detrep::reduce::{classify, random_group_element, Branch, Verdict};
use detrep::ring::{convert_curve_form, parse_poly, CurveSpec, GaussianRational as GR, Param, Poly, Var};

type Outcome = Result<(), String>;

fn p(text: &str) -> Poly {
    parse_poly(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Pfaffian by expansion along the first row, without memoization.
fn naive_pf(m: &PolyMatrix) -> Poly {
    fn rec(m: &PolyMatrix, idx: &[usize]) -> Poly {
        if idx.is_empty() {
            return Poly::one();
        }
        let first = idx[0];
        let mut acc = Poly::zero();
        for (k, &j) in idx.iter().enumerate().skip(1) {
            let rest: Vec<usize> = idx.iter().copied().filter(|&r| r != first && r != j).collect();
            let term = &m[(first, j)] * &rec(m, &rest);
            acc = if k % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        acc
    }
    rec(m, &(0..m.n()).collect::<Vec<_>>())
}

fn sarrus(m: &PolyMatrix) -> Poly {
    let e = |i: usize, j: usize| &m[(i, j)];
    let plus = &(&(&(e(0, 0) * e(1, 1)) * e(2, 2)) + &(&(e(0, 1) * e(1, 2)) * e(2, 0))) + &(&(e(0, 2) * e(1, 0)) * e(2, 1));
    let minus = &(&(&(e(0, 2) * e(1, 1)) * e(2, 0)) + &(&(e(0, 0) * e(1, 2)) * e(2, 1))) + &(&(e(0, 1) * e(1, 0)) * e(2, 2));
    &plus - &minus
}

fn f_lambda() -> Poly {
    p("y*z^2 - x^3 + (1+l)*x^2*y - l*x*y^2")
}

fn lam(text: &str) -> CurveSpec {
    CurveSpec::lambda(Param::parse(text).unwrap())
}

fn rnd(rng: &mut ChaCha8Rng) -> GR {
    GR::from_frac(rng.gen_range(-7..=7), rng.gen_range(1..=7))
}

fn criterion_1() -> Outcome {
    let spec = CurveSpec::ab(Param::Symbolic, Param::Symbolic);
    let pencil = vinnikov_detrep(&spec, &p("t"), &p("s")).map_err(|e| e.to_string())?;
    let det = sarrus(&pencil.matrix());
    check(spec.poly_equal(&det, &p("-y*z^2 + x^3 + a*x*y^2 + b*y^3")), || format!("det = {}", det.render()))?;
    check(spec.poly_equal(&pencil.determinant(), &det), || "library determinant disagrees with Sarrus".into())
}

fn criterion_2() -> Outcome {
    let spec = lam("symbolic");
    let dec = pfaffian_decomposable(&spec, &p("t"), &p("s")).unwrap();
    let pf = naive_pf(&dec.matrix());
    check(spec.poly_equal(&pf, &-f_lambda()), || format!("decomposable pf = {}", pf.render()))?;
    for root in ["0", "1", "l"] {
        let ind = pfaffian_indecomposable(&spec, &p(root)).unwrap();
        check(naive_pf(&ind.matrix()) == -f_lambda(), || format!("indecomposable pf at t = {root}"))?;
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let cc = impose_curve_constraints(&lam("symbolic")).map_err(|e| e.to_string())?;
    let printed = [
        (Var::C(3, 6), "-1"),
        (Var::C(2, 6), "-c35"),
        (Var::C(2, 5), "-1-l-c16-c34"),
        (
            Var::C(1, 4),
            "c16 + c16^2 + c34 + c16*c34 + c34^2 + 2*c24*c35 + c16*c35^2 - c34*c35^2 - c23*c45 - c13*c46 \
             + c23*c35*c46 - c12*c56 + c13*c35*c56 + l*(1 + c16 + c34)",
        ),
        (Var::C(1, 5), "-c24 - c16*c35 + c34*c35 - c23*c46 - c13*c56"),
    ];
    for (v, text) in printed {
        check(cc.get(v) == Some(&p(text)), || format!("{} differs", v.name()))?;
    }
    let printed_y3 = p("c14*c26*c35 - c14*c25*c36 - c13*c26*c45 + c12*c36*c45 + c16*(c25*c34 - c24*c35 + c23*c45) \
                        + c13*c25*c46 - c12*c35*c46 - c15*(c26*c34 - c24*c36 + c23*c46) + c14*c23*c56 \
                        - c13*c24*c56 + c12*c34*c56");
    // the y³ coefficient read off an independently expanded pfaffian
    let general = general_pfaffian_family(&lam("symbolic"), &CoeffMap::symbolic()).unwrap();
    let pf = naive_pf(&general.matrix());
    check(pf.coeff_xyz(0, 3, 0) == printed_y3, || "y^3 coefficient of the pfaffian".into())?;
    let subs: BTreeMap<Var, Poly> = printed.iter().map(|(v, t)| (*v, p(t))).collect();
    let rest = &pf.substitute(&subs) + &f_lambda();
    let expected_rest = &p("y^3") * &printed_y3.substitute(&subs);
    check(rest == expected_rest, || "pf + F is not a multiple of y^3 after the substitutions".into())
}

fn criterion_4() -> Outcome {
    let relation = p("c15^2 - 8*c16^3 - c12*c45 - l - l^2 - 8*c16^2*(1 + l) - 2*c16*(1 + 3*l + l^2)");
    let subs = BTreeMap::from([(Var::C(1, 6), p("(t-1-l)/2")), (Var::C(1, 5), p("s")), (Var::C(4, 5), Poly::zero())]);
    let got = relation.substitute(&subs);
    check(got == p("s^2 - t*(t-1)*(t-l)"), || format!("got {}", got.render()))
}

fn criterion_5() -> Outcome {
    let (ji, jn) = canonical_skew_pair();
    let preserves = |m: &ConstMatrix| m.mul(&ji).mul(&m.transpose()) == ji && m.mul(&jn).mul(&m.transpose()) == jn;
    let mut branches = [false, false];
    for seed in 500..600 {
        let g = random_group_element(seed, 6);
        branches[(g.branch == Branch::Second) as usize] = true;
        check(preserves(&g.realized), || format!("seed {seed} breaks the pair"))?;
        check(g.realized.det() == GR::one(), || format!("seed {seed}: det {}", g.realized.det()))?;
    }
    check(branches == [true, true], || "a branch was never sampled".into())?;
    for k in 0..50 {
        let (g, h) = (random_group_element(700 + k, 6), random_group_element(800 + k, 6));
        check(preserves(&g.realized.mul(&h.realized)), || format!("product {k}"))?;
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for k in 0..100 {
        let vals: Vec<GR> = (0..15).map(|_| rnd(&mut rng)).collect();
        let mut it = vals.into_iter();
        let mut c = CoeffMap::new();
        for i in 1..=6u8 {
            for j in i + 1..=6 {
                c.set(i, j, Poly::constant(it.next().unwrap()));
            }
        }
        let s = c.skew_matrix().to_const().unwrap();
        let m = loop {
            let m: ConstMatrix = Matrix::from_fn(6, |_, _| rnd(&mut rng));
            if !m.det().is_zero() {
                break m;
            }
        };
        let pf = naive_pf(&s.to_poly()).as_constant().unwrap();
        check(s.pf().unwrap() == pf, || format!("trial {k}: library pf"))?;
        check(&pf * &pf == s.det(), || format!("trial {k}: pf^2 != det"))?;
        let moved = m.mul(&s).mul(&m.transpose());
        let lhs = naive_pf(&moved.to_poly()).as_constant().unwrap();
        check(lhs == &m.det() * &pf, || format!("trial {k}: transformation law"))?;
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let l1 = GR::from_frac(13, 4);
    let l2 = GR::from_int(2);
    let mut cases = vec![(pfaffian_decomposable(&lam("13/4"), &Poly::int(4), &Poly::int(3)).unwrap(), l1.clone())];
    for t in 0..3 {
        cases.push((pfaffian_indecomposable(&lam("2"), &Poly::int(t)).unwrap(), l2.clone()));
    }
    let mut verdicts = Vec::new();
    for (n, (pencil, lambda)) in cases.iter().enumerate() {
        let base = classify(pencil, lambda).map_err(|e| e.to_string())?.verdict;
        for k in 0..50 {
            let g = random_group_element(10_000 + 97 * n as u64 + k, 5);
            let moved = pencil.apply_congruence(&g.realized).unwrap();
            let got = classify(&moved, lambda).map_err(|e| format!("case {n} trial {k}: {e}"))?.verdict;
            check(got == base, || format!("case {n} trial {k}: {got:?} vs {base:?}"))?;
        }
        verdicts.push(base);
    }
    check(verdicts[0] == Verdict::Decomposable { t: GR::from_int(4), s: GR::from_int(3) }, || {
        format!("{:?}", verdicts[0])
    })?;
    for (t, v) in verdicts[1..].iter().enumerate() {
        check(matches!(v, Verdict::Indecomposable { t: got, .. } if *got == GR::from_int(t as i64)), || {
            format!("{v:?}")
        })?;
    }
    for i in 0..verdicts.len() {
        for j in i + 1..verdicts.len() {
            check(verdicts[i] != verdicts[j], || format!("verdicts {i} and {j} coincide"))?;
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let z = ConstMatrix::zeros(3);
    let id = ConstMatrix::identity(3);
    let swap = Matrix::from_blocks(&z, &id, &id, &z);
    for k in 0..20 {
        let a: ConstMatrix = Matrix::from_fn(3, |_, _| rnd(&mut rng));
        let pencil = Pencil::from_const(&z, &a, &z, None).unwrap().block_embed();
        let moved = pencil.apply_congruence(&swap).unwrap().ay.to_const().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let ok = moved[(i, j)].is_zero()
                    && moved[(i + 3, j + 3)].is_zero()
                    && moved[(i, j + 3)] == -&a[(j, i)]
                    && moved[(i + 3, j)] == a[(i, j)];
                check(ok, || format!("trial {k}, entry ({i}, {j})"))?;
            }
        }
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let pairs = [canonical_det_pair(), canonical_skew_pair()];
    for (ax, az) in &pairs {
        let order = pencil_nilpotency(ax, az).map_err(|e| e.to_string())?;
        check(order == 3, || format!("{}x{} pair: order {order}", ax.n(), ax.n()))?;
        let n = ax.inverse().unwrap().mul(az);
        check(!n.pow(2).is_zero() && n.pow(3).is_zero(), || "direct powers disagree".into())?;
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    let spec = lam("symbolic");
    let f2 = f_lambda().pow(2);
    let dec = selfadjoint_pfaffian_decomposable(&spec, &p("t"), &p("s")).unwrap();
    let twisted = spec.clone().twisted();
    check(twisted.poly_equal(&dec.determinant(), &-&f2), || "decomposable det".into())?;
    let ind = selfadjoint_pfaffian_indecomposable(&spec, &p("l")).unwrap();
    check(ind.determinant() == -&f2, || "indecomposable det".into())?;
    for (name, pencil) in [("decomposable", &dec), ("indecomposable", &ind)] {
        check(pencil.is_self_adjoint(), || format!("{name} not self-adjoint"))?;
        let w = pencil.zero_diagonal_witness().unwrap();
        check([4, 5, 6].iter().all(|k| w.contains(k)), || format!("{name} witness {w:?}"))?;
    }
    let numeric = [
        selfadjoint_pfaffian_decomposable(&lam("5/2"), &Poly::int(2), &Poly::int(1)).unwrap(),
        selfadjoint_pfaffian_indecomposable(&lam("2"), &Poly::int(0)).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for pencil in &numeric {
        for _ in 0..100 {
            let point = [rnd(&mut rng), rnd(&mut rng), rnd(&mut rng)];
            if point.iter().all(|c| c.is_zero()) {
                continue;
            }
            let m = pencil.evaluate(&point).unwrap();
            check((0..6).any(|k| m[(k, k)].is_zero()), || format!("no zero diagonal at {point:?}"))?;
            let d = pencil.is_definite_at(&point).unwrap();
            check(d == Definiteness::None, || format!("{d:?} at {point:?}"))?;
        }
    }
    Ok(())
}

fn criterion_11() -> Outcome {
    let conversion = convert_curve_form(&Param::Symbolic).unwrap();
    let composed = p("-y*z^2 + x^3 + a*x*y^2 + b*y^3")
        .substitute(&BTreeMap::from([(Var::Alpha, conversion.alpha.clone()), (Var::Beta, conversion.beta.clone())]));
    let pulled = f_lambda().substitute_one(Var::X, &p("x + (1+l)/3*y"));
    check(composed == -&pulled, || "F_AB(x, y, z) != -F_l(x + (1+l)y/3, y, z)".into())?;

    let lambda = GR::from_frac(13, 4);
    let spec = lam("13/4");
    let f = f_lambda().substitute_one(Var::Lambda, &Poly::constant(lambda.clone()));
    check(spec.curve_poly() == f, || "numeric F_l".into())?;
    let conversion = convert_curve_form(&Param::Value(lambda.clone())).unwrap();
    let ab = conversion.ab_spec().unwrap();
    let k = p("17/12");
    let shift_back = [[Poly::one(), -&k, Poly::zero()], [Poly::zero(), Poly::one(), Poly::zero()], [
        Poly::zero(),
        Poly::zero(),
        Poly::one(),
    ]];
    // frozen correspondence: t_l = t_ab + (1+l)/3, verdict s = |s|
    for (t_l, s_l, s_verdict) in [(4, 3, 3), (4, -3, 3), (1, 0, 0)] {
        let t_ab = &Poly::int(t_l) - &k;
        let small = vinnikov_detrep(&ab, &t_ab, &Poly::int(s_l)).map_err(|e| e.to_string())?;
        let moved = small.change_coordinates(&shift_back).with_curve(Some(spec.clone()));
        check(moved.determinant() == -spec.curve_poly(), || "shifted 3x3 determinant".into())?;
        let six = moved.block_embed().canonicalize_embed().map_err(|e| e.to_string())?;
        let verdict = classify(&six, &lambda).map_err(|e| e.to_string())?.verdict;
        let expected = Verdict::Decomposable { t: GR::from_int(t_l), s: GR::from_int(s_verdict) };
        check(verdict == expected, || format!("({t_l}, {s_l}): {verdict:?}"))?;
        let (t, s) = (GR::from_int(t_l), GR::from_int(s_verdict));
        check(s.pow(2) == &(&t * &(&t - &GR::one())) * &(&t - &lambda), || "verdict off the curve".into())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("vinnikov determinant identity", criterion_1),
        ("pfaffian identities of both families", criterion_2),
        ("constraint system and y^3 relation", criterion_3),
        ("reduced quadratic relation", criterion_4),
        ("group law", criterion_5),
        ("pfaffian transformation law", criterion_6),
        ("classification retraction", criterion_7),
        ("block swap", criterion_8),
        ("nilpotency orders", criterion_9),
        ("self-adjoint families", criterion_10),
        ("cross-form bridge", criterion_11),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        match f() {
            Ok(()) => println!("PASS {:>2} {name} ({:.2?})", k + 1, start.elapsed()),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {e}", k + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
