//! Self-check of every headline identity, driven by a seed and a set of
//! pinned constants. Corrupting a constant makes the matching item fail.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::family::{
    canonical_det_pair, canonical_skew_pair, embedded_vinnikov, impose_curve_constraints, pfaffian_decomposable,
    pfaffian_indecomposable, selfadjoint_pfaffian_decomposable, selfadjoint_pfaffian_indecomposable, vinnikov_detrep,
    CoeffMap,
};
use crate::pencil::{pencil_nilpotency, ConstMatrix, Definiteness, Matrix, Pencil};
use crate::reduce::{classify, preserves_pair, random_group_element, Branch, Verdict};
use crate::ring::{convert_curve_form, parse_poly, CurveSpec, GaussianRational, Param, Poly, Var};

type GR = GaussianRational;

/// Constants the checks compare against.
#[derive(Clone, Debug)]
pub struct Fixtures {
    /// `det(vinnikov) = c·(x³ - yz² + αxy² + βy³)`.
    pub vinnikov_constant: GR,
    /// `pf = sign·F_λ` for both pfaffian families.
    pub pfaffian_sign: i8,
    /// The five solved entries, as printed.
    pub substitutions: Vec<(Var, &'static str)>,
    /// The `y³` coefficient of the general pfaffian, as printed.
    pub y3_relation: &'static str,
    /// The quadratic relation left after the first elimination, as printed.
    pub reduced_relation: &'static str,
    pub nilpotency_order: usize,
    /// `det = c·F_λ²` for the self-adjoint 6×6 families.
    pub selfadjoint_constant: GR,
    pub zero_diagonal: BTreeSet<usize>,
    /// `t_λ - t_AB` as a polynomial in `l`.
    pub bridge_shift: &'static str,
    pub bridge_lambda: GR,
    /// λ-form points; the expected verdict is `(t, |s|)`.
    pub bridge_points: Vec<(GR, GR)>,
    pub trials: usize,
}

impl Default for Fixtures {
    fn default() -> Fixtures {
        Fixtures {
            vinnikov_constant: GR::one(),
            pfaffian_sign: -1,
            substitutions: vec![
                (Var::C(3, 6), "-1"),
                (Var::C(2, 6), "-c35"),
                (Var::C(2, 5), "-1 - l - c16 - c34"),
                (
                    Var::C(1, 4),
                    "c16 + c16^2 + c34 + c16*c34 + c34^2 + 2*c24*c35 + c16*c35^2 - c34*c35^2 - c23*c45 \
                     - c13*c46 + c23*c35*c46 - c12*c56 + c13*c35*c56 + l*(1 + c16 + c34)",
                ),
                (Var::C(1, 5), "-c24 - c16*c35 + c34*c35 - c23*c46 - c13*c56"),
            ],
            y3_relation: "c14*c26*c35 - c14*c25*c36 - c13*c26*c45 + c12*c36*c45 \
                          + c16*(c25*c34 - c24*c35 + c23*c45) + c13*c25*c46 - c12*c35*c46 \
                          - c15*(c26*c34 - c24*c36 + c23*c46) + c14*c23*c56 - c13*c24*c56 + c12*c34*c56",
            reduced_relation: "c15^2 - 8*c16^3 - c12*c45 - l - l^2 - 8*c16^2*(1 + l) - 2*c16*(1 + 3*l + l^2)",
            nilpotency_order: 3,
            selfadjoint_constant: GR::from_int(-1),
            zero_diagonal: [4, 5, 6].into(),
            bridge_shift: "(1 + l)/3",
            bridge_lambda: GR::from_frac(13, 4),
            bridge_points: vec![
                (GR::from_int(4), GR::from_int(3)),
                (GR::from_int(4), GR::from_int(-3)),
                (GR::from_int(1), GR::zero()),
            ],
            trials: 50,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ItemReport {
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub seed: u64,
    pub items: Vec<ItemReport>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            let status = if item.passed { "PASS" } else { "FAIL" };
            write!(f, "[{status}] {:>2} {}", item.index, item.name)?;
            if !item.detail.is_empty() {
                write!(f, ": {}", item.detail)?;
            }
            writeln!(f)?;
        }
        let passed = self.items.iter().filter(|i| i.passed).count();
        write!(f, "{passed}/{} passed (seed {})", self.items.len(), self.seed)
    }
}

type Check = fn(&Fixtures, u64) -> Result<(), String>;

pub const ITEMS: [(&str, Check); 11] = [
    ("vinnikov determinant identity", check_vinnikov),
    ("pfaffian family identities", check_pfaffians),
    ("curve constraint system", check_constraints),
    ("reduced quadratic relation", check_reduced_relation),
    ("group law", check_group_law),
    ("pfaffian transformation law", check_pfaffian_law),
    ("classification retraction", check_retraction),
    ("block swap", check_block_swap),
    ("nilpotency orders", check_nilpotency),
    ("self-adjoint families", check_selfadjoint),
    ("cross-form bridge", check_bridge),
];

pub fn run(seed: u64, fixtures: &Fixtures) -> Report {
    let items = ITEMS
        .iter()
        .enumerate()
        .map(|(k, (name, check))| {
            let outcome = check(fixtures, seed.wrapping_add(1000 * k as u64));
            ItemReport { index: k + 1, name, passed: outcome.is_ok(), detail: outcome.err().unwrap_or_default() }
        })
        .collect();
    Report { seed, items }
}

fn lib<T>(r: Result<T, Error>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn poly(text: &str) -> Result<Poly, String> {
    lib(parse_poly(text))
}

fn symbolic_point() -> (Poly, Poly) {
    (Poly::var(Var::T), Poly::var(Var::S))
}

fn lambda_symbolic() -> CurveSpec {
    CurveSpec::lambda(Param::Symbolic)
}

fn f_lambda() -> Poly {
    parse_poly("y*z^2 - x^3 + (1 + l)*x^2*y - l*x*y^2").expect("valid")
}

fn check_vinnikov(fx: &Fixtures, _: u64) -> Result<(), String> {
    let spec = CurveSpec::ab(Param::Symbolic, Param::Symbolic);
    let (t, s) = symbolic_point();
    let det = lib(vinnikov_detrep(&spec, &t, &s))?.determinant();
    let target = poly("x^3 - y*z^2 + a*x*y^2 + b*y^3")?.scale(&fx.vinnikov_constant);
    ensure(spec.poly_equal(&det, &target), || format!("det = {}", spec.normalize(&det).render()))
}

fn check_pfaffians(fx: &Fixtures, _: u64) -> Result<(), String> {
    let spec = lambda_symbolic();
    let target = f_lambda().scale(&GR::from_int(fx.pfaffian_sign as i64));
    let (t, s) = symbolic_point();
    let pf = lib(lib(pfaffian_decomposable(&spec, &t, &s))?.pfaffian())?;
    ensure(spec.poly_equal(&pf, &target), || "decomposable family".into())?;
    for root in ["0", "1", "l"] {
        let pf = lib(lib(pfaffian_indecomposable(&spec, &poly(root)?))?.pfaffian())?;
        ensure(spec.poly_equal(&pf, &target), || format!("indecomposable family at t = {root}"))?;
    }
    Ok(())
}

fn check_constraints(fx: &Fixtures, _: u64) -> Result<(), String> {
    let cc = lib(impose_curve_constraints(&lambda_symbolic()))?;
    ensure(cc.substitutions.len() == fx.substitutions.len(), || "number of solved entries".into())?;
    for (v, text) in &fx.substitutions {
        let expected = poly(text)?;
        ensure(cc.get(*v) == Some(&expected), || format!("{} = {}", v.name(), cc.get(*v).map(Poly::render).unwrap_or_default()))?;
    }
    let y3 = poly(fx.y3_relation)?;
    ensure(cc.y3_coefficient == y3, || format!("y^3 coefficient {}", cc.y3_coefficient.render()))?;
    let restricted = y3.substitute(&cc.substitution_map());
    ensure(restricted == cc.residual, || "y^3 relation after the substitutions".into())
}

fn check_reduced_relation(fx: &Fixtures, _: u64) -> Result<(), String> {
    let relation = poly(fx.reduced_relation)?;
    // the y³ coefficient on the reduced shape is the printed relation up to sign
    let shape = CoeffMap::new()
        .with(1, 2, Poly::var(Var::C(1, 2)))
        .with(1, 4, poly("3*c16^2 + l + 2*c16*(1 + l)")?)
        .with(1, 5, Poly::var(Var::C(1, 5)))
        .with(1, 6, Poly::var(Var::C(1, 6)))
        .with(2, 4, poly("-c15")?)
        .with(2, 5, poly("-1 - l - 2*c16")?)
        .with(3, 4, Poly::var(Var::C(1, 6)))
        .with(3, 6, Poly::int(-1))
        .with(4, 5, Poly::var(Var::C(4, 5)));
    let y3 = lib(impose_curve_constraints(&lambda_symbolic()))?.y3_coefficient.substitute(&shape.assignment());
    ensure(y3 == relation || y3 == -&relation, || format!("y^3 coefficient on the reduced shape: {}", y3.render()))?;
    let subs = BTreeMap::from([
        (Var::C(1, 6), poly("(t - 1 - l)/2")?),
        (Var::C(1, 5), Poly::var(Var::S)),
        (Var::C(1, 2), Poly::zero()),
    ]);
    let reduced = relation.substitute(&subs);
    let expected = poly("s^2 - t*(t - 1)*(t - l)")?;
    ensure(reduced == expected, || format!("relation becomes {}", reduced.render()))
}

fn check_group_law(fx: &Fixtures, seed: u64) -> Result<(), String> {
    let mut branches = BTreeSet::new();
    for k in 0..2 * fx.trials as u64 {
        let g = random_group_element(seed + k, 5);
        branches.insert(g.branch == Branch::First);
        ensure(preserves_pair(&g.realized), || format!("element {k} does not preserve the pair"))?;
        ensure(g.realized.det().is_one(), || format!("element {k} has det {}", g.realized.det()))?;
    }
    ensure(branches.len() == 2, || "only one branch sampled".into())?;
    for k in 0..fx.trials as u64 {
        let g = random_group_element(seed + 2 * k, 5);
        let h = random_group_element(seed + 2 * k + 1, 5);
        ensure(preserves_pair(&g.realized.mul(&h.realized)), || format!("product {k} leaves the group"))?;
    }
    Ok(())
}

fn random_gr(rng: &mut ChaCha8Rng, bound: i64) -> GR {
    GR::from_frac(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

fn random_skew(rng: &mut ChaCha8Rng, n: usize) -> ConstMatrix {
    let upper: Vec<GR> = (0..n * n).map(|_| random_gr(rng, 6)).collect();
    Matrix::from_fn(n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => upper[i * n + j].clone(),
        std::cmp::Ordering::Greater => -&upper[j * n + i],
        std::cmp::Ordering::Equal => GR::zero(),
    })
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> ConstMatrix {
    Matrix::from_fn(n, |_, _| random_gr(rng, 6))
}

fn check_pfaffian_law(fx: &Fixtures, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..2 * fx.trials {
        let s = random_skew(&mut rng, 6);
        let mut m = random_matrix(&mut rng, 6);
        while m.det().is_zero() {
            m = random_matrix(&mut rng, 6);
        }
        let pf = lib(s.pf())?;
        ensure(&pf * &pf == s.det(), || format!("trial {k}: pf^2 != det"))?;
        let moved = m.mul(&s).mul(&m.transpose());
        ensure(lib(moved.pf())? == &m.det() * &pf, || format!("trial {k}: pf(M S M^t) != det(M) pf(S)"))?;
    }
    Ok(())
}

fn check_retraction(fx: &Fixtures, seed: u64) -> Result<(), String> {
    let decomposable_lambda = GR::from_frac(13, 4);
    let spec = CurveSpec::lambda(Param::Value(decomposable_lambda.clone()));
    let mut cases = vec![(lib(pfaffian_decomposable(&spec, &Poly::int(4), &Poly::int(3)))?, decomposable_lambda)];
    let two = GR::from_int(2);
    let spec2 = CurveSpec::lambda(Param::Value(two.clone()));
    for t in 0..3 {
        cases.push((lib(pfaffian_indecomposable(&spec2, &Poly::int(t)))?, two.clone()));
    }
    let mut verdicts = Vec::new();
    for (case, (pencil, lambda)) in cases.iter().enumerate() {
        let expected = lib(classify(pencil, lambda))?.verdict;
        for k in 0..fx.trials as u64 {
            let g = random_group_element(seed + 100 * case as u64 + k, 4);
            let moved = lib(pencil.apply_congruence(&g.realized))?;
            let got = lib(classify(&moved, lambda))?.verdict;
            ensure(got == expected, || format!("case {case}, trial {k}: {got:?} != {expected:?}"))?;
        }
        verdicts.push(expected);
    }
    ensure(verdicts[0] == Verdict::Decomposable { t: GR::from_int(4), s: GR::from_int(3) }, || {
        format!("decomposable verdict {:?}", verdicts[0])
    })?;
    for (a, va) in verdicts.iter().enumerate() {
        for vb in &verdicts[a + 1..] {
            ensure(va != vb, || format!("{va:?} repeated"))?;
        }
    }
    Ok(())
}

fn check_block_swap(fx: &Fixtures, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (z, id) = (ConstMatrix::zeros(3), ConstMatrix::identity(3));
    let swap = Matrix::from_blocks(&z, &id, &id, &z);
    for k in 0..fx.trials.min(20) {
        let a = random_matrix(&mut rng, 3);
        let pencil = lib(Pencil::from_const(&a, &z, &z, None))?;
        let moved = lib(pencil.block_embed().apply_congruence(&swap))?;
        let expected = Matrix::from_blocks(&z, &a.transpose().scale(&GR::from_int(-1)), &a, &z);
        ensure(moved.ax == expected.to_poly(), || format!("trial {k}"))?;
    }
    Ok(())
}

fn check_nilpotency(fx: &Fixtures, _: u64) -> Result<(), String> {
    let (id, n) = canonical_det_pair();
    let (ji, jn) = canonical_skew_pair();
    for (name, order) in [("3x3", pencil_nilpotency(&id, &n)), ("6x6", pencil_nilpotency(&ji, &jn))] {
        let order = lib(order)?;
        ensure(order == fx.nilpotency_order, || format!("{name} pair has order {order}"))?;
    }
    Ok(())
}

fn random_real_point(rng: &mut ChaCha8Rng) -> [GR; 3] {
    loop {
        let p = [random_gr(rng, 9), random_gr(rng, 9), random_gr(rng, 9)];
        if p.iter().any(|c| !c.is_zero()) {
            return p;
        }
    }
}

fn check_selfadjoint(fx: &Fixtures, seed: u64) -> Result<(), String> {
    let spec = lambda_symbolic();
    let (t, s) = symbolic_point();
    let f2 = f_lambda().pow(2).scale(&fx.selfadjoint_constant);
    let dec = lib(selfadjoint_pfaffian_decomposable(&spec, &t, &s))?;
    let twisted = spec.clone().twisted();
    ensure(twisted.poly_equal(&dec.determinant(), &f2), || "decomposable determinant".into())?;
    let mut families = vec![("decomposable", dec)];
    for root in ["0", "1", "l"] {
        let ind = lib(selfadjoint_pfaffian_indecomposable(&spec, &poly(root)?))?;
        ensure(ind.determinant() == f2, || format!("indecomposable determinant at t = {root}"))?;
        families.push(("indecomposable", ind));
    }
    for (name, p) in &families {
        ensure(p.is_self_adjoint(), || format!("{name} family is not self-adjoint"))?;
        let witness = lib(p.zero_diagonal_witness())?;
        ensure(witness.is_superset(&fx.zero_diagonal), || format!("{name} witness {witness:?}"))?;
    }
    // numeric members: -1 = 2·1·(2 - 5/2) and the root t = 1 of λ = 2
    let numeric = [
        lib(selfadjoint_pfaffian_decomposable(
            &CurveSpec::lambda(Param::Value(GR::from_frac(5, 2))),
            &Poly::int(2),
            &Poly::int(1),
        ))?,
        lib(selfadjoint_pfaffian_indecomposable(&CurveSpec::lambda(Param::value(2)), &Poly::int(1)))?,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for p in &numeric {
        for _ in 0..2 * fx.trials {
            let point = random_real_point(&mut rng);
            let d = lib(p.is_definite_at(&point))?;
            ensure(d == Definiteness::None, || format!("definite ({d:?}) at {point:?}"))?;
        }
    }
    Ok(())
}

fn check_bridge(fx: &Fixtures, _: u64) -> Result<(), String> {
    let symbolic = lambda_symbolic();
    let conversion = lib(convert_curve_form(&Param::Symbolic))?;
    ensure(conversion.identity_holds(&symbolic), || "F_AB(x, y, z) != -F_l(x + k y, y, z)".into())?;
    ensure(conversion.shift == poly(fx.bridge_shift)?, || format!("shift {}", conversion.shift.render()))?;
    let lambda = &fx.bridge_lambda;
    let spec = CurveSpec::lambda(Param::Value(lambda.clone()));
    for (t, s) in &fx.bridge_points {
        let p = lib(embedded_vinnikov(&spec, &Poly::constant(t.clone()), &Poly::constant(s.clone())))?;
        let verdict = lib(classify(&p, lambda))?.verdict;
        let s_abs = if s.is_positive() || s.is_zero() { s.clone() } else { -s };
        let expected = Verdict::Decomposable { t: t.clone(), s: s_abs };
        ensure(verdict == expected, || format!("at ({t}, {s}): {verdict:?}"))?;
        let Verdict::Decomposable { t, s } = &verdict else { unreachable!() };
        let rhs = &(t * &(t - &GR::one())) * &(t - lambda);
        ensure(&s.pow(2) == &rhs, || format!("({t}, {s}) off the curve"))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_fixtures_pass() {
        let report = run(0, &Fixtures::default());
        assert!(report.all_passed(), "{report}");
        assert_eq!(report.items.len(), 11);
    }

    #[test]
    fn reports_are_reproducible() {
        let fx = Fixtures { trials: 5, ..Fixtures::default() };
        assert_eq!(run(7, &fx), run(7, &fx));
    }

    #[test]
    fn corrupted_fixtures_fail_their_item() {
        let cases: Vec<(usize, Fixtures)> = vec![
            (1, Fixtures { vinnikov_constant: GR::from_int(-1), ..Fixtures::default() }),
            (2, Fixtures { pfaffian_sign: 1, ..Fixtures::default() }),
            (3, Fixtures { y3_relation: "c12*c34*c56", ..Fixtures::default() }),
            (4, Fixtures { reduced_relation: "c15^2 - 8*c16^3", ..Fixtures::default() }),
            (9, Fixtures { nilpotency_order: 2, ..Fixtures::default() }),
            (10, Fixtures { selfadjoint_constant: GR::one(), ..Fixtures::default() }),
            (11, Fixtures { bridge_shift: "(1 + l)/2", ..Fixtures::default() }),
        ];
        for (item, fx) in cases {
            let fx = Fixtures { trials: 3, ..fx };
            let report = run(0, &fx);
            let failed: Vec<usize> = report.items.iter().filter(|i| !i.passed).map(|i| i.index).collect();
            assert_eq!(failed, vec![item], "{report}");
        }
    }
}
