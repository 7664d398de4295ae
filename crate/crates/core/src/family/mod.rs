//! Constructors for the explicit determinantal and pfaffian families, the
//! general 15-parameter pfaffian family on the canonical pair, and the
//! constraints a pfaffian representation of the curve imposes on it.

mod descriptor;

pub use descriptor::{RepDescriptor, RepKind};

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::pencil::{ConstMatrix, Matrix, Pencil, PolyMatrix};
use crate::ring::{convert_curve_form, upper_pairs, CurveForm, CurveSpec, GaussianRational, Poly, Var};

/// Upper-triangle entries `c_ij`, `1 <= i < j <= 6`, of a skew 6×6 matrix.
/// Missing entries are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoeffMap(BTreeMap<(u8, u8), Poly>);

impl CoeffMap {
    pub fn new() -> CoeffMap {
        CoeffMap::default()
    }

    /// Every `c_ij` set to its own generator.
    pub fn symbolic() -> CoeffMap {
        CoeffMap(upper_pairs().map(|(i, j)| ((i, j), Poly::var(Var::C(i, j)))).collect())
    }

    pub fn get(&self, i: u8, j: u8) -> Poly {
        assert!(1 <= i && i < j && j <= 6, "c{i}{j} is not an upper-triangle index");
        self.0.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: u8, j: u8, value: Poly) {
        assert!(1 <= i && i < j && j <= 6, "c{i}{j} is not an upper-triangle index");
        if value.is_zero() {
            self.0.remove(&(i, j));
        } else {
            self.0.insert((i, j), value);
        }
    }

    pub fn with(mut self, i: u8, j: u8, value: Poly) -> CoeffMap {
        self.set(i, j, value);
        self
    }

    /// Reads the upper triangle of a 6×6 matrix.
    pub fn from_matrix(m: &PolyMatrix) -> CoeffMap {
        assert_eq!(m.n(), 6, "coefficient maps describe 6x6 matrices");
        let mut c = CoeffMap::new();
        for (i, j) in upper_pairs() {
            c.set(i, j, m[(i as usize - 1, j as usize - 1)].clone());
        }
        c
    }

    /// The skew matrix with these upper entries.
    pub fn skew_matrix(&self) -> PolyMatrix {
        Matrix::from_fn(6, |i, j| {
            let (a, b) = (i as u8 + 1, j as u8 + 1);
            match a.cmp(&b) {
                std::cmp::Ordering::Less => self.get(a, b),
                std::cmp::Ordering::Greater => -self.get(b, a),
                std::cmp::Ordering::Equal => Poly::zero(),
            }
        })
    }

    /// The Hermitian matrix with these upper entries (lower = conjugate).
    pub fn hermitian_matrix(&self) -> PolyMatrix {
        Matrix::from_fn(6, |i, j| {
            let (a, b) = (i as u8 + 1, j as u8 + 1);
            match a.cmp(&b) {
                std::cmp::Ordering::Less => self.get(a, b),
                std::cmp::Ordering::Greater => self.get(b, a).conj(),
                std::cmp::Ordering::Equal => Poly::zero(),
            }
        })
    }

    pub fn substitute(&self, subs: &BTreeMap<Var, Poly>) -> CoeffMap {
        CoeffMap(self.0.iter().map(|(k, v)| (*k, v.substitute(subs))).filter(|(_, v)| !v.is_zero()).collect())
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> CoeffMap {
        CoeffMap(self.0.iter().map(|(k, v)| (*k, f(v))).filter(|(_, v)| !v.is_zero()).collect())
    }

    /// Nonzero entries in index order.
    pub fn entries(&self) -> impl Iterator<Item = (&(u8, u8), &Poly)> {
        self.0.iter()
    }

    /// Assignment `c_ij ↦ value` for use with [`Poly::substitute`].
    pub fn assignment(&self) -> BTreeMap<Var, Poly> {
        upper_pairs().map(|(i, j)| (Var::C(i, j), self.get(i, j))).collect()
    }
}

/// `(J_I, J_N)`: upper entries `(1,6) = (2,5) = (3,4) = 1` and `(1,5) = (2,4) = 1`.
pub fn canonical_skew_pair() -> (ConstMatrix, ConstMatrix) {
    let one = Poly::one();
    let ji = CoeffMap::new().with(1, 6, one.clone()).with(2, 5, one.clone()).with(3, 4, one.clone());
    let jn = CoeffMap::new().with(1, 5, one.clone()).with(2, 4, one);
    (ji.skew_matrix().to_const().expect("constant"), jn.skew_matrix().to_const().expect("constant"))
}

/// The 3×3 canonical pair `(Id, N')` with `N'` the strictly upper Jordan block.
pub fn canonical_det_pair() -> (ConstMatrix, ConstMatrix) {
    (ConstMatrix::identity(3), ConstMatrix::from_ints(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]))
}

fn half(p: &Poly) -> Poly {
    p.scale(&GaussianRational::from_frac(1, 2))
}

fn lambda_of(spec: &CurveSpec) -> Result<Poly, Error> {
    match &spec.form {
        CurveForm::Lambda { .. } => Ok(spec.lambda_poly()),
        CurveForm::AB { .. } => Err(Error::PreconditionViolated("this family needs a lambda-form curve".into())),
    }
}

fn ab_of(spec: &CurveSpec) -> Result<(Poly, Poly), Error> {
    match &spec.form {
        CurveForm::AB { .. } => Ok(spec.ab_polys()),
        CurveForm::Lambda { .. } => Err(Error::PreconditionViolated("this family needs an AB-form curve".into())),
    }
}

fn is_symbolic_point(t: &Poly, s: &Poly) -> bool {
    *t == Poly::var(Var::T) && *s == Poly::var(Var::S)
}

/// Accepts the symbolic point `(t, s)` or a point satisfying the curve's relation.
fn check_point(curve: &CurveSpec, t: &Poly, s: &Poly, err: fn(String) -> Error) -> Result<(), Error> {
    curve.check_generators(t)?;
    curve.check_generators(s)?;
    if is_symbolic_point(t, s) || curve.contains_point(t, s) {
        Ok(())
    } else {
        Err(err(format!("(t, s) = ({t}, {s}) on {curve}")))
    }
}

fn check_real(values: &[&Poly]) -> Result<(), Error> {
    for v in values {
        if *v != &v.conj() {
            return Err(Error::NotReal(v.render()));
        }
    }
    Ok(())
}

fn const_pencil_parts(ax: &ConstMatrix, ay: PolyMatrix, az: &ConstMatrix, curve: CurveSpec) -> Result<Pencil, Error> {
    Pencil::new(ax.to_poly(), ay, az.to_poly(), Some(curve))
}

/// The y-matrix `[[t/2, s, α + 3t²/4], [0, -t, -s], [-1, 0, t/2]]`.
fn vinnikov_y(alpha: &Poly, t: &Poly, s: &Poly) -> PolyMatrix {
    let three_quarters = GaussianRational::from_frac(3, 4);
    let corner = alpha + &t.pow(2).scale(&three_quarters);
    Matrix::from_rows(vec![
        vec![half(t), s.clone(), corner],
        vec![Poly::zero(), -t, -s],
        vec![Poly::int(-1), Poly::zero(), half(t)],
    ])
    .expect("3x3")
}

/// `x·Id + z·N' + y·[[t/2, s, α+3t²/4], [0, -t, -s], [-1, 0, t/2]]`; `det = F_AB`
/// modulo `s² = t³ + αt + β`.
pub fn vinnikov_detrep(spec: &CurveSpec, t: &Poly, s: &Poly) -> Result<Pencil, Error> {
    let (alpha, _) = ab_of(spec)?;
    let curve = spec.clone().untwisted();
    check_point(&curve, t, s, Error::PointNotOnCurve)?;
    let (id, n) = canonical_det_pair();
    const_pencil_parts(&id, vinnikov_y(&alpha, t, s), &n, curve)
}

/// The anti-diagonal form: [`vinnikov_detrep`] multiplied on the right by the
/// anti-identity. Symmetric exactly when `s = 0`; its transpose is the form
/// at `(t, -s)`. `det = -F_AB`.
pub fn vinnikov_antidiag(spec: &CurveSpec, t: &Poly, s: &Poly) -> Result<Pencil, Error> {
    let p = vinnikov_detrep(spec, t, s)?;
    p.apply_equivalence(&ConstMatrix::identity(3), &ConstMatrix::anti_identity(3))
}

/// The 3×3 representation of the λ-form curve at `(t, s)`: [`vinnikov_detrep`]
/// on the AB form at `(t - k, s)`, `k = (1+λ)/3`, rewritten with `x ↦ x - k·y`,
/// so that `det = -F_λ`. Needs numeric λ.
pub fn vinnikov_lambda_form(spec: &CurveSpec, t: &Poly, s: &Poly) -> Result<Pencil, Error> {
    let CurveForm::Lambda { lambda } = &spec.form else {
        return Err(Error::PreconditionViolated("this family needs a lambda-form curve".into()));
    };
    let curve = spec.clone().untwisted();
    check_point(&curve, t, s, Error::PointNotOnCurve)?;
    let conversion = convert_curve_form(lambda)?;
    let (t_ab, s_ab) = conversion.to_ab_point(t, s);
    let p = vinnikov_detrep(&conversion.ab_spec()?, &t_ab, &s_ab)?;
    let (o, z) = (Poly::one(), Poly::zero());
    let shift = [[o.clone(), -&conversion.shift, z.clone()], [z.clone(), o.clone(), z.clone()], [z.clone(), z, o]];
    Ok(p.change_coordinates(&shift).with_curve(Some(curve)))
}

/// [`vinnikov_lambda_form`] block-embedded and moved onto the canonical pair
/// `(J_I, J_N)`: a decomposable pfaffian representation of `F_λ`.
pub fn embedded_vinnikov(spec: &CurveSpec, t: &Poly, s: &Poly) -> Result<Pencil, Error> {
    vinnikov_lambda_form(spec, t, s)?.block_embed().canonicalize_embed()
}

/// `sign·(x·I + z·N + y·[[α+3t²/4, i·s, t/2], [-i·s, -t, 0], [t/2, 0, -1]])` for a
/// real point with `-s² = t³ + αt + β`. Self-adjoint; `det = -sign·F_AB`.
pub fn selfadjoint_detrep(spec: &CurveSpec, t: &Poly, s: &Poly, sign: i8) -> Result<Pencil, Error> {
    if sign != 1 && sign != -1 {
        return Err(Error::PreconditionViolated(format!("sign must be 1 or -1, got {sign}")));
    }
    let (alpha, beta) = ab_of(spec)?;
    check_real(&[&alpha, &beta, t, s])?;
    let curve = spec.clone().twisted();
    check_point(&curve, t, s, Error::PointNotOnSelfAdjointLocus)?;
    let is = s.scale(&GaussianRational::i());
    let base = vinnikov_antidiag(&spec.clone().untwisted(), &Poly::var(Var::T), &Poly::var(Var::S))?;
    let subs = BTreeMap::from([(Var::T, t.clone()), (Var::S, is)]);
    let k = GaussianRational::from_int(sign as i64);
    let p = base.map_coefficients(|m| m.map(|e| e.substitute(&subs).scale(&k)));
    Ok(p.with_curve(Some(curve)))
}

/// `c14 = (3t² - 2t(1+λ) - (1-λ)²)/4`.
pub fn decomposable_c14(lambda: &Poly, t: &Poly) -> Poly {
    let one = Poly::one();
    let l1 = &one + lambda;
    let num = &(&t.pow(2).scale(&GaussianRational::from_int(3)) - &(t * &l1).scale(&GaussianRational::from_int(2)))
        - &(&one - lambda).pow(2);
    num.scale(&GaussianRational::from_frac(1, 4))
}

/// `c16 = c34 = (t - 1 - λ)/2`.
pub fn decomposable_c16(lambda: &Poly, t: &Poly) -> Poly {
    half(&(&(t - &Poly::one()) - lambda))
}

/// y-matrix entries of the decomposable family, with `s` entries given.
fn pfaffian_y(lambda: &Poly, t: &Poly, c15: Poly, c24: Poly, c12: Poly) -> CoeffMap {
    let c16 = decomposable_c16(lambda, t);
    CoeffMap::new()
        .with(1, 2, c12)
        .with(1, 4, decomposable_c14(lambda, t))
        .with(1, 5, c15)
        .with(1, 6, c16.clone())
        .with(2, 4, c24)
        .with(2, 5, -t)
        .with(3, 4, c16)
        .with(3, 6, Poly::int(-1))
}

/// `x·J_I + z·J_N + y·Skew(c)`.
pub fn general_pfaffian_family(spec: &CurveSpec, c: &CoeffMap) -> Result<Pencil, Error> {
    lambda_of(spec)?;
    let (ji, jn) = canonical_skew_pair();
    const_pencil_parts(&ji, c.skew_matrix(), &jn, spec.clone())
}

/// The decomposable pfaffian family on `s² = t(t-1)(t-λ)`.
pub fn pfaffian_decomposable(spec: &CurveSpec, t: &Poly, s: &Poly) -> Result<Pencil, Error> {
    let lambda = lambda_of(spec)?;
    let curve = spec.clone().untwisted();
    check_point(&curve, t, s, Error::PointNotOnCurve)?;
    general_pfaffian_family(&curve, &pfaffian_y(&lambda, t, s.clone(), -s, Poly::zero()))
}

fn check_root(spec: &CurveSpec, t: &Poly) -> Result<(), Error> {
    spec.check_generators(t)?;
    if spec.rhs().substitute_one(Var::T, t).is_zero() {
        Ok(())
    } else {
        Err(Error::NotARoot(t.render()))
    }
}

/// The indecomposable pfaffian representation at a root `t ∈ {0, 1, λ}`:
/// the decomposable shape with `s = 0` and `c12 = 1`.
pub fn pfaffian_indecomposable(spec: &CurveSpec, t: &Poly) -> Result<Pencil, Error> {
    let lambda = lambda_of(spec)?;
    let curve = spec.clone().untwisted();
    check_root(&curve, t)?;
    general_pfaffian_family(&curve, &pfaffian_y(&lambda, t, Poly::zero(), Poly::zero(), Poly::one()))
}

fn symmetric_pair() -> (ConstMatrix, ConstMatrix) {
    let (ji, jn) = canonical_skew_pair();
    let abs = |m: &ConstMatrix| m.map(|v| if v.is_zero() { v.clone() } else { GaussianRational::one() });
    (abs(&ji), abs(&jn))
}

/// The self-adjoint decomposable family: symmetric canonical pair and the
/// decomposable y-matrix with `±i·s`, on the real locus `-s² = t(t-1)(t-λ)`.
/// `det = -F_λ²`; diagonals vanish in all three coefficients.
pub fn selfadjoint_pfaffian_decomposable(spec: &CurveSpec, t: &Poly, s: &Poly) -> Result<Pencil, Error> {
    let lambda = lambda_of(spec)?;
    check_real(&[&lambda, t, s])?;
    let curve = spec.clone().twisted();
    check_point(&curve, t, s, Error::PointNotOnSelfAdjointLocus)?;
    let is = s.scale(&GaussianRational::i());
    let y = pfaffian_y(&lambda, t, is.clone(), -&is, Poly::zero());
    let (x, z) = symmetric_pair();
    const_pencil_parts(&x, y.hermitian_matrix(), &z, curve)
}

/// `i` times [`pfaffian_indecomposable`]. Self-adjoint; `det = -F_λ²`.
pub fn selfadjoint_pfaffian_indecomposable(spec: &CurveSpec, t: &Poly) -> Result<Pencil, Error> {
    let lambda = lambda_of(spec)?;
    check_real(&[&lambda, t])?;
    let p = pfaffian_indecomposable(spec, t)?;
    let i = GaussianRational::i();
    Ok(p.map_coefficients(|m| m.map(|e| e.scale(&i))))
}

/// `x·H + y·K - z·Id` for Hermitian `H`, `K`.
pub fn kippenhahn_pencil(h: &ConstMatrix, k: &ConstMatrix) -> Result<Pencil, Error> {
    if !h.is_hermitian() || !k.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    let minus_id = ConstMatrix::identity(h.n()).scale(&GaussianRational::from_int(-1));
    Pencil::from_const(h, k, &minus_id, None)
}

/// The coefficient equations `pf(x·J_I + z·J_N + y·Skew(c)) = sign·F_λ`
/// solved for five of the fifteen `c_ij`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveConstraints {
    /// `pf = sign·F_λ` (the `x³` coefficient of the pfaffian is always 1).
    pub sign: i8,
    /// `c36`, `c26`, `c25`, `c15`, `c14`, each in terms of the free entries.
    pub substitutions: Vec<(Var, Poly)>,
    /// The `y³` coefficient of the pfaffian, in all fifteen entries.
    pub y3_coefficient: Poly,
    /// That coefficient after the substitutions; it must vanish.
    pub residual: Poly,
}

impl CurveConstraints {
    pub fn substitution_map(&self) -> BTreeMap<Var, Poly> {
        self.substitutions.iter().cloned().collect()
    }

    pub fn get(&self, v: Var) -> Option<&Poly> {
        self.substitutions.iter().find(|(w, _)| *w == v).map(|(_, p)| p)
    }

    /// Fills the five solved entries of `c` from its free entries.
    pub fn complete(&self, c: &CoeffMap) -> CoeffMap {
        let assign = c.assignment();
        let mut out = c.clone();
        for (v, expr) in &self.substitutions {
            if let Var::C(i, j) = v {
                out.set(*i, *j, expr.substitute(&assign));
            }
        }
        out
    }
}

/// Monomials matched, in order, and the entry each one is solved for.
const PIVOTS: [((u8, u8, u8), (u8, u8)); 5] =
    [((0, 1, 2), (3, 6)), ((1, 1, 1), (2, 6)), ((2, 1, 0), (2, 5)), ((0, 2, 1), (1, 5)), ((1, 2, 0), (1, 4))];

/// Matches the pfaffian of the general family against `F_λ` coefficient by
/// coefficient and solves the five linear equations.
pub fn impose_curve_constraints(spec: &CurveSpec) -> Result<CurveConstraints, Error> {
    let lambda = lambda_of(spec)?;
    let curve = CurveSpec::lambda(crate::ring::Param::Symbolic);
    let family = general_pfaffian_family(&curve, &CoeffMap::symbolic())?;
    let pf = family.pfaffian()?.substitute_one(Var::Lambda, &lambda);
    let f = spec.curve_poly();
    let sign_value = pf.coeff_xyz(3, 0, 0);
    let sign: i8 = if sign_value == -f.coeff_xyz(3, 0, 0) { -1 } else { 1 };
    let target = f.scale(&GaussianRational::from_int(sign as i64));
    let y3_coefficient = pf.coeff_xyz(0, 3, 0);
    let mut equations = &pf - &target;
    let mut substitutions: Vec<(Var, Poly)> = Vec::new();
    for ((dx, dy, dz), (i, j)) in PIVOTS {
        let v = Var::C(i, j);
        let e = equations.coeff_xyz(dx, dy, dz);
        let slope = e.coeff_of(v, 1).as_constant().filter(|a| !a.is_zero() && e.degree_in(v) == 1);
        let Some(slope) = slope else {
            return Err(Error::PreconditionViolated(format!("equation for {} is not linear in it", v.name())));
        };
        let value = (-e.coeff_of(v, 0)).scale(&slope.inv().expect("nonzero"));
        let step = BTreeMap::from([(v, value.clone())]);
        for (_, earlier) in substitutions.iter_mut() {
            *earlier = earlier.substitute(&step);
        }
        equations = equations.substitute(&step);
        substitutions.push((v, value));
    }
    let residual = equations.coeff_xyz(0, 3, 0);
    let y3 = Poly::var(Var::Y).pow(3);
    debug_assert!((&equations - &(&y3 * &residual)).is_zero());
    Ok(CurveConstraints { sign, substitutions, y3_coefficient, residual })
}

/// Whether `pf(x·J_I + z·J_N + y·Skew(c)) = ±F_λ` modulo the curve relation.
pub fn satisfies_curve(spec: &CurveSpec, c: &CoeffMap) -> Result<bool, Error> {
    let family = general_pfaffian_family(spec, c)?;
    let ring = spec.ring();
    let pf = family.pfaffian()?;
    let f = spec.curve_poly();
    Ok(ring.equal(&pf, &f) || ring.equal(&pf, &-&f))
}
