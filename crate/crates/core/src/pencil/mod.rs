//! Linear matrix pencils `x·A_x + y·A_y + z·A_z` and the operations on them:
//! determinants, pfaffians, congruence and equivalence actions, structural
//! predicates and block embeddings.

mod matrix;
mod wire;

pub use matrix::{
    add, congruence, determinant, identity, is_skew, is_zero_matrix, mul, neg, pencil_nilpotency, pfaffian, scale,
    sub, zeros, ConstMatrix, Matrix, PolyMatrix,
};
pub use wire::EntriesField;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::Error;
use crate::ring::{CurveSpec, GaussianRational, Poly, PolyRing, Var};

/// `x·A_x + y·A_y + z·A_z`, with entries polynomial in the curve parameters
/// (constants for numeric pencils). The curve, when present, supplies the
/// relation used to reduce `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pencil {
    pub ax: PolyMatrix,
    pub ay: PolyMatrix,
    pub az: PolyMatrix,
    pub curve: Option<CurveSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Definiteness {
    Positive,
    Negative,
    None,
}

/// Outcome of checking `det A = c·F^r`; `sign` is set when a skew 6×6 pencil has `pf A = sign·F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub r: usize,
    pub c: Option<GaussianRational>,
    pub sign: Option<i8>,
    pub matched: bool,
}

impl Serialize for VerifyReport {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = ser.serialize_map(None)?;
        map.serialize_entry("matched", &self.matched)?;
        map.serialize_entry("r", &self.r)?;
        if let Some(c) = &self.c {
            map.serialize_entry("c", &c.to_string())?;
        }
        if let Some(sign) = self.sign {
            map.serialize_entry("sign", &sign)?;
        }
        map.end()
    }
}

impl Pencil {
    pub fn new(ax: PolyMatrix, ay: PolyMatrix, az: PolyMatrix, curve: Option<CurveSpec>) -> Result<Pencil, Error> {
        if ax.n() != ay.n() || ax.n() != az.n() {
            return Err(Error::Dimension(format!(
                "coefficient matrices are {}x{}, {}x{} and {}x{}",
                ax.n(),
                ax.n(),
                ay.n(),
                ay.n(),
                az.n(),
                az.n()
            )));
        }
        for p in ax.entries().chain(ay.entries()).chain(az.entries()) {
            if Var::XYZ.iter().any(|&v| p.contains(v)) {
                return Err(Error::Dimension(format!("entry `{p}` is not a coefficient (mentions x, y or z)")));
            }
            if let Some(c) = &curve {
                c.check_generators(p)?;
            }
        }
        Ok(Pencil { ax, ay, az, curve })
    }

    pub fn from_const(ax: &ConstMatrix, ay: &ConstMatrix, az: &ConstMatrix, curve: Option<CurveSpec>) -> Result<Pencil, Error> {
        Pencil::new(ax.to_poly(), ay.to_poly(), az.to_poly(), curve)
    }

    pub fn n(&self) -> usize {
        self.ax.n()
    }

    pub fn coefficients(&self) -> [&PolyMatrix; 3] {
        [&self.ax, &self.ay, &self.az]
    }

    /// Arithmetic context: the curve relation if known, else free polynomials.
    pub fn ring(&self) -> PolyRing {
        self.curve.as_ref().map(CurveSpec::ring).unwrap_or_default()
    }

    pub fn with_curve(mut self, curve: Option<CurveSpec>) -> Pencil {
        self.curve = curve;
        self
    }

    pub fn map_coefficients(&self, mut f: impl FnMut(&PolyMatrix) -> PolyMatrix) -> Pencil {
        Pencil { ax: f(&self.ax), ay: f(&self.ay), az: f(&self.az), curve: self.curve.clone() }
    }

    /// `x·A_x + y·A_y + z·A_z` as a single matrix over the polynomial ring.
    pub fn matrix(&self) -> PolyMatrix {
        let (x, y, z) = (Poly::var(Var::X), Poly::var(Var::Y), Poly::var(Var::Z));
        Matrix::from_fn(self.n(), |i, j| {
            &(&(&x * &self.ax[(i, j)]) + &(&y * &self.ay[(i, j)])) + &(&z * &self.az[(i, j)])
        })
    }

    pub fn determinant(&self) -> Poly {
        determinant(&self.ring(), &self.matrix())
    }

    pub fn pfaffian(&self) -> Result<Poly, Error> {
        pfaffian(&self.ring(), &self.matrix())
    }

    pub fn is_skew(&self) -> bool {
        let ring = self.ring();
        self.coefficients().iter().all(|m| is_skew(&ring, m))
    }

    pub fn transpose(&self) -> Pencil {
        self.map_coefficients(|m| m.transpose())
    }

    /// Conjugate transpose of every coefficient; generators count as real.
    pub fn adjoint(&self) -> Pencil {
        self.map_coefficients(|m| m.conj_transpose())
    }

    pub fn is_self_adjoint(&self) -> bool {
        *self == self.adjoint()
    }

    /// Substitutes generators (e.g. a symbolic point) and reduces.
    pub fn substitute(&self, subs: &BTreeMap<Var, Poly>) -> Pencil {
        let ring = self.ring();
        self.map_coefficients(|m| m.map(|p| ring.substitute(p, subs)))
    }

    /// `M·A·Mᵗ` on every coefficient.
    pub fn apply_congruence(&self, m: &ConstMatrix) -> Result<Pencil, Error> {
        self.check_transform(m)?;
        let mp = m.to_poly();
        let ring = PolyRing::free();
        Ok(self.map_coefficients(|a| congruence(&ring, &mp, a)))
    }

    /// `M·A·M*` on every coefficient.
    pub fn apply_unitary_congruence(&self, m: &ConstMatrix) -> Result<Pencil, Error> {
        self.check_transform(m)?;
        let (left, right) = (m.to_poly(), m.conj_transpose().to_poly());
        let ring = PolyRing::free();
        Ok(self.map_coefficients(|a| mul(&ring, &mul(&ring, &left, a), &right)))
    }

    /// `X·A·Y` on every coefficient.
    pub fn apply_equivalence(&self, x: &ConstMatrix, y: &ConstMatrix) -> Result<Pencil, Error> {
        self.check_transform(x)?;
        self.check_transform(y)?;
        let (xp, yp) = (x.to_poly(), y.to_poly());
        let ring = PolyRing::free();
        Ok(self.map_coefficients(|a| mul(&ring, &mul(&ring, &xp, a), &yp)))
    }

    fn check_transform(&self, m: &ConstMatrix) -> Result<(), Error> {
        if m.n() != self.n() {
            return Err(Error::Dimension(format!("transform is {0}x{0}, pencil is {1}x{1}", m.n(), self.n())));
        }
        if m.det().is_zero() {
            return Err(Error::SingularTransform);
        }
        Ok(())
    }

    /// Rewrites the pencil in new coordinates: with `(x, y, z)ᵀ = S (x', y', z')ᵀ`,
    /// returns the pencil `A(S (x', y', z')ᵀ)`.
    pub fn change_coordinates(&self, s: &[[Poly; 3]; 3]) -> Pencil {
        let old = self.coefficients();
        let combine = |col: usize| {
            Matrix::from_fn(self.n(), |i, j| {
                (0..3).fold(Poly::zero(), |acc, k| &acc + &(&s[k][col] * &old[k][(i, j)]))
            })
        };
        Pencil { ax: combine(0), ay: combine(1), az: combine(2), curve: self.curve.clone() }
    }

    /// `x·A_x + y·A_y + z·A_z` at a numeric point.
    pub fn evaluate(&self, point: &[GaussianRational; 3]) -> Result<ConstMatrix, Error> {
        let consts = [self.ax.to_const()?, self.ay.to_const()?, self.az.to_const()?];
        Ok(Matrix::from_fn(self.n(), |i, j| {
            (0..3).fold(GaussianRational::zero(), |acc, k| &acc + &(&point[k] * &consts[k][(i, j)]))
        }))
    }

    pub fn nilpotency(&self) -> Result<usize, Error> {
        pencil_nilpotency(&self.ax.to_const()?, &self.az.to_const()?)
    }

    /// Sylvester's criterion on the leading principal minors of the pencil at a real point.
    pub fn is_definite_at(&self, point: &[GaussianRational; 3]) -> Result<Definiteness, Error> {
        if !self.is_self_adjoint() {
            return Err(Error::NotSelfAdjoint);
        }
        if point.iter().any(|c| !c.is_real()) {
            return Err(Error::NonRealPoint);
        }
        let m = self.evaluate(point)?;
        let (mut positive, mut negative) = (true, true);
        for k in 1..=m.n() {
            let minor = m.leading(k).det();
            assert!(minor.is_real(), "leading minor of a Hermitian matrix must be real");
            let minor = minor.re;
            positive &= minor.is_positive();
            negative &= if k % 2 == 1 { minor.is_negative() } else { minor.is_positive() };
        }
        Ok(if positive && m.n() > 0 {
            Definiteness::Positive
        } else if negative && m.n() > 0 {
            Definiteness::Negative
        } else {
            Definiteness::None
        })
    }

    /// 1-based indices `k` with `A_x[k,k] = A_y[k,k] = A_z[k,k] = 0`. A nonempty
    /// result rules out definiteness at every real point.
    pub fn zero_diagonal_witness(&self) -> Result<BTreeSet<usize>, Error> {
        if !self.is_self_adjoint() {
            return Err(Error::NotSelfAdjoint);
        }
        Ok((0..self.n())
            .filter(|&k| self.coefficients().iter().all(|m| m[(k, k)].is_zero()))
            .map(|k| k + 1)
            .collect())
    }

    /// `[[0, A], [-Aᵗ, 0]]` on every coefficient.
    pub fn block_embed(&self) -> Pencil {
        let z = zeros(&PolyRing::free(), self.n());
        self.map_coefficients(|a| {
            let minus_at = a.transpose().map(|p| -p);
            Matrix::from_blocks(&z, a, &minus_at, &z)
        })
    }

    /// Block-diagonal `diag(self, other)`.
    pub fn direct_sum(&self, other: &Pencil) -> Pencil {
        let (p, q) = (self.n(), other.n());
        let join = |a: &PolyMatrix, b: &PolyMatrix| {
            Matrix::from_fn(p + q, |i, j| match (i < p, j < p) {
                (true, true) => a[(i, j)].clone(),
                (false, false) => b[(i - p, j - p)].clone(),
                _ => Poly::zero(),
            })
        };
        let curve = if self.curve == other.curve { self.curve.clone() } else { None };
        Pencil {
            ax: join(&self.ax, &other.ax),
            ay: join(&self.ay, &other.ay),
            az: join(&self.az, &other.az),
            curve,
        }
    }

    /// Congruence by `diag(Id₃, anti-Id₃)`, taking the block embedding of a
    /// 3×3 canonical pair `(Id, N')` to the 6×6 canonical pair `(J_I, J_N)`.
    pub fn canonicalize_embed(&self) -> Result<Pencil, Error> {
        let n3 = ConstMatrix::from_ints(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let embedded = Pencil::from_const(&ConstMatrix::identity(3), &ConstMatrix::zeros(3), &n3, None)?.block_embed();
        if self.n() != 6 || self.ax != embedded.ax || self.az != embedded.az {
            return Err(Error::PreconditionViolated(
                "expected A_x = [[0, Id], [-Id, 0]] and A_z = [[0, N], [-N^t, 0]]".into(),
            ));
        }
        let z = ConstMatrix::zeros(3);
        let m = Matrix::from_blocks(&ConstMatrix::identity(3), &z, &z, &ConstMatrix::anti_identity(3));
        self.apply_congruence(&m)
    }

    /// Checks `det A = c·F^r` (with `r = n/3`) modulo the relation of `spec`.
    /// For skew 6×6 pencils whose pfaffian is `±F`, also reports that sign.
    pub fn verify_representation(&self, spec: &CurveSpec) -> VerifyReport {
        let n = self.n();
        let r = n / 3;
        let unmatched = VerifyReport { r, c: None, sign: None, matched: false };
        if n == 0 || n % 3 != 0 {
            return unmatched;
        }
        let ring = spec.ring();
        let f = spec.curve_poly();
        let det = determinant(&ring, &self.matrix());
        let fr = ring.pow(&f, r as u32);
        let lead = |p: &Poly, d: usize| p.coeff_xyz(d as u8, 0, 0).as_constant();
        let (Some(det_lead), Some(f_lead)) = (lead(&det, 3 * r), lead(&fr, 3 * r)) else {
            return unmatched;
        };
        if det_lead.is_zero() || f_lead.is_zero() {
            return unmatched;
        }
        let c = &det_lead / &f_lead;
        if !ring.equal(&det, &fr.scale(&c)) {
            return unmatched;
        }
        let mut sign = None;
        if n == 6 && self.is_skew() {
            let pf = pfaffian(&ring, &self.matrix()).expect("skew");
            let unit = GaussianRational::one();
            let ratio = lead(&pf, 3).zip(lead(&f, 3)).map(|(a, b)| &a / &b);
            let candidate = match ratio {
                Some(v) if v == unit => Some(1),
                Some(v) if v == -&unit => Some(-1),
                _ => None,
            };
            sign = candidate.filter(|&s| ring.equal(&pf, &f.scale(&GaussianRational::from_int(s as i64))));
        }
        VerifyReport { r, c: Some(c), sign, matched: true }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{parse_poly, Param};
    use proptest::prelude::*;

    fn gr(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn const_pencil(ax: &ConstMatrix, ay: &ConstMatrix, az: &ConstMatrix) -> Pencil {
        Pencil::from_const(ax, ay, az, None).unwrap()
    }

    fn x_identity() -> Pencil {
        let z = ConstMatrix::zeros(3);
        const_pencil(&ConstMatrix::identity(3), &z, &z)
    }

    #[test]
    fn mismatched_dimensions_are_rejected() {
        let r = Pencil::from_const(&ConstMatrix::identity(3), &ConstMatrix::zeros(2), &ConstMatrix::zeros(3), None);
        assert!(matches!(r, Err(Error::Dimension(_))));
    }

    #[test]
    fn evaluate_examples() {
        let p = x_identity();
        assert_eq!(p.evaluate(&[gr(1), gr(0), gr(0)]).unwrap(), ConstMatrix::identity(3));
        assert_eq!(p.evaluate(&[gr(0), gr(0), gr(0)]).unwrap(), ConstMatrix::zeros(3));
        let symbolic = Pencil::new(
            Matrix::from_fn(1, |_, _| Poly::var(Var::T)),
            Matrix::from_fn(1, |_, _| Poly::zero()),
            Matrix::from_fn(1, |_, _| Poly::zero()),
            None,
        )
        .unwrap();
        assert!(matches!(symbolic.evaluate(&[gr(1), gr(0), gr(0)]), Err(Error::UnboundParameter(_))));
    }

    #[test]
    fn definiteness_examples() {
        let p = x_identity();
        assert_eq!(p.is_definite_at(&[gr(1), gr(0), gr(0)]), Ok(Definiteness::Positive));
        assert_eq!(p.is_definite_at(&[gr(-1), gr(0), gr(0)]), Ok(Definiteness::Negative));
        assert_eq!(p.is_definite_at(&[gr(0), gr(0), gr(0)]), Ok(Definiteness::None));
        assert_eq!(p.is_definite_at(&[GaussianRational::i(), gr(0), gr(0)]), Err(Error::NonRealPoint));
        let skew = ConstMatrix::from_ints(&[&[0, 1], &[-1, 0]]);
        let z = ConstMatrix::zeros(2);
        assert_eq!(const_pencil(&skew, &z, &z).is_definite_at(&[gr(1), gr(0), gr(0)]), Err(Error::NotSelfAdjoint));
    }

    #[test]
    fn zero_diagonal_examples() {
        assert!(x_identity().zero_diagonal_witness().unwrap().is_empty());
        let z = ConstMatrix::zeros(2);
        let h = ConstMatrix::from_ints(&[&[1, 0], &[0, 0]]);
        assert_eq!(const_pencil(&h, &z, &z).zero_diagonal_witness().unwrap(), BTreeSet::from([2]));
    }

    #[test]
    fn self_adjointness_examples() {
        let sym = ConstMatrix::from_ints(&[&[1, 2], &[2, 5]]);
        let z = ConstMatrix::zeros(2);
        assert!(const_pencil(&sym, &z, &sym).is_self_adjoint());
        let skew = ConstMatrix::from_ints(&[&[0, 1], &[-1, 0]]);
        let p = const_pencil(&skew, &z, &z);
        assert!(!p.is_self_adjoint());
        assert!(p.is_skew());
        assert!(!const_pencil(&sym, &z, &z).is_skew());
    }

    #[test]
    fn block_embed_of_identity_has_pfaffian_minus_one() {
        let e = x_identity().block_embed();
        assert!(e.is_skew());
        assert_eq!(e.ax.to_const().unwrap().pf().unwrap(), gr(-1));
        assert_eq!(e.pfaffian().unwrap(), parse_poly("-x^3").unwrap());
    }

    #[test]
    fn identity_congruence_is_trivial() {
        let e = x_identity().block_embed();
        assert_eq!(e.apply_congruence(&ConstMatrix::identity(6)).unwrap(), e);
        assert_eq!(e.apply_congruence(&ConstMatrix::zeros(6)), Err(Error::SingularTransform));
    }

    #[test]
    fn canonicalize_embed_examples() {
        let n3 = ConstMatrix::from_ints(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let y = ConstMatrix::from_ints(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        let p = const_pencil(&ConstMatrix::identity(3), &y, &n3);
        let e = p.block_embed();
        let c = e.canonicalize_embed().unwrap();
        let ji = ConstMatrix::from_fn(6, |i, j| match (i, j) {
            (0, 5) | (1, 4) | (2, 3) => gr(1),
            (5, 0) | (4, 1) | (3, 2) => gr(-1),
            _ => gr(0),
        });
        let jn = ConstMatrix::from_fn(6, |i, j| match (i, j) {
            (0, 4) | (1, 3) => gr(1),
            (4, 0) | (3, 1) => gr(-1),
            _ => gr(0),
        });
        assert_eq!(c.ax.to_const().unwrap(), ji);
        assert_eq!(c.az.to_const().unwrap(), jn);
        assert_eq!(c.pfaffian().unwrap(), -e.pfaffian().unwrap());
        assert!(matches!(x_identity().block_embed().canonicalize_embed(), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn nilpotency_of_embedded_pairs() {
        let n3 = ConstMatrix::from_ints(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let p = const_pencil(&ConstMatrix::identity(3), &ConstMatrix::zeros(3), &n3);
        assert_eq!(p.nilpotency(), Ok(3));
        assert_eq!(p.block_embed().nilpotency(), Ok(3));
    }

    #[test]
    fn zero_pencil_does_not_verify() {
        let z = ConstMatrix::zeros(3);
        let report = const_pencil(&z, &z, &z).verify_representation(&CurveSpec::lambda(Param::value(2)));
        assert!(!report.matched);
        assert_eq!(report.c, None);
    }

    #[test]
    fn change_coordinates_shifts_x() {
        let p = x_identity();
        let (o, z, k) = (Poly::one(), Poly::zero(), Poly::int(2));
        let s = [[o.clone(), k, z.clone()], [z.clone(), o.clone(), z.clone()], [z.clone(), z, o]];
        let q = p.change_coordinates(&s);
        assert_eq!(q.ax, p.ax);
        assert_eq!(q.ay.to_const().unwrap(), ConstMatrix::identity(3).scale(&gr(2)));
        assert_eq!(q.determinant(), parse_poly("(x + 2*y)^3").unwrap());
    }

    fn int_matrix(n: usize) -> impl Strategy<Value = ConstMatrix> {
        proptest::collection::vec(-3i64..4, n * n)
            .prop_map(move |v| Matrix::from_fn(n, |i, j| GaussianRational::from_int(v[i * n + j])))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn embedded_pfaffian_is_minus_determinant(a in int_matrix(3)) {
            let z = ConstMatrix::zeros(3);
            let e = const_pencil(&a, &z, &z).block_embed();
            prop_assert_eq!(e.ax.to_const().unwrap().pf().unwrap(), -a.det());
        }

        #[test]
        fn block_swap_congruence(a in int_matrix(3), b in int_matrix(3)) {
            let z = ConstMatrix::zeros(3);
            let p = const_pencil(&a, &b, &z);
            let swap = Matrix::from_blocks(&z, &ConstMatrix::identity(3), &ConstMatrix::identity(3), &z);
            let got = p.block_embed().apply_congruence(&swap).unwrap();
            let expected = p.map_coefficients(|m| {
                let zp = z.to_poly();
                Matrix::from_blocks(&zp, &m.transpose().map(|x| -x), m, &zp)
            });
            prop_assert_eq!(got, expected);
        }

        #[test]
        fn embedding_intertwines_equivalence(a in int_matrix(3), x in int_matrix(3), y in int_matrix(3)) {
            prop_assume!(!x.det().is_zero() && !y.det().is_zero());
            let z = ConstMatrix::zeros(3);
            let p = const_pencil(&a, &z, &z);
            let lhs = p.apply_equivalence(&x, &y).unwrap().block_embed();
            let m = Matrix::from_blocks(&x, &z, &z, &y.transpose());
            prop_assert_eq!(lhs, p.block_embed().apply_congruence(&m).unwrap());
        }

        #[test]
        fn congruence_preserves_skew_and_hermitian(a in int_matrix(4), m in int_matrix(4), im in int_matrix(4)) {
            prop_assume!(!m.det().is_zero());
            let z = ConstMatrix::zeros(4);
            let skew = a.add(&a.transpose().scale(&gr(-1)));
            prop_assert!(const_pencil(&skew, &z, &z).apply_congruence(&m).unwrap().is_skew());
            let herm = a.add(&a.conj_transpose()).add(&im.scale(&GaussianRational::i()).add(&im.scale(&GaussianRational::i()).conj_transpose()));
            let h = const_pencil(&herm, &z, &z);
            prop_assert!(h.is_self_adjoint());
            let u = m.add(&im.scale(&GaussianRational::i()));
            prop_assume!(!u.det().is_zero());
            prop_assert!(h.apply_unitary_congruence(&u).unwrap().is_self_adjoint());
        }
    }
}
