//! Square matrices over a [`Ring`], with memoized determinant and pfaffian.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use crate::error::Error;
use crate::ring::{GaussianField, GaussianRational, Poly, PolyRing, Ring};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

pub type ConstMatrix = Matrix<GaussianRational>;
pub type PolyMatrix = Matrix<Poly>;

impl<T: Clone> Matrix<T> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Matrix<T> {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Matrix<T>, Error> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!("expected {n} entries in every row of a {n}x{n} matrix")));
        }
        Ok(Matrix { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn transpose(&self) -> Matrix<T> {
        Matrix::from_fn(self.n, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Clone>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { n: self.n, data: self.data.iter().map(&mut f).collect() }
    }

    pub fn try_map<U: Clone, E>(&self, mut f: impl FnMut(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        Ok(Matrix { n: self.n, data: self.data.iter().map(&mut f).collect::<Result<_, _>>()? })
    }

    /// The `size × size` block whose top-left corner is `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, size: usize) -> Matrix<T> {
        Matrix::from_fn(size, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// `[[a, b], [c, d]]` from four blocks of equal size.
    pub fn from_blocks(a: &Matrix<T>, b: &Matrix<T>, c: &Matrix<T>, d: &Matrix<T>) -> Matrix<T> {
        let k = a.n;
        assert!(b.n == k && c.n == k && d.n == k, "blocks must share one size");
        Matrix::from_fn(2 * k, |i, j| match (i < k, j < k) {
            (true, true) => a[(i, j)].clone(),
            (true, false) => b[(i, j - k)].clone(),
            (false, true) => c[(i - k, j)].clone(),
            (false, false) => d[(i - k, j - k)].clone(),
        })
    }

    /// The leading principal `k × k` submatrix.
    pub fn leading(&self, k: usize) -> Matrix<T> {
        self.block(0, 0, k)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.data[i * self.n + j].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn zeros<R: Ring>(ring: &R, n: usize) -> Matrix<R::Elem> {
    Matrix::from_fn(n, |_, _| ring.zero())
}

pub fn identity<R: Ring>(ring: &R, n: usize) -> Matrix<R::Elem> {
    Matrix::from_fn(n, |i, j| if i == j { ring.one() } else { ring.zero() })
}

pub fn add<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!(a.n, b.n);
    Matrix::from_fn(a.n, |i, j| ring.add(&a[(i, j)], &b[(i, j)]))
}

pub fn sub<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!(a.n, b.n);
    Matrix::from_fn(a.n, |i, j| ring.sub(&a[(i, j)], &b[(i, j)]))
}

pub fn neg<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    a.map(|x| ring.neg(x))
}

pub fn scale<R: Ring>(ring: &R, c: &R::Elem, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    a.map(|x| ring.mul(c, x))
}

pub fn mul<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!(a.n, b.n);
    let n = a.n;
    Matrix::from_fn(n, |i, j| {
        let mut acc = ring.zero();
        for k in 0..n {
            let (x, y) = (&a[(i, k)], &b[(k, j)]);
            if !ring.is_zero(x) && !ring.is_zero(y) {
                acc = ring.add(&acc, &ring.mul(x, y));
            }
        }
        acc
    })
}

/// `m · a · mᵗ`.
pub fn congruence<R: Ring>(ring: &R, m: &Matrix<R::Elem>, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    mul(ring, &mul(ring, m, a), &m.transpose())
}

pub fn is_zero_matrix<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> bool {
    a.entries().all(|x| ring.is_zero(x))
}

pub fn is_skew<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> bool {
    let n = a.n;
    (0..n).all(|i| (i..n).all(|j| ring.is_zero(&ring.add(&a[(i, j)], &a[(j, i)]))))
}

/// Determinant by cofactor expansion along rows, memoized on the set of
/// columns still available.
pub fn determinant<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> R::Elem {
    let n = a.n;
    assert!(n < 32, "determinant kernel supports dimensions below 32");
    let mut memo: HashMap<u32, R::Elem> = HashMap::new();
    det_rec(ring, a, ((1u64 << n) - 1) as u32, &mut memo)
}

fn det_rec<R: Ring>(ring: &R, a: &Matrix<R::Elem>, cols: u32, memo: &mut HashMap<u32, R::Elem>) -> R::Elem {
    if cols == 0 {
        return ring.one();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let row = a.n - cols.count_ones() as usize;
    let mut acc = ring.zero();
    let mut position = 0;
    for j in 0..a.n {
        if cols & (1 << j) == 0 {
            continue;
        }
        let entry = &a[(row, j)];
        if !ring.is_zero(entry) {
            let minor = det_rec(ring, a, cols & !(1 << j), memo);
            let term = ring.mul(entry, &minor);
            acc = if position % 2 == 0 { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
        }
        position += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Pfaffian by first-row expansion `pf(S) = Σ_{j≥2} (-1)^j S[1,j] pf(S_{1j})`
/// (1-based), so that `pf([[0, a], [-a, 0]]) = a`. Memoized on the set of
/// remaining indices.
pub fn pfaffian<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Result<R::Elem, Error> {
    if !is_skew(ring, a) {
        return Err(Error::NotSkew);
    }
    let n = a.n;
    if n % 2 == 1 {
        return Ok(ring.zero());
    }
    assert!(n < 32, "pfaffian kernel supports dimensions below 32");
    let mut memo: HashMap<u32, R::Elem> = HashMap::new();
    Ok(pf_rec(ring, a, ((1u64 << n) - 1) as u32, &mut memo))
}

fn pf_rec<R: Ring>(ring: &R, a: &Matrix<R::Elem>, rest: u32, memo: &mut HashMap<u32, R::Elem>) -> R::Elem {
    if rest == 0 {
        return ring.one();
    }
    if let Some(v) = memo.get(&rest) {
        return v.clone();
    }
    let first = rest.trailing_zeros() as usize;
    let others = rest & !(1 << first);
    let mut acc = ring.zero();
    let mut position = 1;
    for j in first + 1..a.n {
        if others & (1 << j) == 0 {
            continue;
        }
        let entry = &a[(first, j)];
        if !ring.is_zero(entry) {
            let minor = pf_rec(ring, a, others & !(1 << j), memo);
            let term = ring.mul(entry, &minor);
            // 1-based position j' = position + 1 carries sign (-1)^j'
            acc = if position % 2 == 1 { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
        }
        position += 1;
    }
    memo.insert(rest, acc.clone());
    acc
}

impl ConstMatrix {
    pub fn identity(n: usize) -> ConstMatrix {
        identity(&GaussianField, n)
    }

    pub fn zeros(n: usize) -> ConstMatrix {
        zeros(&GaussianField, n)
    }

    /// Ones on the anti-diagonal.
    pub fn anti_identity(n: usize) -> ConstMatrix {
        Matrix::from_fn(n, |i, j| if i + j + 1 == n { GaussianRational::one() } else { GaussianRational::zero() })
    }

    pub fn from_ints(rows: &[&[i64]]) -> ConstMatrix {
        let rows = rows.iter().map(|r| r.iter().map(|&v| GaussianRational::from_int(v)).collect()).collect();
        Matrix::from_rows(rows).expect("square integer matrix")
    }

    pub fn det(&self) -> GaussianRational {
        determinant(&GaussianField, self)
    }

    pub fn pf(&self) -> Result<GaussianRational, Error> {
        pfaffian(&GaussianField, self)
    }

    pub fn is_skew(&self) -> bool {
        is_skew(&GaussianField, self)
    }

    pub fn is_zero(&self) -> bool {
        is_zero_matrix(&GaussianField, self)
    }

    pub fn conj_transpose(&self) -> ConstMatrix {
        self.transpose().map(|x| x.conj())
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.conj_transpose()
    }

    pub fn mul(&self, other: &ConstMatrix) -> ConstMatrix {
        mul(&GaussianField, self, other)
    }

    pub fn add(&self, other: &ConstMatrix) -> ConstMatrix {
        add(&GaussianField, self, other)
    }

    pub fn scale(&self, c: &GaussianRational) -> ConstMatrix {
        scale(&GaussianField, c, self)
    }

    pub fn pow(&self, e: u32) -> ConstMatrix {
        (0..e).fold(ConstMatrix::identity(self.n), |acc, _| acc.mul(self))
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<ConstMatrix> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = ConstMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            if pivot != col {
                for k in 0..n {
                    a.data.swap(pivot * n + k, col * n + k);
                    inv.data.swap(pivot * n + k, col * n + k);
                }
            }
            let p = a[(col, col)].inv().expect("nonzero pivot");
            for k in 0..n {
                a[(col, k)] = &a[(col, k)] * &p;
                inv[(col, k)] = &inv[(col, k)] * &p;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for k in 0..n {
                    a[(r, k)] = &a[(r, k)] - &(&f * &a[(col, k)]);
                    inv[(r, k)] = &inv[(r, k)] - &(&f * &inv[(col, k)]);
                }
            }
        }
        Some(inv)
    }

    pub fn to_poly(&self) -> PolyMatrix {
        self.map(|c| Poly::constant(c.clone()))
    }
}

impl PolyMatrix {
    /// Entrywise constants, or the first entry that still depends on a generator.
    pub fn to_const(&self) -> Result<ConstMatrix, Error> {
        self.try_map(|p| p.as_constant().ok_or_else(|| Error::UnboundParameter(p.render())))
    }

    pub fn conj_transpose(&self) -> PolyMatrix {
        self.transpose().map(|x| x.conj())
    }

    pub fn is_zero(&self) -> bool {
        is_zero_matrix(&PolyRing::free(), self)
    }
}

/// Smallest `k` with `(ax⁻¹ az)^k = 0`.
pub fn pencil_nilpotency(ax: &ConstMatrix, az: &ConstMatrix) -> Result<usize, Error> {
    if ax.n != az.n {
        return Err(Error::Dimension("A_x and A_z differ in size".into()));
    }
    let inv = ax.inverse().ok_or(Error::SingularAx)?;
    let m = inv.mul(az);
    let mut power = m.clone();
    for k in 1..=ax.n.max(1) {
        if power.is_zero() {
            return Ok(k);
        }
        power = power.mul(&m);
    }
    Err(Error::NotNilpotent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{parse_poly, Var};
    use proptest::prelude::*;

    fn skew(n: usize, upper: &[i64]) -> ConstMatrix {
        let mut m = ConstMatrix::zeros(n);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                m[(i, j)] = GaussianRational::from_int(upper[k]);
                m[(j, i)] = GaussianRational::from_int(-upper[k]);
                k += 1;
            }
        }
        m
    }

    #[test]
    fn identity_determinant() {
        assert_eq!(ConstMatrix::identity(3).det(), GaussianRational::one());
        assert_eq!(ConstMatrix::zeros(0).det(), GaussianRational::one());
    }

    #[test]
    fn two_by_two_pfaffian_is_the_entry() {
        let ring = PolyRing::free();
        let a = Poly::var(Var::C(1, 2));
        let m = Matrix::from_rows(vec![vec![Poly::zero(), a.clone()], vec![-&a, Poly::zero()]]).unwrap();
        assert_eq!(pfaffian(&ring, &m).unwrap(), a);
    }

    #[test]
    fn pfaffian_rejects_non_skew() {
        assert_eq!(ConstMatrix::identity(2).pf(), Err(Error::NotSkew));
    }

    #[test]
    fn four_by_four_pfaffian_formula() {
        // pf = c12 c34 - c13 c24 + c14 c23
        let ring = PolyRing::free();
        let m = Matrix::from_fn(4, |i, j| {
            let (i, j) = (i as u8 + 1, j as u8 + 1);
            match i.cmp(&j) {
                std::cmp::Ordering::Less => Poly::var(Var::C(i, j)),
                std::cmp::Ordering::Greater => -Poly::var(Var::C(j, i)),
                std::cmp::Ordering::Equal => Poly::zero(),
            }
        });
        let expected = parse_poly("c12*c34 - c13*c24 + c14*c23").unwrap();
        assert_eq!(pfaffian(&ring, &m).unwrap(), expected);
        assert_eq!(determinant(&ring, &m), expected.pow(2));
    }

    #[test]
    fn inverse_round_trip() {
        let m = ConstMatrix::from_ints(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), ConstMatrix::identity(3));
        assert!(ConstMatrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn nilpotency_examples() {
        let jordan = ConstMatrix::from_ints(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(pencil_nilpotency(&ConstMatrix::identity(3), &jordan), Ok(3));
        assert_eq!(pencil_nilpotency(&ConstMatrix::identity(3), &ConstMatrix::zeros(3)), Ok(1));
        assert_eq!(pencil_nilpotency(&ConstMatrix::zeros(3), &jordan), Err(Error::SingularAx));
        assert_eq!(
            pencil_nilpotency(&ConstMatrix::identity(2), &ConstMatrix::identity(2)),
            Err(Error::NotNilpotent)
        );
    }

    fn int_matrix(n: usize) -> impl Strategy<Value = ConstMatrix> {
        proptest::collection::vec(-3i64..4, n * n).prop_map(move |v| {
            Matrix::from_fn(n, |i, j| GaussianRational::from_int(v[i * n + j]))
        })
    }

    fn skew_matrix() -> impl Strategy<Value = ConstMatrix> {
        (1usize..4).prop_flat_map(|half| {
            let n = 2 * half;
            proptest::collection::vec(-4i64..5, n * (n - 1) / 2).prop_map(move |v| skew(n, &v))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn pfaffian_squares_to_determinant(s in skew_matrix()) {
            let pf = s.pf().unwrap();
            prop_assert_eq!(&pf * &pf, s.det());
        }

        #[test]
        fn pfaffian_transformation_law(v in proptest::collection::vec(-4i64..5, 15), m in int_matrix(6)) {
            let s = skew(6, &v);
            let t = congruence(&GaussianField, &m, &s);
            prop_assert_eq!(t.pf().unwrap(), &m.det() * &s.pf().unwrap());
        }

        #[test]
        fn determinant_is_multiplicative(x in int_matrix(4), a in int_matrix(4), y in int_matrix(4)) {
            let xay = x.mul(&a).mul(&y);
            prop_assert_eq!(xay.det(), &(&x.det() * &y.det()) * &a.det());
        }

        #[test]
        fn determinant_matches_elimination(a in int_matrix(5)) {
            let nonsingular = a.inverse().is_some();
            prop_assert_eq!(nonsingular, !a.det().is_zero());
            if let Some(inv) = a.inverse() {
                prop_assert_eq!(&a.det() * &inv.det(), GaussianRational::one());
            }
        }
    }
}
