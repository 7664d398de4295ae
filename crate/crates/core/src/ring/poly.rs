//! Sparse multivariate polynomials over ℚ(i).
//!
//! A single variable set covers everything the library manipulates: the
//! projective coordinates `x, y, z`, the curve parameters `l` (λ), `a` (α),
//! `b` (β), the point coordinates `t, s`, the fifteen entries `cij` of a
//! generic skew 6×6 matrix, and the twelve group parameters `pij`.
//! Reduction modulo the curve relation is not done here; see
//! [`PolyRing`](super::PolyRing).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::scalar::GaussianRational;

/// Number of distinct variables.
pub const NVARS: usize = 35;

const C_BASE: usize = 8;
const P_BASE: usize = C_BASE + 15;

/// A polynomial generator.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
    Lambda,
    Alpha,
    Beta,
    T,
    S,
    /// Upper-triangle entry `c_ij` of a skew 6×6 matrix, `1 <= i < j <= 6`.
    C(u8, u8),
    /// Group parameter `p_ij`, `1 <= i <= 4`, `1 <= j <= 3`.
    P(u8, u8),
}

fn c_offset(i: u8, j: u8) -> usize {
    assert!(1 <= i && i < j && j <= 6, "c{i}{j} is not an upper-triangle index");
    let (i, j) = (i as usize - 1, j as usize - 1);
    // rows 0..i contribute (5 + 4 + ...) entries
    i * (11 - i) / 2 + (j - i - 1)
}

impl Var {
    pub const XYZ: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
            Var::Lambda => 3,
            Var::Alpha => 4,
            Var::Beta => 5,
            Var::T => 6,
            Var::S => 7,
            Var::C(i, j) => C_BASE + c_offset(i, j),
            Var::P(i, j) => {
                assert!((1..=4).contains(&i) && (1..=3).contains(&j), "p{i}{j} out of range");
                P_BASE + (i as usize - 1) * 3 + (j as usize - 1)
            }
        }
    }

    pub fn from_index(k: usize) -> Var {
        match k {
            0 => Var::X,
            1 => Var::Y,
            2 => Var::Z,
            3 => Var::Lambda,
            4 => Var::Alpha,
            5 => Var::Beta,
            6 => Var::T,
            7 => Var::S,
            k if k < P_BASE => {
                let off = k - C_BASE;
                upper_pairs().nth(off).map(|(i, j)| Var::C(i, j)).unwrap()
            }
            k if k < NVARS => {
                let off = k - P_BASE;
                Var::P((off / 3 + 1) as u8, (off % 3 + 1) as u8)
            }
            _ => panic!("variable index {k} out of range"),
        }
    }

    pub fn name(self) -> String {
        match self {
            Var::X => "x".into(),
            Var::Y => "y".into(),
            Var::Z => "z".into(),
            Var::Lambda => "l".into(),
            Var::Alpha => "a".into(),
            Var::Beta => "b".into(),
            Var::T => "t".into(),
            Var::S => "s".into(),
            Var::C(i, j) => format!("c{i}{j}"),
            Var::P(i, j) => format!("p{i}{j}"),
        }
    }

    pub fn parse(name: &str) -> Option<Var> {
        let v = match name {
            "x" => Var::X,
            "y" => Var::Y,
            "z" => Var::Z,
            "l" => Var::Lambda,
            "a" => Var::Alpha,
            "b" => Var::Beta,
            "t" => Var::T,
            "s" => Var::S,
            _ => {
                let b = name.as_bytes();
                if b.len() != 3 || !b[1].is_ascii_digit() || !b[2].is_ascii_digit() {
                    return None;
                }
                let (i, j) = (b[1] - b'0', b[2] - b'0');
                match b[0] {
                    b'c' if 1 <= i && i < j && j <= 6 => Var::C(i, j),
                    b'p' if (1..=4).contains(&i) && (1..=3).contains(&j) => Var::P(i, j),
                    _ => return None,
                }
            }
        };
        Some(v)
    }

    pub fn is_coordinate(self) -> bool {
        matches!(self, Var::X | Var::Y | Var::Z)
    }
}

/// All `(i, j)` with `1 <= i < j <= 6`, row by row.
pub fn upper_pairs() -> impl Iterator<Item = (u8, u8)> {
    (1..=6u8).flat_map(|i| (i + 1..=6).map(move |j| (i, j)))
}

/// Exponent vector. The derived order is lexicographic in variable index,
/// so iterating a term map in reverse lists `x` before `y` before `z`, then
/// `l, a, b, t, s`, each from high to low degree.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono(pub [u8; NVARS]);

impl Mono {
    pub const ONE: Mono = Mono([0; NVARS]);

    pub fn var(v: Var, e: u8) -> Mono {
        let mut m = Mono::ONE;
        m.0[v.index()] = e;
        m
    }

    pub fn exp(&self, v: Var) -> u8 {
        self.0[v.index()]
    }

    pub fn with_exp(mut self, v: Var, e: u8) -> Mono {
        self.0[v.index()] = e;
        self
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut out = [0u8; NVARS];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.0[k].checked_add(o.0[k]).expect("exponent overflow");
        }
        Mono(out)
    }

    pub fn coordinate_degree(&self) -> u32 {
        self.0[..3].iter().map(|&e| e as u32).sum()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, u8)> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(k, &e)| (Var::from_index(k), e))
    }

    /// Splits into the `x, y, z` part and the parameter part.
    pub fn split_coordinates(&self) -> (Mono, Mono) {
        let mut xyz = Mono::ONE;
        let mut rest = *self;
        for k in 0..3 {
            xyz.0[k] = self.0[k];
            rest.0[k] = 0;
        }
        (xyz, rest)
    }

    fn render(&self) -> String {
        self.vars()
            .map(|(v, e)| if e == 1 { v.name() } else { format!("{}^{e}", v.name()) })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Mono::ONE {
            f.write_str("1")
        } else {
            f.write_str(&self.render())
        }
    }
}

/// A polynomial: finite map from monomials to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, GaussianRational>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Poly {
        Poly::monomial(Mono::ONE, c)
    }

    pub fn int(n: i64) -> Poly {
        Poly::constant(GaussianRational::from_int(n))
    }

    pub fn frac(n: i64, d: i64) -> Poly {
        Poly::constant(GaussianRational::from_frac(n, d))
    }

    pub fn var(v: Var) -> Poly {
        Poly::monomial(Mono::var(v, 1), GaussianRational::one())
    }

    pub fn monomial(m: Mono, c: GaussianRational) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, GaussianRational)>) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&Mono::ONE).cloned(),
            _ => None,
        }
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn degree_in(&self, v: Var) -> u8 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    /// All variables occurring in the polynomial, in index order.
    pub fn vars(&self) -> Vec<Var> {
        (0..NVARS)
            .filter(|&k| self.terms.keys().any(|m| m.0[k] > 0))
            .map(Var::from_index)
            .collect()
    }

    pub fn add_term(&mut self, m: Mono, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect() }
    }

    /// Raw power (no reduction).
    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Conjugates coefficients; every generator is treated as real.
    pub fn conj(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect() }
    }

    /// Collects the coefficient of `v^e`, as a polynomial free of `v`.
    pub fn coeff_of(&self, v: Var, e: u8) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exp(v) == e)
                .map(|(m, c)| (m.with_exp(v, 0), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of `x^dx y^dy z^dz`, as a polynomial in the remaining variables.
    pub fn coeff_xyz(&self, dx: u8, dy: u8, dz: u8) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if m.exp(Var::X) == dx && m.exp(Var::Y) == dy && m.exp(Var::Z) == dz {
                out.terms.insert(m.split_coordinates().1, c.clone());
            }
        }
        out
    }

    /// Groups terms by their `x, y, z` monomial.
    pub fn by_coordinates(&self) -> BTreeMap<Mono, Poly> {
        let mut out: BTreeMap<Mono, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (xyz, rest) = m.split_coordinates();
            out.entry(xyz).or_default().terms.insert(rest, c.clone());
        }
        out
    }

    /// Simultaneous substitution of variables by polynomials (no reduction).
    pub fn substitute(&self, subs: &BTreeMap<Var, Poly>) -> Poly {
        if subs.is_empty() {
            return self.clone();
        }
        let mut powers: BTreeMap<(Var, u8), Poly> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut kept = Mono::ONE;
            let mut factor = Poly::constant(c.clone());
            for (v, e) in m.vars() {
                match subs.get(&v) {
                    Some(p) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| p.pow(e as u32));
                        factor = &factor * pw;
                    }
                    None => kept.0[v.index()] = e,
                }
            }
            for (fm, fc) in factor.terms {
                out.add_term(fm.mul(&kept), &fc);
            }
        }
        out
    }

    pub fn substitute_one(&self, v: Var, p: &Poly) -> Poly {
        self.substitute(&BTreeMap::from([(v, p.clone())]))
    }

    /// Evaluates the variables in `values`; the rest stay symbolic.
    pub fn eval(&self, values: &BTreeMap<Var, GaussianRational>) -> Poly {
        let subs = values.iter().map(|(v, c)| (*v, Poly::constant(c.clone()))).collect();
        self.substitute(&subs)
    }

    /// Applies `f` to every coefficient, dropping those that become zero.
    pub fn map_coeffs(&self, f: impl Fn(&GaussianRational) -> GaussianRational) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Renders a polynomial in the canonical grammar, e.g. `-1*x^3 + 1/2*l*t`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| render_term(m, c))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Renders grouped by `x, y, z` monomials, with parameter coefficients in
    /// parentheses, e.g. `-1*x^3 + (1 + 1*l)*x^2*y`.
    pub fn render_grouped(&self) -> String {
        let groups = self.by_coordinates();
        if groups.is_empty() {
            return "0".into();
        }
        groups
            .iter()
            .rev()
            .map(|(xyz, coeff)| {
                let head = match coeff.as_constant() {
                    Some(c) if c.is_real() => c.to_string(),
                    _ => format!("({})", coeff.render()),
                };
                if *xyz == Mono::ONE {
                    head
                } else {
                    format!("{head}*{}", xyz.render())
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn render_term(m: &Mono, c: &GaussianRational) -> String {
    let coeff = if c.is_real() || c.re.is_zero() { c.to_string() } else { format!("({c})") };
    if *m == Mono::ONE {
        coeff
    } else {
        format!("{coeff}*{}", m.render())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl From<GaussianRational> for Poly {
    fn from(c: GaussianRational) -> Poly {
        Poly::constant(c)
    }
}

impl From<Var> for Poly {
    fn from(v: Var) -> Poly {
        Poly::var(v)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let (big, small) = if self.len() >= o.len() { (self, o) } else { (o, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: &Poly) -> Poly { (&self).$m(o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
