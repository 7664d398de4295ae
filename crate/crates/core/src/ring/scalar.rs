//! Exact scalars: arbitrary-precision rationals and Gaussian rationals `a + b*i`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Canonical rational number (reduced, positive denominator).
pub type Rational = num_rational::BigRational;

pub(crate) fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Renders a rational as `p` or `p/q`.
pub fn render_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// An element of the field ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::real(rat(n, d))
    }

    pub fn i() -> Self {
        Self { re: Rational::zero(), im: Rational::one() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|z|^2`, always a non-negative rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Fixed total order used to pick canonical signs: `re > 0`, or `re = 0` and `im > 0`.
    pub fn is_positive(&self) -> bool {
        self.re.is_positive() || (self.re.is_zero() && self.im.is_positive())
    }

    /// Exact square root in ℚ(i) when one exists. The returned root is the
    /// positive one in the sense of [`GaussianRational::is_positive`] (or zero).
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let modulus = rational_sqrt(&self.norm_sqr())?;
        let two = rat(2, 1);
        let x = rational_sqrt(&((&modulus + &self.re) / &two))?;
        let mut y = rational_sqrt(&((&modulus - &self.re) / &two))?;
        if self.im.is_negative() {
            y = -y;
        }
        let mut root = Self { re: x, im: y };
        if !root.is_positive() {
            root = -root;
        }
        debug_assert_eq!(&(&root * &root), self);
        Some(root)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_real().then(|| self.re.clone())
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self { re: Rational::zero(), im: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::real(Rational::one())
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for GaussianRational {
    fn from(q: Rational) -> Self {
        Self::real(q)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussianRational::real(&self.re * &o.re);
        }
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero; use [`GaussianRational::inv`] to handle it.
    fn div(self, o: &GaussianRational) -> GaussianRational {
        self * &o.inv().expect("division by zero in ℚ(i)")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: &GaussianRational) -> GaussianRational { (&self).$m(o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &GaussianRational) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, o: &GaussianRational) {
        *self = &*self * o;
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return f.write_str(&render_rational(&self.re));
        }
        let im = render_rational(&self.im.abs());
        if self.re.is_zero() {
            let sign = if self.im.is_negative() { "-" } else { "" };
            return write!(f, "{sign}{im}*i");
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{sign}{im}*i", render_rational(&self.re))
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussianRational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        parse_scalar(s)
    }
}

/// Parses the exact scalar grammar: `±p/q`, `±p/q±r/s*i`, `±r/s*i`, and the
/// shorthands `i`, `-i`, `p+i`. Whitespace is not allowed inside a scalar
/// except around the outer edges.
pub fn parse_scalar(text: &str) -> Result<GaussianRational, Error> {
    let malformed = || Error::MalformedScalar(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(malformed());
    }
    let bytes = s.as_bytes();
    let mut pos = 0usize;

    // One signed term: [sign] (rational [*i] | i). Returns (value, is_imaginary).
    let parse_term = |pos: &mut usize, first: bool| -> Result<(Rational, bool), Error> {
        let mut negative = false;
        match bytes.get(*pos) {
            Some(b'+') if !first => *pos += 1,
            Some(b'-') => {
                negative = true;
                *pos += 1
            }
            Some(b'+') => *pos += 1,
            _ if !first => return Err(malformed()),
            _ => {}
        }
        let value = if bytes.get(*pos) == Some(&b'i') {
            *pos += 1;
            return Ok((if negative { -Rational::one() } else { Rational::one() }, true));
        } else {
            let num = take_digits(bytes, pos).ok_or_else(malformed)?;
            let den = if bytes.get(*pos) == Some(&b'/') {
                *pos += 1;
                take_digits(bytes, pos).ok_or_else(malformed)?
            } else {
                BigInt::one()
            };
            if den.is_zero() {
                return Err(Error::ZeroDenominator(text.to_string()));
            }
            Rational::new(num, den)
        };
        let value = if negative { -value } else { value };
        if s[*pos..].starts_with("*i") {
            *pos += 2;
            Ok((value, true))
        } else {
            Ok((value, false))
        }
    };

    let (first, first_imag) = parse_term(&mut pos, true)?;
    if pos == bytes.len() {
        return Ok(if first_imag {
            GaussianRational::new(Rational::zero(), first)
        } else {
            GaussianRational::real(first)
        });
    }
    if first_imag {
        return Err(malformed());
    }
    let (second, second_imag) = parse_term(&mut pos, false)?;
    if !second_imag || pos != bytes.len() {
        return Err(malformed());
    }
    Ok(GaussianRational::new(first, second))
}

fn take_digits(bytes: &[u8], pos: &mut usize) -> Option<BigInt> {
    let start = *pos;
    while bytes.get(*pos).is_some_and(u8::is_ascii_digit) {
        *pos += 1;
    }
    if *pos == start {
        return None;
    }
    std::str::from_utf8(&bytes[start..*pos]).ok()?.parse().ok()
}
