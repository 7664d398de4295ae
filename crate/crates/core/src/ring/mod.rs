//! Exact scalar and polynomial arithmetic.
//!
//! Scalars live in ℚ(i). Polynomials carry the parameters of a Weierstrass
//! cubic and are kept in normal form modulo the point relation
//! `s^2 = f(t)` by [`PolyRing`], which every matrix routine takes as its
//! arithmetic context.

mod curve;
mod parse;
mod poly;
mod scalar;

pub use curve::{convert_curve_form, CurveConversion, CurveForm, CurveSpec, Param};
pub use parse::parse_poly;
pub use poly::{upper_pairs, Mono, Poly, Var, NVARS};
pub use scalar::{parse_scalar, rational_sqrt, render_rational, GaussianRational, Rational};

#[cfg(test)]
pub(crate) use scalar::rat;

use std::fmt::Debug;

use num_traits::{One, Zero};

/// Arithmetic context for matrix kernels.
pub trait Ring {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

/// The field ℚ(i).
#[derive(Clone, Copy, Debug, Default)]
pub struct GaussianField;

impl Ring for GaussianField {
    type Elem = GaussianRational;

    fn zero(&self) -> GaussianRational {
        GaussianRational::zero()
    }
    fn one(&self) -> GaussianRational {
        GaussianRational::one()
    }
    fn add(&self, a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
        a + b
    }
    fn neg(&self, a: &GaussianRational) -> GaussianRational {
        -a
    }
    fn mul(&self, a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
        a * b
    }
    fn is_zero(&self, a: &GaussianRational) -> bool {
        a.is_zero()
    }
    fn sub(&self, a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
        a - b
    }
}

/// Polynomials over ℚ(i), optionally modulo `s^2 = rhs`, where `rhs` is free of `s`.
/// Products are reduced eagerly, so elements are always in normal form
/// (degree at most one in `s`) when built through this context.
#[derive(Clone, Debug, Default)]
pub struct PolyRing {
    s_squared: Option<Poly>,
}

impl PolyRing {
    /// Plain polynomial arithmetic with no relation.
    pub fn free() -> PolyRing {
        PolyRing { s_squared: None }
    }

    pub fn with_relation(s_squared: Poly) -> PolyRing {
        assert!(!s_squared.contains(Var::S), "the value of s^2 must not involve s");
        PolyRing { s_squared: Some(s_squared) }
    }

    /// What `s^2` rewrites to, if a relation is active.
    pub fn s_squared(&self) -> Option<&Poly> {
        self.s_squared.as_ref()
    }

    /// Rewrites every `s^e` with `e >= 2` as `s^(e mod 2) * rhs^(e div 2)`.
    pub fn normalize(&self, p: &Poly) -> Poly {
        let Some(rhs) = &self.s_squared else {
            return p.clone();
        };
        if p.degree_in(Var::S) < 2 {
            return p.clone();
        }
        let mut powers: Vec<Poly> = vec![Poly::one()];
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            let e = m.exp(Var::S);
            if e < 2 {
                out.add_term(*m, c);
                continue;
            }
            let half = (e / 2) as usize;
            while powers.len() <= half {
                let next = powers.last().unwrap() * rhs;
                powers.push(next);
            }
            let rest = m.with_exp(Var::S, e % 2);
            for (rm, rc) in powers[half].terms() {
                out.add_term(rest.mul(rm), &(c * rc));
            }
        }
        out
    }

    pub fn equal(&self, a: &Poly, b: &Poly) -> bool {
        self.normalize(&(a - b)).is_zero()
    }

    pub fn pow(&self, p: &Poly, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = self.mul(&acc, p);
        }
        acc
    }

    /// Substitutes and re-normalizes.
    pub fn substitute(&self, p: &Poly, subs: &std::collections::BTreeMap<Var, Poly>) -> Poly {
        self.normalize(&p.substitute(subs))
    }
}

impl Ring for PolyRing {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        Poly::one()
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a + b
    }
    fn neg(&self, a: &Poly) -> Poly {
        -a
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.normalize(&(a * b))
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a - b
    }
}
