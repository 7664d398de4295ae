//! The congruence group fixing the canonical pair, the two elimination stages
//! that bring a pfaffian representation to normal form, and the classifier.

mod group;

pub use group::{complete_group_element, preserves_pair, random_group_element, Branch, GroupElement, TriangleBlock};

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::Error;
use crate::family::{canonical_skew_pair, general_pfaffian_family, satisfies_curve, CoeffMap};
use crate::pencil::{Matrix, Pencil};
use crate::ring::{CurveSpec, GaussianRational, Param, Poly, PolyRing, Var};

type GR = GaussianRational;

fn entry(c: &CoeffMap, i: u8, j: u8) -> Result<GR, Error> {
    c.get(i, j).as_constant().ok_or_else(|| Error::UnboundParameter(format!("c{i}{j} = {}", c.get(i, j).render())))
}

/// `M·Skew(c)·Mᵗ` for a numeric coefficient map.
pub fn act(g: &GroupElement, c: &CoeffMap) -> Result<CoeffMap, Error> {
    let s = c.skew_matrix().to_const()?;
    let m = &g.realized;
    Ok(CoeffMap::from_matrix(&m.mul(&s).mul(&m.transpose()).to_poly()))
}

fn lambda_spec(lambda: &GR) -> CurveSpec {
    CurveSpec::lambda(Param::value(lambda.clone()))
}

/// First elimination: `c13 = c23 = c46 = c56 = c35 = 0` and `c16 = c34`,
/// with the free choices `p11 = 1`, `p21 = p31 = 0`.
pub fn stage1_eliminate(c: &CoeffMap, lambda: &GR) -> Result<(GroupElement, CoeffMap), Error> {
    if !satisfies_curve(&lambda_spec(lambda), c)? {
        return Err(Error::ConstraintsViolated("pf(x J_I + y Skew(c) + z J_N) is not ±F".into()));
    }
    let e = |i, j| entry(c, i, j);
    let (c13, c16, c23, c34, c35, c46, c56) = (e(1, 3)?, e(1, 6)?, e(2, 3)?, e(3, 4)?, e(3, 5)?, e(4, 6)?, e(5, 6)?);
    let p13 = &(&(&(&c16 - &c34) + &c35.pow(2)) - &(&c23 * &c56)) * &GR::from_frac(1, 2);
    let p1 = TriangleBlock::new(GR::one(), -&c35, p13);
    let p2 = TriangleBlock::new(GR::zero(), -&c23, -&c13);
    let p3 = TriangleBlock::new(GR::zero(), c56, c46);
    let g = complete_group_element(p1, p2, p3, Branch::First)?;
    let reduced = act(&g, c)?;
    debug_assert!(is_stage1_shape(&reduced));
    Ok((g, reduced))
}

/// `c13 = c23 = c35 = c46 = c56 = 0` and `c16 = c34`.
pub fn is_stage1_shape(c: &CoeffMap) -> bool {
    [(1, 3), (2, 3), (3, 5), (4, 6), (5, 6)].iter().all(|&(i, j)| c.get(i, j).is_zero()) && c.get(1, 6) == c.get(3, 4)
}

/// Stage-1 shape with `c45 = 0` as well.
pub fn is_reduced_shape(c: &CoeffMap) -> bool {
    is_stage1_shape(c) && c.get(4, 5).is_zero()
}

/// How `c12`, `c15`, `c45` move under `[[a·Id, b·Id], [c·Id, d·Id]]`, with
/// `a, b, c, d = p11, p21, p31, p41` and every `c_ij` left symbolic.
#[derive(Clone, Debug)]
pub struct DiagonalLaw {
    pub c12: Poly,
    pub c15: Poly,
    pub c45: Poly,
}

/// Derived once by congruence with a generic diagonal element.
pub fn diagonal_law() -> &'static DiagonalLaw {
    static LAW: OnceLock<DiagonalLaw> = OnceLock::new();
    LAW.get_or_init(|| {
        let coeff = |k: u8| Poly::var(Var::P(k, 1));
        let m = Matrix::from_fn(6, |i, j| match (i < 3, j < 3, i % 3 == j % 3) {
            (_, _, false) => Poly::zero(),
            (true, true, _) => coeff(1),
            (true, false, _) => coeff(2),
            (false, true, _) => coeff(3),
            (false, false, _) => coeff(4),
        });
        let moved = crate::pencil::congruence(&PolyRing::free(), &m, &CoeffMap::symbolic().skew_matrix());
        DiagonalLaw { c12: moved[(0, 1)].clone(), c15: moved[(0, 4)].clone(), c45: moved[(3, 4)].clone() }
    })
}

/// Evaluates a law entry with the current `c` and the given `p`s, leaving the rest symbolic.
fn specialize(law: &Poly, c: &CoeffMap, ps: &[(u8, GR)]) -> Poly {
    let mut subs: BTreeMap<Var, Poly> = c.assignment();
    subs.extend(ps.iter().map(|(k, v)| (Var::P(*k, 1), Poly::constant(v.clone()))));
    law.substitute(&subs)
}

fn coefficients_in(p: &Poly, v: Var) -> Vec<GR> {
    (0..=p.degree_in(v)).map(|e| p.coeff_of(v, e).as_constant().expect("only one unknown remains")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage2 {
    /// Diagonal elements in the order applied.
    pub steps: Vec<GroupElement>,
    pub c: CoeffMap,
    /// False when `c12 ≠ 0` could not be scaled to 1 over ℚ(i).
    pub normalized: bool,
}

impl Stage2 {
    /// The product of the steps.
    pub fn element(&self) -> GroupElement {
        self.steps.iter().fold(GroupElement::identity(), |acc, g| g.compose(&acc))
    }
}

/// Second elimination by diagonal elements: `c45 → 0`, then `c12 → 0` when
/// `c15 ≠ 0`, else `c12 → 1` when it is a square; finally the sign of `c15`
/// is made positive.
pub fn stage2_diagonal(c: &CoeffMap, _lambda: &GR) -> Result<Stage2, Error> {
    if !is_stage1_shape(c) {
        return Err(Error::PreconditionViolated("stage 2 expects the stage-1 shape".into()));
    }
    let law = diagonal_law();
    let mut steps = Vec::new();
    let mut c = c.clone();
    let mut apply = |g: GroupElement, c: &mut CoeffMap| -> Result<(), Error> {
        *c = act(&g, c)?;
        steps.push(g);
        Ok(())
    };
    let (zero, one) = (GR::zero(), GR::one());

    if !entry(&c, 4, 5)?.is_zero() {
        // c = 1, a = 1: c45' is a quadratic in d
        let q = coefficients_in(&specialize(&law.c45, &c, &[(1, one.clone()), (3, one.clone())]), Var::P(4, 1));
        let (k0, k1, k2) = (&q[0], &q[1], &q[2]);
        let disc = &k1.pow(2) - &(&(k0 * k2) * &GR::from_int(4));
        let root = disc.sqrt().ok_or_else(|| Error::FieldExtensionRequired(format!("sqrt({disc})")))?;
        let d = &(&root - k1) * &(k2 * &GR::from_int(2)).inv().expect("c45 != 0");
        let b = &d - &one;
        apply(GroupElement::diagonal(&one, &b, &one, &d)?, &mut c)?;
    }
    if !entry(&c, 1, 5)?.is_zero() {
        if !entry(&c, 1, 2)?.is_zero() {
            // a = d = 1, c = 0: c12' is linear in b
            let q = coefficients_in(&specialize(&law.c12, &c, &[(1, one.clone()), (3, zero.clone())]), Var::P(2, 1));
            let b = -&(&q[0] * &q[1].inv().expect("c15 != 0"));
            apply(GroupElement::diagonal(&one, &b, &zero, &one)?, &mut c)?;
        }
        if !entry(&c, 1, 5)?.is_positive() {
            apply(GroupElement::diagonal(&zero, &one, &-&one, &zero)?, &mut c)?;
        }
        return Ok(Stage2 { steps, c, normalized: true });
    }
    let c12 = entry(&c, 1, 2)?;
    if c12.is_zero() || c12.is_one() {
        return Ok(Stage2 { steps, c, normalized: true });
    }
    match c12.sqrt() {
        Some(root) => {
            let a = root.inv().expect("nonzero");
            apply(GroupElement::diagonal(&a, &zero, &zero, &root)?, &mut c)?;
            Ok(Stage2 { steps, c, normalized: true })
        }
        None => Ok(Stage2 { steps, c, normalized: false }),
    }
}

/// `t = 2·c16 + 1 + λ`, `s = c15`, checked against `s² = t(t-1)(t-λ)`.
pub fn extract_parameters(c: &CoeffMap, lambda: &GR) -> Result<(GR, GR), Error> {
    let t = &(&(&entry(c, 1, 6)? * &GR::from_int(2)) + &one()) + lambda;
    let s = entry(c, 1, 5)?;
    let rhs = &(&t * &(&t - &one())) * &(&t - lambda);
    if s.pow(2) != rhs {
        return Err(Error::RelationViolated(format!("s^2 = {} but t(t-1)(t-lambda) = {rhs} at t = {t}", s.pow(2))));
    }
    Ok((t, s))
}

fn one() -> GR {
    GR::one()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Decomposable { t: GR, s: GR },
    Indecomposable { t: GR, normalized: bool, scale: GR },
}

impl Verdict {
    pub fn t(&self) -> &GR {
        match self {
            Verdict::Decomposable { t, .. } | Verdict::Indecomposable { t, .. } => t,
        }
    }

    pub fn is_decomposable(&self) -> bool {
        matches!(self, Verdict::Decomposable { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    /// Non-identity group elements applied, in order.
    pub trace: Vec<GroupElement>,
    /// The reduced `y`-coefficients.
    pub representative: CoeffMap,
}

impl Classification {
    /// The product of the trace: maps the input to the representative.
    pub fn element(&self) -> GroupElement {
        self.trace.iter().fold(GroupElement::identity(), |acc, g| g.compose(&acc))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("classifications always serialize")
    }
}

impl Serialize for Classification {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut map = ser.serialize_map(None)?;
        match &self.verdict {
            Verdict::Decomposable { t, s } => {
                map.serialize_entry("verdict", "decomposable")?;
                map.serialize_entry("t", &t.to_string())?;
                map.serialize_entry("s", &s.to_string())?;
            }
            Verdict::Indecomposable { t, normalized, scale } => {
                map.serialize_entry("verdict", "indecomposable")?;
                map.serialize_entry("t", &t.to_string())?;
                map.serialize_entry("normalized", normalized)?;
                map.serialize_entry("scale", &scale.to_string())?;
            }
        }
        map.serialize_entry("trace_length", &self.trace.len())?;
        map.end()
    }
}

/// Reduces a pfaffian representation `x·J_I + y·A_y + z·J_N` of `F_λ` to its
/// orbit representative.
pub fn classify(p: &Pencil, lambda: &GR) -> Result<Classification, Error> {
    if p.n() != 6 {
        return Err(Error::Dimension(format!("classification needs a 6x6 pencil, got {0}x{0}", p.n())));
    }
    if !p.is_skew() {
        return Err(Error::NotSkew);
    }
    let (ji, jn) = canonical_skew_pair();
    if p.ax != ji.to_poly() || p.az != jn.to_poly() {
        return Err(Error::NotCanonicalPair);
    }
    let spec = lambda_spec(lambda);
    let pf = p.pfaffian()?;
    let f = spec.curve_poly();
    if pf != f && pf != -&f {
        return Err(Error::NotOnCurve(format!("pf = {}", pf.render())));
    }
    let c = CoeffMap::from_matrix(&p.ay.to_const()?.to_poly());
    let (g1, c) = stage1_eliminate(&c, lambda)?;
    let stage2 = stage2_diagonal(&c, lambda)?;
    let (t, s) = extract_parameters(&stage2.c, lambda)?;
    let c12 = entry(&stage2.c, 1, 2)?;
    let verdict = if c12.is_zero() {
        Verdict::Decomposable { t, s }
    } else {
        Verdict::Indecomposable { t, normalized: stage2.normalized, scale: c12 }
    };
    let trace = std::iter::once(g1).chain(stage2.steps).filter(|g| !g.is_identity()).collect();
    Ok(Classification { verdict, trace, representative: stage2.c })
}

/// The representative pencil `x·J_I + y·Skew(c) + z·J_N` together with its classification.
pub fn reduce(p: &Pencil, lambda: &GR) -> Result<(Pencil, Classification), Error> {
    let class = classify(p, lambda)?;
    let rep = general_pfaffian_family(&lambda_spec(lambda), &class.representative)?;
    Ok((rep, class))
}
