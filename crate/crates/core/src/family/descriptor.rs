//! Named family members, as built by the `construct` command.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::*;
use crate::ring::parse_poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RepKind {
    VinnikovDet,
    VinnikovAntidiag,
    SelfAdjointDet,
    PfaffDecomposable,
    PfaffIndecomposable,
    SelfAdjPfaffDecomposable,
    SelfAdjPfaffIndecomposable,
}

impl RepKind {
    pub const ALL: [RepKind; 7] = [
        RepKind::VinnikovDet,
        RepKind::VinnikovAntidiag,
        RepKind::SelfAdjointDet,
        RepKind::PfaffDecomposable,
        RepKind::PfaffIndecomposable,
        RepKind::SelfAdjPfaffDecomposable,
        RepKind::SelfAdjPfaffIndecomposable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RepKind::VinnikovDet => "vinnikov-det",
            RepKind::VinnikovAntidiag => "vinnikov-antidiag",
            RepKind::SelfAdjointDet => "selfadjoint-det",
            RepKind::PfaffDecomposable => "pfaff-decomposable",
            RepKind::PfaffIndecomposable => "pfaff-indecomposable",
            RepKind::SelfAdjPfaffDecomposable => "selfadjoint-pfaff-decomposable",
            RepKind::SelfAdjPfaffIndecomposable => "selfadjoint-pfaff-indecomposable",
        }
    }

    /// Whether the member is fixed by a root `t` alone (`s = 0`).
    pub fn is_indecomposable(self) -> bool {
        matches!(self, RepKind::PfaffIndecomposable | RepKind::SelfAdjPfaffIndecomposable)
    }

    pub fn uses_lambda_form(self) -> bool {
        !matches!(self, RepKind::VinnikovDet | RepKind::VinnikovAntidiag | RepKind::SelfAdjointDet)
    }
}

impl fmt::Display for RepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RepKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<RepKind, Error> {
        RepKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::PreconditionViolated(format!("unknown family kind `{s}`")))
    }
}

/// A family member: kind, curve and point. `t` and `s` are polynomials so that
/// the symbolic point and the root `t = λ` can be named.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DescriptorDoc", into = "DescriptorDoc")]
pub struct RepDescriptor {
    pub kind: RepKind,
    pub curve: CurveSpec,
    pub t: Poly,
    pub s: Poly,
    /// Overall sign of the self-adjoint 3×3 form; 1 for every other kind.
    pub sign: i8,
}

impl RepDescriptor {
    pub fn new(kind: RepKind, curve: CurveSpec, t: Poly, s: Poly) -> RepDescriptor {
        RepDescriptor { kind, curve, t, s, sign: 1 }
    }

    /// Parses a point coordinate: `symbolic`, a scalar, or a polynomial in the
    /// curve parameters such as `l`.
    pub fn parse_coordinate(text: &str, generator: Var) -> Result<Poly, Error> {
        if text.trim() == "symbolic" {
            Ok(Poly::var(generator))
        } else {
            parse_poly(text)
        }
    }

    fn render_coordinate(p: &Poly, generator: Var) -> String {
        if *p == Poly::var(generator) {
            "symbolic".into()
        } else {
            p.as_constant().map(|c| c.to_string()).unwrap_or_else(|| p.render())
        }
    }

    pub fn build(&self) -> Result<Pencil, Error> {
        let (c, t, s) = (&self.curve, &self.t, &self.s);
        if self.kind.is_indecomposable() && !s.is_zero() {
            return Err(Error::PreconditionViolated("indecomposable members have s = 0".into()));
        }
        match self.kind {
            RepKind::VinnikovDet => vinnikov_detrep(c, t, s),
            RepKind::VinnikovAntidiag => vinnikov_antidiag(c, t, s),
            RepKind::SelfAdjointDet => selfadjoint_detrep(c, t, s, self.sign),
            RepKind::PfaffDecomposable => pfaffian_decomposable(c, t, s),
            RepKind::PfaffIndecomposable => pfaffian_indecomposable(c, t),
            RepKind::SelfAdjPfaffDecomposable => selfadjoint_pfaffian_decomposable(c, t, s),
            RepKind::SelfAdjPfaffIndecomposable => selfadjoint_pfaffian_indecomposable(c, t),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct DescriptorDoc {
    kind: String,
    curve: CurveSpec,
    t: String,
    s: String,
    #[serde(default = "plus_one", skip_serializing_if = "is_plus_one")]
    sign: i8,
}

fn plus_one() -> i8 {
    1
}

fn is_plus_one(v: &i8) -> bool {
    *v == 1
}

impl From<RepDescriptor> for DescriptorDoc {
    fn from(d: RepDescriptor) -> DescriptorDoc {
        DescriptorDoc {
            kind: d.kind.name().into(),
            curve: d.curve,
            t: RepDescriptor::render_coordinate(&d.t, Var::T),
            s: RepDescriptor::render_coordinate(&d.s, Var::S),
            sign: d.sign,
        }
    }
}

impl TryFrom<DescriptorDoc> for RepDescriptor {
    type Error = Error;
    fn try_from(d: DescriptorDoc) -> Result<RepDescriptor, Error> {
        Ok(RepDescriptor {
            kind: d.kind.parse()?,
            curve: d.curve,
            t: RepDescriptor::parse_coordinate(&d.t, Var::T)?,
            s: RepDescriptor::parse_coordinate(&d.s, Var::S)?,
            sign: d.sign,
        })
    }
}
