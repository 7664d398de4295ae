//! Weierstrass cubics in the two normal forms and their point relations.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::poly::{Poly, Var};
use super::scalar::{parse_scalar, GaussianRational};
use super::PolyRing;
use crate::error::Error;

/// A curve parameter: either a named generator or an exact value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    Symbolic,
    Value(GaussianRational),
}

impl Param {
    pub fn value(v: impl Into<GaussianRational>) -> Param {
        Param::Value(v.into())
    }

    pub fn as_value(&self) -> Option<&GaussianRational> {
        match self {
            Param::Value(v) => Some(v),
            Param::Symbolic => None,
        }
    }

    /// The generator itself when symbolic, otherwise a constant.
    pub fn poly(&self, generator: Var) -> Poly {
        match self {
            Param::Symbolic => Poly::var(generator),
            Param::Value(v) => Poly::constant(v.clone()),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Param::Symbolic => "symbolic".into(),
            Param::Value(v) => v.to_string(),
        }
    }

    pub fn parse(text: &str) -> Result<Param, Error> {
        if text.trim() == "symbolic" {
            Ok(Param::Symbolic)
        } else {
            parse_scalar(text).map(Param::Value)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveForm {
    /// `y z^2 - x (x - y)(x - λ y)`, point relation `s^2 = t (t - 1)(t - λ)`.
    Lambda { lambda: Param },
    /// `-y z^2 + x^3 + α x y^2 + β y^3`, point relation `s^2 = t^3 + α t + β`.
    AB { alpha: Param, beta: Param },
}

/// A Weierstrass cubic together with the relation used to reduce `s`.
///
/// With `twisted` set, the point relation becomes `-s^2 = f(t)`: this is the
/// locus of real points `(t, s)` for the self-adjoint families, whose entries
/// carry `i*s` where the skew families carry `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CurveDoc", into = "CurveDoc")]
pub struct CurveSpec {
    pub form: CurveForm,
    pub twisted: bool,
}

impl CurveSpec {
    pub fn lambda(lambda: Param) -> CurveSpec {
        CurveSpec { form: CurveForm::Lambda { lambda }, twisted: false }
    }

    pub fn ab(alpha: Param, beta: Param) -> CurveSpec {
        CurveSpec { form: CurveForm::AB { alpha, beta }, twisted: false }
    }

    pub fn twisted(mut self) -> CurveSpec {
        self.twisted = true;
        self
    }

    pub fn untwisted(mut self) -> CurveSpec {
        self.twisted = false;
        self
    }

    pub fn is_lambda_form(&self) -> bool {
        matches!(self.form, CurveForm::Lambda { .. })
    }

    /// λ as a polynomial (generator `l` or constant). Panics on the AB form.
    pub fn lambda_poly(&self) -> Poly {
        match &self.form {
            CurveForm::Lambda { lambda } => lambda.poly(Var::Lambda),
            CurveForm::AB { .. } => panic!("lambda_poly called on an AB-form curve"),
        }
    }

    /// `(α, β)` as polynomials. Panics on the λ form.
    pub fn ab_polys(&self) -> (Poly, Poly) {
        match &self.form {
            CurveForm::AB { alpha, beta } => (alpha.poly(Var::Alpha), beta.poly(Var::Beta)),
            CurveForm::Lambda { .. } => panic!("ab_polys called on a lambda-form curve"),
        }
    }

    /// The generators this curve allows besides `x, y, z, t, s`.
    pub fn parameter_generators(&self) -> Vec<Var> {
        match &self.form {
            CurveForm::Lambda { lambda } => {
                if *lambda == Param::Symbolic { vec![Var::Lambda] } else { vec![] }
            }
            CurveForm::AB { alpha, beta } => {
                let mut v = vec![];
                if *alpha == Param::Symbolic {
                    v.push(Var::Alpha);
                }
                if *beta == Param::Symbolic {
                    v.push(Var::Beta);
                }
                v
            }
        }
    }

    /// Rejects polynomials that use a parameter generator foreign to this curve.
    pub fn check_generators(&self, p: &Poly) -> Result<(), Error> {
        let allowed = self.parameter_generators();
        for v in p.vars() {
            let foreign = matches!(v, Var::Lambda | Var::Alpha | Var::Beta) && !allowed.contains(&v);
            if foreign {
                return Err(Error::ForeignGenerator(v.name()));
            }
        }
        Ok(())
    }

    /// The cubic `F(x, y, z)`.
    pub fn curve_poly(&self) -> Poly {
        let x = Poly::var(Var::X);
        let y = Poly::var(Var::Y);
        let z = Poly::var(Var::Z);
        let yz2 = &y * &z.pow(2);
        match &self.form {
            CurveForm::Lambda { lambda } => {
                let l = lambda.poly(Var::Lambda);
                let cubic = &(&x * &(&x - &y)) * &(&x - &(&l * &y));
                &yz2 - &cubic
            }
            CurveForm::AB { alpha, beta } => {
                let a = alpha.poly(Var::Alpha);
                let b = beta.poly(Var::Beta);
                let rest = &(&x.pow(3) + &(&a * &(&x * &y.pow(2)))) + &(&b * &y.pow(3));
                &rest - &yz2
            }
        }
    }

    /// `f(t)`, the right-hand side of the affine relation `s^2 = f(t)`.
    pub fn rhs(&self) -> Poly {
        let t = Poly::var(Var::T);
        match &self.form {
            CurveForm::Lambda { lambda } => {
                let l = lambda.poly(Var::Lambda);
                &(&t * &(&t - &Poly::one())) * &(&t - &l)
            }
            CurveForm::AB { alpha, beta } => {
                &(&t.pow(3) + &(&alpha.poly(Var::Alpha) * &t)) + &beta.poly(Var::Beta)
            }
        }
    }

    /// What `s^2` reduces to: `f(t)`, or `-f(t)` on the twisted locus.
    pub fn s_squared(&self) -> Poly {
        if self.twisted {
            -self.rhs()
        } else {
            self.rhs()
        }
    }

    /// `s^2 - f(t)` (or `s^2 + f(t)` when twisted), unreduced.
    pub fn curve_relation(&self) -> Poly {
        &Poly::var(Var::S).pow(2) - &self.s_squared()
    }

    /// Arithmetic context reducing modulo this curve's point relation.
    pub fn ring(&self) -> PolyRing {
        PolyRing::with_relation(self.s_squared())
    }

    pub fn normalize(&self, p: &Poly) -> Poly {
        self.ring().normalize(p)
    }

    pub fn poly_equal(&self, a: &Poly, b: &Poly) -> bool {
        self.ring().equal(a, b)
    }

    /// Whether `(t, s)` satisfies the point relation identically in the
    /// remaining symbols, modulo the relation itself (so `(t, -s)` qualifies).
    pub fn contains_point(&self, t: &Poly, s: &Poly) -> bool {
        let rel = self.curve_relation();
        let subs = BTreeMap::from([(Var::T, t.clone()), (Var::S, s.clone())]);
        self.normalize(&rel.substitute(&subs)).is_zero()
    }

    pub fn is_smooth(&self) -> Result<bool, Error> {
        match &self.form {
            CurveForm::Lambda { lambda } => {
                let l = lambda.as_value().ok_or_else(|| Error::SymbolicParameters("lambda".into()))?;
                Ok(!l.is_zero() && *l != GaussianRational::from_int(1))
            }
            CurveForm::AB { alpha, beta } => {
                let (Some(a), Some(b)) = (alpha.as_value(), beta.as_value()) else {
                    return Err(Error::SymbolicParameters("alpha, beta".into()));
                };
                Ok(!ab_discriminant(a, b).is_zero())
            }
        }
    }
}

/// `-4 α^3 - 27 β^2`.
pub(crate) fn ab_discriminant(a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
    &(&GaussianRational::from_int(-4) * &a.pow(3)) - &(&GaussianRational::from_int(27) * &b.pow(2))
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.form {
            CurveForm::Lambda { lambda } => write!(f, "lambda-form(l={})", lambda.render())?,
            CurveForm::AB { alpha, beta } => write!(f, "ab-form(a={}, b={})", alpha.render(), beta.render())?,
        }
        if self.twisted {
            f.write_str(" twisted")?;
        }
        Ok(())
    }
}

/// The change of coordinates from the λ form to the AB form.
///
/// With `k = (1 + λ)/3` and `x = u + k y`:
/// `F_AB(u, y, z) = sign * F_λ(u + k y, y, z)`, and an affine point `(t, s)`
/// of the AB curve corresponds to `(t + k, s)` on the λ curve.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveConversion {
    pub alpha: Poly,
    pub beta: Poly,
    pub shift: Poly,
    pub sign: i8,
}

impl CurveConversion {
    /// The substitution matrix `S` with `(x, y, z)^T = S (u, y, z)^T`.
    pub fn substitution(&self) -> [[Poly; 3]; 3] {
        let (o, z) = (Poly::one(), Poly::zero());
        [[o.clone(), self.shift.clone(), z.clone()], [z.clone(), o.clone(), z.clone()], [z.clone(), z, o]]
    }

    /// The AB-form curve, when λ was numeric.
    pub fn ab_spec(&self) -> Result<CurveSpec, Error> {
        match (self.alpha.as_constant(), self.beta.as_constant()) {
            (Some(a), Some(b)) => Ok(CurveSpec::ab(Param::Value(a), Param::Value(b))),
            _ => Err(Error::SymbolicParameters("lambda".into())),
        }
    }

    /// `F_AB(u, y, z)` with α, β replaced by their λ-expressions, in variables `x, y, z`.
    pub fn ab_curve_poly(&self) -> Poly {
        let generic = CurveSpec::ab(Param::Symbolic, Param::Symbolic).curve_poly();
        generic.substitute(&BTreeMap::from([(Var::Alpha, self.alpha.clone()), (Var::Beta, self.beta.clone())]))
    }

    /// `F_λ(u + k y, y, z)` in variables `x, y, z`.
    pub fn pulled_back_lambda_poly(&self, lambda_curve: &CurveSpec) -> Poly {
        let x_new = &Poly::var(Var::X) + &(&self.shift * &Poly::var(Var::Y));
        lambda_curve.curve_poly().substitute_one(Var::X, &x_new)
    }

    /// Whether `F_AB(u, y, z) = sign * F_λ(u + k y, y, z)` holds exactly.
    pub fn identity_holds(&self, lambda_curve: &CurveSpec) -> bool {
        let lhs = self.ab_curve_poly();
        let rhs = self.pulled_back_lambda_poly(lambda_curve).scale(&GaussianRational::from_int(self.sign as i64));
        (&lhs - &rhs).is_zero()
    }

    /// Maps an affine AB-form point to the λ form.
    pub fn to_lambda_point(&self, t: &Poly, s: &Poly) -> (Poly, Poly) {
        (t + &self.shift, s.clone())
    }

    /// Maps an affine λ-form point to the AB form.
    pub fn to_ab_point(&self, t: &Poly, s: &Poly) -> (Poly, Poly) {
        (t - &self.shift, s.clone())
    }
}

/// Depressed-cubic change of coordinates between the two Weierstrass forms.
pub fn convert_curve_form(lambda: &Param) -> Result<CurveConversion, Error> {
    if let Some(l) = lambda.as_value() {
        if !CurveSpec::lambda(lambda.clone()).is_smooth()? {
            return Err(Error::SingularCurve(format!("lambda = {l}")));
        }
    }
    let l = lambda.poly(Var::Lambda);
    let one = Poly::one();
    // k = (1 + λ)/3, α = λ - 3k^2, β = λk - 2k^3
    let k = (&one + &l).scale(&GaussianRational::from_frac(1, 3));
    let alpha = &l - &k.pow(2).scale(&GaussianRational::from_int(3));
    let beta = &(&l * &k) - &k.pow(3).scale(&GaussianRational::from_int(2));
    Ok(CurveConversion { alpha, beta, shift: k, sign: -1 })
}

#[derive(Serialize, Deserialize)]
struct CurveDoc {
    form: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    lambda: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    alpha: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    beta: Option<String>,
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    twisted: bool,
}

impl From<CurveSpec> for CurveDoc {
    fn from(c: CurveSpec) -> CurveDoc {
        match c.form {
            CurveForm::Lambda { lambda } => CurveDoc {
                form: "lambda".into(),
                lambda: Some(lambda.render()),
                alpha: None,
                beta: None,
                twisted: c.twisted,
            },
            CurveForm::AB { alpha, beta } => CurveDoc {
                form: "ab".into(),
                lambda: None,
                alpha: Some(alpha.render()),
                beta: Some(beta.render()),
                twisted: c.twisted,
            },
        }
    }
}

impl TryFrom<CurveDoc> for CurveSpec {
    type Error = Error;
    fn try_from(d: CurveDoc) -> Result<CurveSpec, Error> {
        let need = |v: Option<String>, name: &str| {
            v.ok_or_else(|| Error::Json(format!("curve is missing `{name}`"))).and_then(|s| Param::parse(&s))
        };
        let form = match d.form.as_str() {
            "lambda" => CurveForm::Lambda { lambda: need(d.lambda, "lambda")? },
            "ab" => CurveForm::AB { alpha: need(d.alpha, "alpha")?, beta: need(d.beta, "beta")? },
            other => return Err(Error::Json(format!("unknown curve form `{other}`"))),
        };
        Ok(CurveSpec { form, twisted: d.twisted })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_poly;

    fn lam(v: &str) -> CurveSpec {
        CurveSpec::lambda(Param::parse(v).unwrap())
    }

    #[test]
    fn curve_poly_examples() {
        let ab = CurveSpec::ab(Param::Symbolic, Param::Symbolic).curve_poly();
        assert_eq!(ab, parse_poly("-y*z^2 + x^3 + a*x*y^2 + b*y^3").unwrap());
        // x(x-y)(x-2y) = x^3 - 3x^2 y + 2 x y^2
        assert_eq!(lam("2").curve_poly(), parse_poly("y*z^2 - x^3 + 3*x^2*y - 2*x*y^2").unwrap());
        assert_eq!(
            lam("symbolic").curve_poly(),
            parse_poly("y*z^2 - x^3 + (1+l)*x^2*y - l*x*y^2").unwrap()
        );
        for spec in [lam("2"), lam("symbolic"), CurveSpec::ab(Param::Symbolic, Param::value(3))] {
            assert!(spec.curve_poly().terms().all(|(m, _)| m.coordinate_degree() == 3));
        }
    }

    #[test]
    fn relation_examples() {
        let ab = CurveSpec::ab(Param::Symbolic, Param::Symbolic);
        assert_eq!(ab.curve_relation(), parse_poly("s^2 - t^3 - a*t - b").unwrap());
        assert_eq!(lam("symbolic").curve_relation(), parse_poly("s^2 - t*(t-1)*(t-l)").unwrap());
        let spec = lam("13/4");
        assert!(spec.contains_point(&Poly::int(4), &Poly::int(3)));
        let at = spec.curve_relation().eval(&BTreeMap::from([
            (Var::T, GaussianRational::from_int(4)),
            (Var::S, GaussianRational::from_int(3)),
        ]));
        assert!(at.is_zero());
    }

    #[test]
    fn substitution_examples() {
        let s = Poly::var(Var::S);
        assert!(s.eval(&BTreeMap::from([(Var::S, GaussianRational::zero())])).is_zero());
        let p = parse_poly("1 + l").unwrap();
        assert_eq!(p.eval(&BTreeMap::from([(Var::Lambda, GaussianRational::from_int(2))])), Poly::int(3));
    }

    #[test]
    fn smoothness() {
        assert!(lam("2").is_smooth().unwrap());
        assert!(!lam("1").is_smooth().unwrap());
        assert!(!lam("0").is_smooth().unwrap());
        assert!(!CurveSpec::ab(Param::value(0), Param::value(0)).is_smooth().unwrap());
        assert!(matches!(lam("symbolic").is_smooth(), Err(Error::SymbolicParameters(_))));
    }

    #[test]
    fn conversion_lambda_two() {
        let conv = convert_curve_form(&Param::value(2)).unwrap();
        assert_eq!(conv.alpha, Poly::int(-1));
        assert_eq!(conv.beta, Poly::zero());
        assert_eq!(conv.shift, Poly::int(1));
        assert!(conv.ab_spec().unwrap().is_smooth().unwrap());
    }

    #[test]
    fn conversion_identity_numeric_and_symbolic() {
        for l in ["2", "3", "13/4", "symbolic"] {
            let spec = lam(l);
            let conv = convert_curve_form(&Param::parse(l).unwrap()).unwrap();
            assert!(conv.identity_holds(&spec), "lambda = {l}");
            if l != "symbolic" {
                assert!(conv.ab_spec().unwrap().is_smooth().unwrap());
            }
        }
        let conv = convert_curve_form(&Param::Symbolic).unwrap();
        assert_eq!(conv.alpha, parse_poly("-(l^2 - l + 1)/3").unwrap());
        assert_eq!(conv.beta, parse_poly("-(1+l)*(2*l-1)*(l-2)/27").unwrap());
        assert!(matches!(convert_curve_form(&Param::value(1)), Err(Error::SingularCurve(_))));
    }

    #[test]
    fn generator_mixing_is_rejected() {
        let p = parse_poly("a*t").unwrap();
        assert!(matches!(lam("symbolic").check_generators(&p), Err(Error::ForeignGenerator(_))));
        assert!(matches!(lam("2").check_generators(&parse_poly("l").unwrap()), Err(Error::ForeignGenerator(_))));
        assert!(CurveSpec::ab(Param::Symbolic, Param::value(0)).check_generators(&p).is_ok());
    }

    #[test]
    fn json_round_trip() {
        for spec in [lam("13/4"), lam("symbolic").twisted(), CurveSpec::ab(Param::value(-1), Param::Symbolic)] {
            let text = serde_json::to_string(&spec).unwrap();
            let back: CurveSpec = serde_json::from_str(&text).unwrap();
            assert_eq!(back, spec);
            assert_eq!(serde_json::to_string(&back).unwrap(), text);
        }
    }
}
