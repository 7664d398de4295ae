//! JSON wire format for pencils.
//!
//! ```json
//! {"n": 3, "entries_field": "gaussian_rational", "curve": {"form": "lambda", "lambda": "2"},
//!  "Ax": [["1", "0", "0"], ...], "Ay": [...], "Az": [...]}
//! ```
//!
//! Scalars use the exact scalar grammar; polynomial entries use the
//! polynomial rendering grammar.

use serde::{Deserialize, Serialize};

use super::{Matrix, Pencil, PolyMatrix};
use crate::error::Error;
use crate::ring::{parse_poly, parse_scalar, CurveSpec, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntriesField {
    GaussianRational,
    ParamPoly,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PencilDoc {
    n: usize,
    entries_field: EntriesField,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    curve: Option<CurveSpec>,
    #[serde(rename = "Ax")]
    ax: Vec<Vec<String>>,
    #[serde(rename = "Ay")]
    ay: Vec<Vec<String>>,
    #[serde(rename = "Az")]
    az: Vec<Vec<String>>,
}

impl Pencil {
    /// `GaussianRational` when every entry is a constant.
    pub fn entries_field(&self) -> EntriesField {
        let constant = self.coefficients().iter().all(|m| m.entries().all(|p| p.as_constant().is_some()));
        if constant {
            EntriesField::GaussianRational
        } else {
            EntriesField::ParamPoly
        }
    }

    pub fn to_json(&self) -> String {
        let field = self.entries_field();
        let render = |m: &PolyMatrix| -> Vec<Vec<String>> {
            m.rows()
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|p| match field {
                            EntriesField::GaussianRational => p.as_constant().expect("constant entry").to_string(),
                            EntriesField::ParamPoly => p.render(),
                        })
                        .collect()
                })
                .collect()
        };
        let doc = PencilDoc {
            n: self.n(),
            entries_field: field,
            curve: self.curve.clone(),
            ax: render(&self.ax),
            ay: render(&self.ay),
            az: render(&self.az),
        };
        serde_json::to_string(&doc).expect("pencil documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Pencil, Error> {
        let doc: PencilDoc = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let parse = |rows: Vec<Vec<String>>, name: &str| -> Result<PolyMatrix, Error> {
            if rows.len() != doc.n {
                return Err(Error::Dimension(format!("{name} has {} rows, expected {}", rows.len(), doc.n)));
            }
            let parsed = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|s| match doc.entries_field {
                            EntriesField::GaussianRational => parse_scalar(s).map(Poly::constant),
                            EntriesField::ParamPoly => parse_poly(s),
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Matrix::from_rows(parsed)
        };
        let ax = parse(doc.ax.clone(), "Ax")?;
        let ay = parse(doc.ay.clone(), "Ay")?;
        let az = parse(doc.az.clone(), "Az")?;
        Pencil::new(ax, ay, az, doc.curve.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pencil::ConstMatrix;
    use crate::ring::{GaussianRational, Param, Var};

    #[test]
    fn constant_pencil_round_trip() {
        let h = ConstMatrix::from_fn(2, |i, j| match (i, j) {
            (0, 1) => GaussianRational::from_frac(1, 2),
            (1, 0) => GaussianRational::from_frac(1, 2),
            (0, 0) => GaussianRational::new(crate::ring::rat(0, 1), crate::ring::rat(-2, 3)),
            _ => GaussianRational::from_int(7),
        });
        let p = Pencil::from_const(&h, &ConstMatrix::identity(2), &ConstMatrix::zeros(2), None).unwrap();
        let text = p.to_json();
        assert!(text.contains("\"entries_field\":\"gaussian_rational\""));
        assert!(text.contains("\"-2/3*i\""));
        let back = Pencil::from_json(&text).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn polynomial_pencil_round_trip() {
        let t = Poly::var(Var::T);
        let s = Poly::var(Var::S);
        let ay = Matrix::from_rows(vec![vec![t.scale(&GaussianRational::from_frac(1, 2)), s.clone()], vec![-&s, -&t]]).unwrap();
        let id = ConstMatrix::identity(2).to_poly();
        let curve = CurveSpec::lambda(Param::Symbolic);
        let p = Pencil::new(id.clone(), ay, id, Some(curve)).unwrap();
        let text = p.to_json();
        assert!(text.contains("\"param_poly\""));
        let back = Pencil::from_json(&text).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn malformed_documents() {
        assert!(matches!(Pencil::from_json("{"), Err(Error::Json(_))));
        let bad_rows = r#"{"n":2,"entries_field":"gaussian_rational","Ax":[["1"]],"Ay":[["0"]],"Az":[["0"]]}"#;
        assert!(matches!(Pencil::from_json(bad_rows), Err(Error::Dimension(_))));
        let bad_scalar = r#"{"n":1,"entries_field":"gaussian_rational","Ax":[["1/0"]],"Ay":[["0"]],"Az":[["0"]]}"#;
        assert!(matches!(Pencil::from_json(bad_scalar), Err(Error::ZeroDenominator(_))));
        let foreign = r#"{"n":1,"entries_field":"param_poly","curve":{"form":"lambda","lambda":"2"},"Ax":[["a"]],"Ay":[["0"]],"Az":[["0"]]}"#;
        assert!(matches!(Pencil::from_json(foreign), Err(Error::ForeignGenerator(_))));
    }
}
