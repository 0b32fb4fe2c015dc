//! The `check` input record and JSON/text renderings of analysis results.
//!
//! Exact values are written as rational strings (`"-3/4"`), floating values
//! as decimals with twelve significant digits. Object keys are sorted, so
//! output is byte-stable.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::algebra::{AlgebraRecord, FrameChange, LieAlgebra};
use crate::classify::{CsBasis, DfOutcome, DfSolution};
use crate::curvature::StructureReport;
use crate::error::Result;
use crate::scalar::{Context, Rational, Scalar};
use crate::symtensor::{polynomial_from_cubic, CubicForm, CubicRecord};

/// `{"algebra": {...}, "cubic": {...}}`. The cubic is written in the same
/// basis as the brackets; when a gram matrix is given both are re-expressed
/// in the orthonormal frame.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureRecord {
    pub algebra: AlgebraRecord,
    pub cubic: CubicRecord,
}

impl StructureRecord {
    pub fn from_json(text: &str) -> Result<Self> {
        crate::record::from_json(text)
    }

    pub fn build<S: Scalar>(&self, ctx: &Context) -> Result<(LieAlgebra<S>, CubicForm<S>)> {
        let prefixed = |prefix: &'static str| {
            move |e| match e {
                crate::Error::Record { path, message } => {
                    crate::record::field_error(&format!("{prefix}.{path}"), &message)
                }
                other => other,
            }
        };
        let (spec, change) = self.algebra.build::<S>(ctx).map_err(prefixed("algebra"))?;
        let c = self.cubic.build::<S>(spec.dim()).map_err(prefixed("cubic"))?;
        Ok((spec, pull_back(&c, &change)))
    }
}

// C'_abc = Σ P_ia P_jb P_kc C_ijk.
fn pull_back<S: Scalar>(c: &CubicForm<S>, change: &FrameChange<S>) -> CubicForm<S> {
    let n = c.dim();
    let p = &change.p;
    let mut out = CubicForm::zero(n);
    for a in 0..n {
        for b in a..n {
            for d in b..n {
                let mut acc = S::zero();
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            let w = p[(i, a)].clone() * p[(j, b)].clone() * p[(k, d)].clone();
                            if !w.is_zero() {
                                acc += w * c.get(i, j, k);
                            }
                        }
                    }
                }
                out.set(a, b, d, acc);
            }
        }
    }
    out
}

fn opt<S: Scalar>(v: &Option<S>) -> Value {
    v.as_ref().map_or(Value::Null, |x| Value::String(x.render()))
}

/// `{"cs", "df", "constant_curvature", "chc", "cs_dimension", "defects"}`.
pub fn structure_report_json<S: Scalar>(report: &StructureReport<S>, cs_dimension: Option<usize>) -> Value {
    let defects: Map<String, Value> = report
        .defects
        .iter()
        .map(|(k, v)| (k.to_string(), Value::String(v.render())))
        .collect();
    json!({
        "cs": report.conjugate_symmetric,
        "df": report.dually_flat,
        "constant_curvature": opt(&report.constant_curvature),
        "chc": opt(&report.chc),
        "cs_dimension": cs_dimension,
        "defects": defects,
    })
}

/// Human-readable table of a structure report.
pub fn structure_report_text<S: Scalar>(report: &StructureReport<S>, cs_dimension: Option<usize>) -> String {
    let show = |v: &Option<S>| v.as_ref().map_or_else(|| "none".to_string(), |x| x.render());
    let mut out = String::new();
    out.push_str(&format!("conjugate symmetric  {}\n", report.conjugate_symmetric));
    out.push_str(&format!("dually flat          {}\n", report.dually_flat));
    out.push_str(&format!("constant curvature   {}\n", show(&report.constant_curvature)));
    out.push_str(&format!("chc                  {}\n", show(&report.chc)));
    if let Some(d) = cs_dimension {
        out.push_str(&format!("cs dimension         {d}\n"));
    }
    for (k, v) in &report.defects {
        out.push_str(&format!("defect {k:<22}{}\n", v.render()));
    }
    out
}

/// `dim d: p_1; p_2; …` with each basis element as a polynomial.
pub fn cs_basis_text(basis: &CsBasis<Rational>) -> String {
    let polys: Vec<String> = basis
        .elements()
        .iter()
        .map(|c| polynomial_from_cubic(c).to_string())
        .collect();
    if polys.is_empty() {
        format!("dim {}", basis.dim())
    } else {
        format!("dim {}: {}", basis.dim(), polys.join("; "))
    }
}

/// `{"dim", "polynomials", "cubics"}`; the cubics are input records that
/// `check` accepts.
pub fn cs_basis_json(basis: &CsBasis<Rational>) -> Value {
    json!({
        "dim": basis.dim(),
        "polynomials": basis
            .elements()
            .iter()
            .map(|c| polynomial_from_cubic(c).to_string())
            .collect::<Vec<_>>(),
        "cubics": basis.elements().iter().map(CubicRecord::from_cubic).collect::<Vec<_>>(),
    })
}

fn solution_poly(s: &DfSolution) -> String {
    match s {
        DfSolution::Exact(c) => polynomial_from_cubic(c).to_string(),
        DfSolution::Approximate(c) => polynomial_from_cubic(c).to_string(),
    }
}

pub fn df_outcome_text(outcome: &DfOutcome) -> String {
    match outcome {
        DfOutcome::Solutions(sols) => {
            let lines: Vec<String> = sols
                .iter()
                .map(|s| {
                    let tag = if matches!(s, DfSolution::Exact(_)) {
                        ""
                    } else {
                        " (approximate)"
                    };
                    format!("{}{tag}", solution_poly(s))
                })
                .collect();
            format!("{} solution(s)\n{}", sols.len(), lines.join("\n"))
        }
        DfOutcome::Empty(Some(cert)) => format!("EMPTY (min residual ≥ {})", cert.bound),
        DfOutcome::Empty(None) => "EMPTY".to_string(),
        DfOutcome::Family(f) => format!("FAMILY: {f}"),
    }
}

pub fn df_outcome_json(outcome: &DfOutcome) -> Value {
    match outcome {
        DfOutcome::Solutions(sols) => json!({
            "status": "solutions",
            "solutions": sols
                .iter()
                .map(|s| json!({
                    "exact": matches!(s, DfSolution::Exact(_)),
                    "polynomial": solution_poly(s),
                }))
                .collect::<Vec<_>>(),
        }),
        DfOutcome::Empty(cert) => json!({
            "status": "empty",
            "certificate": cert.as_ref().map(|c| json!({
                "entry": c.entry.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "bound": c.bound.to_string(),
            })),
        }),
        DfOutcome::Family(f) => json!({
            "status": "family",
            "description": f.description,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_builtin, Family};
    use crate::classify::{cs_subspace, EmptinessCertificate};
    use crate::curvature::analyze;
    use crate::scalar::{rational, Context};

    #[test]
    fn report_json_shape() {
        let spec = build_builtin::<Rational>(Family::Rhn, 2).unwrap();
        let basis = cs_subspace(&spec).unwrap();
        let c = basis.elements()[0].scale(&rational(-1, 1));
        let report = analyze(&spec, &c, &Context::default()).unwrap();
        let v = structure_report_json(&report, Some(1));
        assert_eq!(v["cs"], json!(true));
        assert_eq!(v["df"], json!(true));
        assert_eq!(v["constant_curvature"], json!("0"));
        assert_eq!(v["chc"], json!("4"));
        assert_eq!(v["cs_dimension"], json!(1));
        assert_eq!(v["defects"]["torsion"], json!("0"));
        let text = structure_report_text(&report, None);
        assert!(text.contains("chc                  4"));
        assert!(!text.contains("cs dimension"));
    }

    #[test]
    fn cs_and_df_renderings() {
        let spec = build_builtin::<Rational>(Family::Rhn, 4).unwrap();
        let basis = cs_subspace(&spec).unwrap();
        assert_eq!(cs_basis_text(&basis), "dim 1: 4x1^3 + 6x1x2^2 + 6x1x3^2 + 6x1x4^2");
        assert_eq!(
            cs_basis_json(&basis)["cubics"][0]["terms"][0]["monomial"],
            json!([1, 1, 1])
        );
        let empty = DfOutcome::Empty(Some(EmptinessCertificate {
            entry: [0, 2, 2, 0],
            bound: rational(1, 4),
        }));
        assert_eq!(df_outcome_text(&empty), "EMPTY (min residual ≥ 1/4)");
        assert_eq!(df_outcome_json(&empty)["certificate"]["entry"], json!([1, 3, 3, 1]));
    }

    #[test]
    fn record_with_gram_rescales_the_cubic() {
        // e1 has norm 2, so the orthonormal e1' = e1/2 and C'_111 = C_111/8.
        let text = r#"{"algebra": {"dim": 2, "brackets": [{"i": 1, "j": 2, "k": 2, "c": "2"}],
                        "gram": [["4", "0"], ["0", "1"]]},
                       "cubic": {"basis": "tensor", "terms": [{"monomial": [1, 1, 1], "c": "8"}]}}"#;
        let (spec, c) = StructureRecord::from_json(text)
            .unwrap()
            .build::<Rational>(&Context::default())
            .unwrap();
        assert_eq!(spec.a(0, 1, 1), rational(1, 1));
        assert_eq!(c.get(0, 0, 0), rational(1, 1));
    }

    #[test]
    fn record_errors_carry_paths() {
        let bad =
            r#"{"algebra": {"dim": 2}, "cubic": {"basis": "tensor", "terms": [{"monomial": [1, 3, 1], "c": "1"}]}}"#;
        let err = StructureRecord::from_json(bad)
            .unwrap()
            .build::<Rational>(&Context::default())
            .unwrap_err();
        assert!(matches!(err, crate::Error::Record { ref path, .. } if path == "cubic.terms[0].monomial"));
        let err = StructureRecord::from_json(r#"{"algebra": {"dim": "x"}}"#).unwrap_err();
        assert!(matches!(err, crate::Error::Record { ref path, .. } if path == "algebra.dim"));
    }
}
