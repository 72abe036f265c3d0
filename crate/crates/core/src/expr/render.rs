use std::str::FromStr;

use serde::Serialize;

use crate::field::Field;
use crate::pfd::Decomposition;
use crate::poly::Poly;

pub const JSON_SCHEMA: &str = "pfd-1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Format {
    Human,
    Json,
    Cas,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "human" => Ok(Format::Human),
            "json" => Ok(Format::Json),
            "cas" => Ok(Format::Cas),
            _ => Err(format!("unknown format '{s}' (expected human, json or cas)")),
        }
    }
}

#[derive(Serialize)]
struct JsonTerm {
    power: u32,
    numerator: Vec<String>,
}

#[derive(Serialize)]
struct JsonGroup {
    base: Vec<String>,
    terms: Vec<JsonTerm>,
}

#[derive(Serialize)]
struct JsonDecomposition<'a> {
    schema: &'static str,
    variable: &'a str,
    polynomial_part: Vec<String>,
    groups: Vec<JsonGroup>,
}

fn coeff_list<F: Field>(p: &Poly<F>, param: &str) -> Vec<String> {
    if p.is_zero() {
        return vec![F::zero().to_text(param)];
    }
    p.coeffs().iter().map(|c| c.to_text(param)).collect()
}

/// Each nonzero term as `(numerator)/(base)^power`, in basis order and
/// increasing power; the polynomial part comes first.
fn terms<F: Field>(d: &Decomposition<F>, var: &str, param: &str) -> Vec<String> {
    let mut out = Vec::new();
    if !d.polynomial_part.is_zero() {
        out.push(d.polynomial_part.to_text_desc(var, param));
    }
    for g in &d.groups {
        let base = g.base.to_text_desc(var, param);
        for t in &g.terms {
            let num = t.numerator.to_text_desc(var, param);
            if t.power == 1 {
                out.push(format!("({num})/({base})"));
            } else {
                out.push(format!("({num})/({base})^{}", t.power));
            }
        }
    }
    out
}

/// Renders a decomposition. `param` names the parameter of `Q(t)`
/// coefficients and is ignored over the rationals.
pub fn render<F: Field>(d: &Decomposition<F>, format: Format, var: &str, param: &str) -> String {
    match format {
        Format::Human => {
            let lines = terms(d, var, param);
            if lines.is_empty() {
                "0".to_string()
            } else {
                lines.join("\n")
            }
        }
        Format::Cas => {
            let parts = terms(d, var, param);
            if parts.is_empty() {
                "0".to_string()
            } else {
                parts.join(" + ")
            }
        }
        Format::Json => {
            let doc = JsonDecomposition {
                schema: JSON_SCHEMA,
                variable: var,
                polynomial_part: coeff_list(&d.polynomial_part, param),
                groups: d
                    .groups
                    .iter()
                    .map(|g| JsonGroup {
                        base: coeff_list(&g.base, param),
                        terms: g
                            .terms
                            .iter()
                            .map(|t| JsonTerm {
                                power: t.power,
                                numerator: coeff_list(&t.numerator, param),
                            })
                            .collect(),
                    })
                    .collect(),
            };
            serde_json::to_string(&doc).expect("plain data serializes")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ParamRational, Rational};
    use crate::pfd::{decompose, DecomposeOptions};
    use crate::expr::{parse_expr, to_rational_function};

    fn golden() -> Decomposition<Rational> {
        let ast = parse_expr("x^10/((x^2+x+1)^2*(x^2-x+1)^2)", "x", &[]).unwrap();
        decompose(&to_rational_function(&ast).unwrap(), &DecomposeOptions::default()).unwrap()
    }

    #[test]
    fn human_golden() {
        let text = render(&golden(), Format::Human, "x", "t");
        let expected = [
            "x^2 - 2",
            "(-3/4*x + 5/4)/(x^2 - x + 1)",
            "(1/4*x - 1/4)/(x^2 - x + 1)^2",
            "(3/4*x + 5/4)/(x^2 + x + 1)",
            "(-1/4*x - 1/4)/(x^2 + x + 1)^2",
        ];
        assert_eq!(text.lines().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn json_zero() {
        let d = Decomposition::<Rational>::zero();
        assert_eq!(
            render(&d, Format::Json, "x", "t"),
            r#"{"schema":"pfd-1","variable":"x","polynomial_part":["0"],"groups":[]}"#
        );
        assert_eq!(render(&d, Format::Human, "x", "t"), "0");
        assert_eq!(render(&d, Format::Cas, "x", "t"), "0");
    }

    #[test]
    fn json_golden_shape() {
        let v: serde_json::Value = serde_json::from_str(&render(&golden(), Format::Json, "x", "t")).unwrap();
        assert_eq!(v["polynomial_part"], serde_json::json!(["-2", "0", "1"]));
        assert_eq!(v["groups"][0]["base"], serde_json::json!(["1", "-1", "1"]));
        assert_eq!(v["groups"][0]["terms"][0]["numerator"], serde_json::json!(["5/4", "-3/4"]));
        assert_eq!(v["groups"][1]["terms"][1]["power"], 2);
    }

    #[test]
    fn cas_round_trip() {
        let d = golden();
        let text = render(&d, Format::Cas, "x", "t");
        assert!(!text.contains('\n'));
        let back = to_rational_function::<Rational>(&parse_expr(&text, "x", &[]).unwrap()).unwrap();
        assert_eq!(back, d.recombine());
    }

    #[test]
    fn parameter_coefficients() {
        let ast = parse_expr("1/((x - t)*(x - 2*t))", "x", &["t"]).unwrap();
        let f = to_rational_function::<ParamRational>(&ast).unwrap();
        let d = decompose(&f, &DecomposeOptions::default()).unwrap();
        let json: serde_json::Value = serde_json::from_str(&render(&d, Format::Json, "x", "t")).unwrap();
        assert_eq!(json["groups"][0]["base"][0], "(-2*t)/(1)");
        let cas = render(&d, Format::Cas, "x", "t");
        let back = to_rational_function::<ParamRational>(&parse_expr(&cas, "x", &["t"]).unwrap()).unwrap();
        assert!(back.same_function(&f));
    }
}
