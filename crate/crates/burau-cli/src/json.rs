//! JSON schemas for polynomials, matrices, vectors, certificates and the
//! verification reports.
//!
//! Polynomial: `{"terms": {"<exponent>": <coefficient>, ...}, "p": <int>}`
//! with exponents as decimal strings; the zero polynomial has an empty
//! `terms` object. Coefficients are exact: `serde_json`'s
//! arbitrary-precision numbers carry any integer the searches produce.

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

use burau_core::burau::IdentityReport;
use burau_core::pingpong::{Certificate, MappingReport};
use burau_core::{LaurentPoly, Mat3, Vec3};

fn bigint_number(c: &BigInt) -> Number {
    serde_json::from_str(&c.to_string()).expect("decimal integer is a valid JSON number")
}

fn number_bigint(n: &Number) -> Result<BigInt, String> {
    n.to_string()
        .parse::<BigInt>()
        .map_err(|_| format!("coefficient {} is not an integer", n))
}

pub fn poly_json(f: &LaurentPoly) -> Value {
    let mut terms = Map::new();
    for (exp, c) in f.terms() {
        terms.insert(exp.to_string(), Value::Number(bigint_number(c)));
    }
    json!({ "terms": terms, "p": f.ctx().p() })
}

pub fn mat_json(m: &Mat3) -> Value {
    let rows: Vec<Value> = m
        .rows()
        .iter()
        .map(|row| Value::Array(row.iter().map(poly_json).collect()))
        .collect();
    json!({ "rows": rows, "p": m.ctx().p() })
}

pub fn vec_json(v: &Vec3) -> Value {
    let coords: Vec<Value> = v.coords().iter().map(poly_json).collect();
    json!({ "coords": coords, "p": v.ctx().p() })
}

pub fn certificate_json(cert: &Certificate) -> Value {
    let steps: Vec<Value> = cert
        .steps
        .iter()
        .map(|s| {
            json!({
                "op": s.op.to_string(),
                "set": s.set.to_string(),
                "vector": vec_json(&s.vector),
            })
        })
        .collect();
    json!({
        "word": cert.word_text(),
        "p": cert.modulus.p(),
        "steps": steps,
        "verdict": cert.verdict,
    })
}

pub fn identities_json(report: &IdentityReport) -> Value {
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| json!({ "name": c.name, "pass": c.pass }))
        .collect();
    json!({
        "checks": checks,
        "a_conjugation": report.a_conjugation().map(|r| r.to_string()),
        "pass": report.all_pass(),
    })
}

pub fn mappings_json(report: &MappingReport) -> Value {
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| json!({ "name": c.name, "samples": c.samples, "violations": c.violations }))
        .collect();
    json!({ "checks": checks, "pass": report.all_pass() })
}

// --- input parsing --------------------------------------------------------

fn parse_p(value: &Value, what: &str) -> Result<u64, String> {
    value
        .get("p")
        .and_then(Value::as_u64)
        .ok_or_else(|| format!("{}: missing or invalid \"p\"", what))
}

pub fn parse_poly(value: &Value, expected_p: u64) -> Result<LaurentPoly, String> {
    let obj = value
        .as_object()
        .ok_or_else(|| "polynomial: expected an object".to_string())?;
    if let Some(p) = obj.get("p") {
        let p = p
            .as_u64()
            .ok_or_else(|| "polynomial: invalid \"p\"".to_string())?;
        if p != expected_p {
            return Err(format!(
                "polynomial modulus {} disagrees with the enclosing value's {}",
                p, expected_p
            ));
        }
    }
    let terms = obj
        .get("terms")
        .and_then(Value::as_object)
        .ok_or_else(|| "polynomial: missing \"terms\" object".to_string())?;
    let ctx = burau_core::Modulus::new(expected_p).map_err(|e| e.to_string())?;
    let mut pairs: Vec<(i64, BigInt)> = Vec::with_capacity(terms.len());
    for (exp, coeff) in terms {
        let exp: i64 = exp
            .parse()
            .map_err(|_| format!("polynomial: exponent {:?} is not an integer", exp))?;
        let n = coeff
            .as_number()
            .ok_or_else(|| format!("polynomial: coefficient for t^{} is not a number", exp))?;
        pairs.push((exp, number_bigint(n)?));
    }
    Ok(LaurentPoly::from_terms(pairs, ctx))
}

pub fn parse_vec(value: &Value) -> Result<Vec3, String> {
    let p = parse_p(value, "vector")?;
    let coords = value
        .get("coords")
        .and_then(Value::as_array)
        .ok_or_else(|| "vector: missing \"coords\" array".to_string())?;
    if coords.len() != 3 {
        return Err(format!("vector: expected 3 coordinates, found {}", coords.len()));
    }
    let c0 = parse_poly(&coords[0], p)?;
    let c1 = parse_poly(&coords[1], p)?;
    let c2 = parse_poly(&coords[2], p)?;
    Vec3::from_coords([c0, c1, c2]).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use burau_core::{BurauConstants, Modulus};

    #[test]
    fn poly_roundtrip_preserves_huge_coefficients() {
        let big: BigInt = "123456789012345678901234567890123456789".parse().unwrap();
        let f = LaurentPoly::from_terms([(-3i64, big.clone()), (2, BigInt::from(-7))], Modulus::INTEGERS);
        let v = poly_json(&f);
        assert_eq!(v["terms"]["-3"].to_string(), big.to_string());
        let back = parse_poly(&v, 0).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn zero_polynomial_serializes_with_empty_terms() {
        let f = LaurentPoly::zero(Modulus::new(5).unwrap());
        let v = poly_json(&f);
        assert_eq!(v, serde_json::json!({ "terms": {}, "p": 5 }));
    }

    #[test]
    fn vector_roundtrip() {
        let c = BurauConstants::new(Modulus::new(3).unwrap());
        let v = &c.b * &c.v0;
        let encoded = vec_json(&v);
        assert_eq!(parse_vec(&encoded).unwrap(), v);
    }

    #[test]
    fn vector_parsing_rejects_mismatched_moduli() {
        let raw = serde_json::json!({
            "coords": [
                { "terms": { "0": 1 }, "p": 2 },
                { "terms": {} },
                { "terms": {} },
            ],
            "p": 3,
        });
        assert!(parse_vec(&raw).is_err());
    }

    /// Every certificate the cube-alphabet search issues serializes to the
    /// documented schema and its vectors parse back exactly.
    #[test]
    fn search_certificates_roundtrip_through_the_schema() {
        use burau_core::burau::verify_identities;
        use burau_core::pingpong::certify_with;
        use burau_core::rewrite::{conjugate_to_b_neg_suffix, to_normal_form};
        use burau_core::search::{words_of_length, Alphabet};
        use burau_core::rewrite::WordAB;

        let ctx = Modulus::new(2).unwrap();
        let consts = BurauConstants::new(ctx);
        let rule = verify_identities(ctx).a_conjugation().unwrap();
        let mut certified = 0u32;
        for len in 1..=3u32 {
            for letters in words_of_length(len) {
                let e = Alphabet::A3b3.exponent();
                let word = WordAB::from_syllables(
                    letters
                        .iter()
                        .map(|l| (l.letter, if l.inverse { -e } else { e })),
                );
                let Ok(conj) = conjugate_to_b_neg_suffix(&word) else {
                    continue;
                };
                let nf = to_normal_form(&conj.word, rule).unwrap();
                let cert = certify_with(&nf, &consts).unwrap();
                assert!(cert.verdict);
                certified += 1;

                let value = certificate_json(&cert);
                assert_eq!(value["word"], cert.word_text());
                assert_eq!(value["p"], 2);
                assert_eq!(value["verdict"], true);
                let steps = value["steps"].as_array().unwrap();
                assert_eq!(steps.len(), cert.steps.len());
                for (encoded, step) in steps.iter().zip(&cert.steps) {
                    assert_eq!(encoded["op"], step.op.to_string());
                    assert_eq!(encoded["set"], step.set.to_string());
                    assert_eq!(parse_vec(&encoded["vector"]).unwrap(), step.vector);
                }
            }
        }
        assert!(certified > 0);
    }
}
