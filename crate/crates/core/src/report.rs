//! The analysis report and its canonical serialization.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::pipeline::{
    check_simple_degeneration, clifford_symbol, delta_factors, extract_bundle, parse_and_validate, ramification_report,
    RamificationParams, Verdict,
};
use crate::poly::CurveVerdict;

pub const SCHEMA_VERSION: u64 = 1;

/// Hex SHA-256 of the raw input.
pub fn input_hash(input: &[u8]) -> String {
    hex::encode(Sha256::digest(input))
}

/// Compact JSON with object keys sorted at every level.
pub fn canonical_json(v: &Value) -> String {
    let mut out = String::new();
    write_canonical(v, &mut out);
    out
}

fn write_canonical(v: &Value, out: &mut String) {
    match v {
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String(k.clone()).to_string());
                out.push(':');
                write_canonical(&m[k], out);
            }
            out.push('}');
        }
        Value::Array(xs) => {
            out.push('[');
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_canonical(x, out);
            }
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u64,
    pub input_hash: String,
    pub input: String,
    pub bundle: Value,
    pub delta: Value,
    pub degeneration: Value,
    pub alpha: Value,
    pub ramification: Value,
    pub identity: Value,
    pub certificates: Vec<Value>,
    pub params: Value,
    pub outcome: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Value>,
}

impl AnalysisReport {
    pub fn empty(input: &str) -> Self {
        AnalysisReport {
            schema_version: SCHEMA_VERSION,
            input_hash: input_hash(input.as_bytes()),
            input: input.to_string(),
            bundle: Value::Null,
            delta: Value::Null,
            degeneration: Value::Null,
            alpha: Value::Null,
            ramification: Value::Null,
            identity: Value::Null,
            certificates: Vec::new(),
            params: Value::Null,
            outcome: Value::Null,
            timing: None,
        }
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn serialize(&self) -> String {
        canonical_json(&self.to_value())
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| crate::Error::InvalidInput(format!("report: {e}")))
    }

    /// Whether every check succeeded (as opposed to a sound negative
    /// verdict).
    pub fn verified(&self) -> bool {
        self.outcome.get("verified").and_then(Value::as_bool) == Some(true)
    }
}

fn curve_json(c: &CurveVerdict) -> Value {
    match c {
        CurveVerdict::Smooth => json!({ "kind": "Smooth" }),
        CurveVerdict::Singular { point, basis } => json!({
            "kind": "Singular",
            "point": point.as_ref().map(|p| p.iter().map(crate::arith::fmt_rat).collect::<Vec<_>>()),
            "jacobian_basis": basis.iter().map(|f| f.to_text()).collect::<Vec<_>>(),
        }),
        CurveVerdict::NotReduced(f) => json!({ "kind": "NotReduced", "repeated_factor": f.to_text() }),
    }
}

/// Runs the whole pipeline on the text of a cubic fourfold. A non-simple
/// degeneration or ramification off the discriminant is a negative verdict
/// reported in `outcome`, not an error.
pub fn analyze(input: &str, params: &RamificationParams, timing: bool) -> Result<AnalysisReport> {
    let start = Instant::now();
    let mut stages = serde_json::Map::new();
    let lap = |name: &str, stages: &mut serde_json::Map<String, Value>| {
        stages.insert(name.to_string(), json!(start.elapsed().as_secs_f64()));
    };
    let mut r = AnalysisReport::empty(input);
    r.params = json!({
        "seed": params.seed,
        "primes": params.primes,
        "confidence_bits": params.confidence_bits,
    });
    let x = parse_and_validate(input.trim())?;
    let q = extract_bundle(&x);
    r.bundle = q.to_json();
    let deg = check_simple_degeneration(&q)?;
    lap("degeneration", &mut stages);
    r.degeneration = json!({
        "simple": deg.simple,
        "a00_nonzero": deg.a00_nonzero,
        "curve": curve_json(&deg.curve),
    });
    r.delta = json!({ "polynomial": q.delta.to_text(), "degree": q.delta.total_degree() });
    if !deg.simple {
        r.outcome = json!({ "verified": false, "verdict": "NotSimple" });
        if timing {
            r.timing = Some(Value::Object(stages));
        }
        return Ok(r);
    }
    let cs = clifford_symbol(&q)?;
    lap("clifford_symbol", &mut stages);
    let factors = delta_factors(&cs)?;
    r.delta["chart"] = json!(cs.delta_chart.to_text());
    r.delta["factors"] = json!(factors.iter().map(|(f, m)| json!([f.to_text(), m])).collect::<Vec<_>>());
    r.alpha = json!({
        "chart": { "solved": cs.chart.solved, "coordinates": cs.chart.vars.to_vec() },
        "a": cs.a_value().to_text(),
        "b": cs.b_value().to_text(),
        "e": cs.e_value().to_text(),
        "d": cs.d.to_json(),
        "classes": { "a": cs.a.to_json(), "b": cs.b.to_json(), "e": cs.e.to_json() },
        "alpha": cs.alpha.to_json(),
        "alpha_text": cs.alpha.to_string(),
    });
    r.identity = json!({ "four_term_and_clifford": cs.identity_verified });
    let ram = ramification_report(&cs, params)?;
    lap("ramification", &mut stages);
    r.ramification = ram.to_json();
    let off_locus_ok = ram
        .entries
        .iter()
        .filter(|e| !e.on_locus)
        .all(|e| matches!(e.verdict, Verdict::Trivial { .. } | Verdict::ProbablyTrivial { .. }));
    let verified = cs.identity_verified && off_locus_ok;
    let verdict = if !cs.identity_verified {
        "IdentityFailed"
    } else if !off_locus_ok {
        "RamifiedOffLocus"
    } else {
        "Verified"
    };
    r.outcome = json!({ "verified": verified, "verdict": verdict });
    if timing {
        r.timing = Some(Value::Object(stages));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_sorting() {
        let v = json!({"b": 1, "a": {"z": [1, {"y": 2, "x": 3}], "c": "q\""}});
        assert_eq!(canonical_json(&v), r#"{"a":{"c":"q\"","z":[1,{"x":3,"y":2}]},"b":1}"#);
    }

    #[test]
    fn empty_report_round_trip() {
        let r = AnalysisReport::empty("");
        let s = r.serialize();
        assert!(s.contains("\"schema_version\":1"));
        assert!(s.contains("e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"));
        assert_eq!(AnalysisReport::parse(&s).unwrap(), r);
    }

    #[test]
    fn not_simple_is_a_verdict() {
        // Delta has a repeated factor for this diagonal bundle.
        let r = analyze("x0*y0^2 + x0*y1^2 + x1*y2^2 + x2^3", &RamificationParams::default(), false).unwrap();
        assert_eq!(r.outcome["verdict"], "NotSimple");
        assert!(!r.verified());
    }
}
