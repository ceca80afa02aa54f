//! Deterministic run reports.
//!
//! A [`RunReport`] is the single output artifact of every CLI command: a list
//! of named blocks, each carrying its rendered inputs, measured and expected
//! values, an optional tolerance, and a three-valued pass flag. Two contracts
//! matter here and are enforced by tests:
//!
//! * the canonical JSON bytes are identical across reruns with the same seed
//!   and inputs (wall time is tracked on the struct but kept out of the
//!   canonical serialization exactly for this reason), and
//! * serialize -> parse -> serialize round-trips byte-identically.
//!
//! Floats are serialized as 17-significant-digit strings rather than JSON
//! numbers: that keeps NaN/inf representable, makes regression pinning exact,
//! and sidesteps serializer-specific float printing.

use std::path::Path;

use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Three-valued block outcome. `Informative` blocks are recorded (and must
/// stay reproducible) but never gate the run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pass {
    True,
    False,
    Informative,
}

impl Pass {
    pub fn as_str(self) -> &'static str {
        match self {
            Pass::True => "true",
            Pass::False => "false",
            Pass::Informative => "informative",
        }
    }

    fn parse(s: &str) -> Result<Pass> {
        match s {
            "true" => Ok(Pass::True),
            "false" => Ok(Pass::False),
            "informative" => Ok(Pass::Informative),
            other => Err(Error::Domain(format!("report: unknown pass value {other:?}"))),
        }
    }
}

/// Canonical float rendering: 17 significant digits in scientific notation.
/// Round-trips exactly: `fmt_float(x).parse::<f64>() == x` bit-for-bit
/// (including NaN payload-insensitive equality handled by the caller).
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_float(s: &str) -> Result<f64> {
    s.parse::<f64>().map_err(|e| Error::Domain(format!("report: bad float {s:?}: {e}")))
}

/// One experiment's record inside a report.
#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub name: String,
    /// Rendered input parameters, in insertion order.
    pub inputs: Vec<(String, String)>,
    pub measured: Vec<(String, f64)>,
    pub expected: Vec<(String, f64)>,
    pub tolerance: Option<f64>,
    pub pass: Pass,
}

impl Block {
    /// Gating block: passes iff `measured <= bound` with both finite.
    pub fn gate(name: &str, measured: f64, bound: f64) -> Block {
        let pass = if measured.is_finite() && bound.is_finite() && measured <= bound {
            Pass::True
        } else {
            Pass::False
        };
        Block {
            name: name.to_string(),
            inputs: Vec::new(),
            measured: vec![("measured".to_string(), measured)],
            expected: Vec::new(),
            tolerance: Some(bound),
            pass,
        }
    }

    /// Gating block on `|measured - expected| <= tol`.
    pub fn gate_eq(name: &str, measured: f64, expected: f64, tol: f64) -> Block {
        let gap = (measured - expected).abs();
        let pass = if gap.is_finite() && gap <= tol { Pass::True } else { Pass::False };
        Block {
            name: name.to_string(),
            inputs: Vec::new(),
            measured: vec![("measured".to_string(), measured)],
            expected: vec![("expected".to_string(), expected)],
            tolerance: Some(tol),
            pass,
        }
    }

    /// Gating block: passes iff `measured >= lower` with both finite.
    pub fn gate_ge(name: &str, measured: f64, lower: f64) -> Block {
        let pass = if measured.is_finite() && lower.is_finite() && measured >= lower {
            Pass::True
        } else {
            Pass::False
        };
        Block {
            name: name.to_string(),
            inputs: Vec::new(),
            measured: vec![("measured".to_string(), measured)],
            expected: vec![("lower_bound".to_string(), lower)],
            tolerance: None,
            pass,
        }
    }

    /// Non-gating block recording a measurement.
    pub fn info(name: &str, measured: f64) -> Block {
        Block {
            name: name.to_string(),
            inputs: Vec::new(),
            measured: vec![("measured".to_string(), measured)],
            expected: Vec::new(),
            tolerance: None,
            pass: Pass::Informative,
        }
    }

    /// Boolean gate with no numeric payload beyond the flag itself.
    pub fn check(name: &str, ok: bool) -> Block {
        Block {
            name: name.to_string(),
            inputs: Vec::new(),
            measured: Vec::new(),
            expected: Vec::new(),
            tolerance: None,
            pass: if ok { Pass::True } else { Pass::False },
        }
    }

    pub fn with_input(mut self, key: &str, value: impl std::fmt::Display) -> Block {
        self.inputs.push((key.to_string(), value.to_string()));
        self
    }

    pub fn with_measured(mut self, key: &str, value: f64) -> Block {
        self.measured.push((key.to_string(), value));
        self
    }

    pub fn with_expected(mut self, key: &str, value: f64) -> Block {
        self.expected.push((key.to_string(), value));
        self
    }

    /// Demote a gating block to informative, keeping its payload.
    pub fn informative(mut self) -> Block {
        self.pass = Pass::Informative;
        self
    }

    fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("name".into(), Value::String(self.name.clone()));
        let mut inputs = Map::new();
        for (k, v) in &self.inputs {
            inputs.insert(k.clone(), Value::String(v.clone()));
        }
        m.insert("inputs".into(), Value::Object(inputs));
        let mut measured = Map::new();
        for (k, v) in &self.measured {
            measured.insert(k.clone(), Value::String(fmt_float(*v)));
        }
        m.insert("measured".into(), Value::Object(measured));
        let mut expected = Map::new();
        for (k, v) in &self.expected {
            expected.insert(k.clone(), Value::String(fmt_float(*v)));
        }
        m.insert("expected".into(), Value::Object(expected));
        m.insert(
            "tolerance".into(),
            match self.tolerance {
                Some(t) => Value::String(fmt_float(t)),
                None => Value::Null,
            },
        );
        m.insert("pass".into(), Value::String(self.pass.as_str().to_string()));
        Value::Object(m)
    }

    fn from_value(v: &Value) -> Result<Block> {
        let obj = as_object(v, "block")?;
        let name = as_str(require(obj, "name")?, "block.name")?.to_string();
        let mut inputs = Vec::new();
        for (k, v) in as_object(require(obj, "inputs")?, "block.inputs")? {
            inputs.push((k.clone(), as_str(v, "block.inputs value")?.to_string()));
        }
        let mut measured = Vec::new();
        for (k, v) in as_object(require(obj, "measured")?, "block.measured")? {
            measured.push((k.clone(), parse_float(as_str(v, "block.measured value")?)?));
        }
        let mut expected = Vec::new();
        for (k, v) in as_object(require(obj, "expected")?, "block.expected")? {
            expected.push((k.clone(), parse_float(as_str(v, "block.expected value")?)?));
        }
        let tolerance = match require(obj, "tolerance")? {
            Value::Null => None,
            other => Some(parse_float(as_str(other, "block.tolerance")?)?),
        };
        let pass = Pass::parse(as_str(require(obj, "pass")?, "block.pass")?)?;
        Ok(Block { name, inputs, measured, expected, tolerance, pass })
    }
}

/// Complete record of one CLI invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub tool_version: String,
    pub command: String,
    pub input_digest: String,
    pub seed: u64,
    pub blocks: Vec<Block>,
    /// Wall-clock milliseconds; excluded from the canonical JSON (which must
    /// be byte-identical across reruns) and surfaced on stderr instead.
    pub wall_ms: Option<u64>,
}

impl RunReport {
    pub fn new(command: &str, input_digest: &str, seed: u64) -> RunReport {
        RunReport {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            input_digest: input_digest.to_string(),
            seed,
            blocks: Vec::new(),
            wall_ms: None,
        }
    }

    pub fn push(&mut self, block: Block) {
        self.blocks.push(block);
    }

    /// True iff no block failed (informative blocks never gate).
    pub fn all_pass(&self) -> bool {
        self.blocks.iter().all(|b| b.pass != Pass::False)
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.blocks.iter().find(|b| b.pass == Pass::False).map(|b| b.name.as_str())
    }

    /// Canonical JSON bytes: pretty-printed, trailing newline, wall time
    /// excluded.
    pub fn to_json(&self) -> String {
        let mut m = Map::new();
        m.insert("tool_version".into(), Value::String(self.tool_version.clone()));
        m.insert("command".into(), Value::String(self.command.clone()));
        m.insert("input_digest".into(), Value::String(self.input_digest.clone()));
        m.insert("seed".into(), Value::Number(self.seed.into()));
        m.insert("blocks".into(), Value::Array(self.blocks.iter().map(Block::to_value).collect()));
        let mut s = serde_json::to_string_pretty(&Value::Object(m))
            .expect("report serialization cannot fail");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<RunReport> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| Error::Domain(format!("report: {e}")))?;
        let obj = as_object(&v, "report")?;
        let tool_version = as_str(require(obj, "tool_version")?, "tool_version")?.to_string();
        let command = as_str(require(obj, "command")?, "command")?.to_string();
        let input_digest = as_str(require(obj, "input_digest")?, "input_digest")?.to_string();
        let seed = require(obj, "seed")?
            .as_u64()
            .ok_or_else(|| Error::Domain("report: seed must be a u64".into()))?;
        let blocks = match require(obj, "blocks")? {
            Value::Array(items) => {
                items.iter().map(Block::from_value).collect::<Result<Vec<_>>>()?
            }
            _ => return Err(Error::Domain("report: blocks must be an array".into())),
        };
        Ok(RunReport { tool_version, command, input_digest, seed, blocks, wall_ms: None })
    }
}

fn require<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Domain(format!("report: missing key {key:?}")))
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::Domain(format!("report: {what} must be an object")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::Domain(format!("report: {what} must be a string")))
}

/// Hex-encoded SHA-256 of raw bytes.
pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    let out = h.finalize();
    let mut s = String::with_capacity(64);
    for b in out {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

/// Input digest for a run: the model file's bytes when one was given,
/// otherwise the canonical parameter string describing the built-in inputs.
pub fn input_digest(model_path: Option<&Path>, fallback_params: &str) -> Result<String> {
    let bytes = match model_path {
        Some(p) => std::fs::read(p)?,
        None => fallback_params.as_bytes().to_vec(),
    };
    Ok(format!("sha256:{}", sha256_hex(&bytes)))
}

/// Render a CSV table with a header row; floats use the canonical rendering.
pub fn csv_string(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut s = String::new();
    s.push_str(&header.join(","));
    s.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&x| fmt_float(x)).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_report() -> RunReport {
        let mut r = RunReport::new("flowinv suite demo --seed 7", "sha256:deadbeef", 7);
        r.push(
            Block::gate("parts_identity", 3.2e-12, 1e-9)
                .with_input("tubes", 50)
                .with_expected("boundary", 1.25),
        );
        r.push(Block::gate_eq("ruelle", 1.004, 1.0, 0.01).with_input("horizon", 200));
        r.push(Block::info("quad_coefficient", 0.4471));
        r.push(Block::check("schema_roundtrip", true));
        r
    }

    #[test]
    fn test_report_json_roundtrip_byte_identical() {
        let r = sample_report();
        let j1 = r.to_json();
        let parsed = RunReport::from_json(&j1).unwrap();
        let j2 = parsed.to_json();
        assert_eq!(j1, j2);
        assert_eq!(parsed, { let mut r = r; r.wall_ms = None; r });
    }

    #[test]
    fn test_report_roundtrip_handles_nonfinite_floats() {
        let mut r = RunReport::new("cmd", "sha256:00", 0);
        r.push(Block::info("nan", f64::NAN).with_measured("inf", f64::INFINITY).with_measured(
            "ninf",
            f64::NEG_INFINITY,
        ));
        let j1 = r.to_json();
        let parsed = RunReport::from_json(&j1).unwrap();
        assert_eq!(j1, parsed.to_json());
        assert!(parsed.blocks[0].measured[0].1.is_nan());
        assert_eq!(parsed.blocks[0].measured[1].1, f64::INFINITY);
    }

    #[test]
    fn test_report_pass_semantics() {
        assert_eq!(Block::gate("a", 1.0, 2.0).pass, Pass::True);
        assert_eq!(Block::gate("a", 3.0, 2.0).pass, Pass::False);
        assert_eq!(Block::gate("a", f64::NAN, 2.0).pass, Pass::False);
        assert_eq!(Block::gate_ge("a", 0.999, 0.9).pass, Pass::True);
        assert_eq!(Block::gate_ge("a", 0.5, 0.9).pass, Pass::False);
        assert_eq!(Block::gate_eq("a", 1.05, 1.0, 0.01).pass, Pass::False);
        assert_eq!(Block::gate("a", 3.0, 2.0).informative().pass, Pass::Informative);
        let mut r = sample_report();
        assert!(r.all_pass());
        assert_eq!(r.first_failure(), None);
        r.push(Block::gate("bad", 1.0, 0.5));
        assert!(!r.all_pass());
        assert_eq!(r.first_failure(), Some("bad"));
    }

    #[test]
    fn test_report_wall_time_not_in_canonical_bytes() {
        let mut a = sample_report();
        let mut b = sample_report();
        a.wall_ms = Some(12);
        b.wall_ms = Some(98765);
        assert_eq!(a.to_json(), b.to_json());
        assert!(!a.to_json().contains("wall"));
    }

    #[test]
    fn test_report_float_format_exact() {
        assert_eq!(fmt_float(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_float(-0.5), "-5.0000000000000000e-1");
        for &x in &[std::f64::consts::PI, 1.0 / 3.0, 6.02e23, -1.7e-308, 0.0] {
            assert_eq!(fmt_float(x).parse::<f64>().unwrap(), x);
            assert_eq!(fmt_float(fmt_float(x).parse::<f64>().unwrap()), fmt_float(x));
        }
    }

    #[test]
    fn test_report_sha256_known_vector() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
        assert_eq!(input_digest(None, "abc").unwrap(), format!("sha256:{}", sha256_hex(b"abc")));
    }

    #[test]
    fn test_report_csv_rendering() {
        let s = csv_string(&["eps", "value"], &[vec![0.1, 2.0], vec![0.2, 4.0]]);
        assert_eq!(
            s,
            "eps,value\n1.0000000000000001e-1,2.0000000000000000e0\n2.0000000000000001e-1,4.0000000000000000e0\n"
        );
    }

    #[test]
    fn test_report_from_json_rejects_malformed() {
        assert!(RunReport::from_json("not json").is_err());
        assert!(RunReport::from_json("{}").is_err());
        let mut r = sample_report();
        r.blocks[0].pass = Pass::True;
        let bad = r.to_json().replace("\"true\"", "\"maybe\"");
        assert!(RunReport::from_json(&bad).is_err());
        let bad_seed = r.to_json().replace("\"seed\": 7", "\"seed\": -1");
        assert!(RunReport::from_json(&bad_seed).is_err());
    }
}
