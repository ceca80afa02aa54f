//! JSON model-file parsing.
//!
//! Records are discriminated by `"type"`:
//!
//! ```json
//! { "type": "toric_tube",
//!   "F": {"const": 1.0, "poly": [0.0, 0.5], "cos": [0.1], "sin": [],
//!         "bumps": [[0.5, 0.1, 2.0]]},
//!   "G": {"const": 1.0},
//!   "class_start": [0.0, 0.0],
//!   "frame_offset": [1, 0] }
//! ```
//!
//! with analogous records for `"flow_box"` (`delta`), `"trig_field_3t"`
//! (`components`: three term lists `{"kind": "cos"|"sin", "k": [i, j],
//! "amp": a}`), and `"cat_suspension"` (`mat`, `roof` term list). Errors name
//! the file path and the offending key.

use std::path::Path;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::model::flowbox::FlowBoxField;
use crate::model::profile::ScalarProfile1D;
use crate::model::suspension::CatSuspension;
use crate::model::trig3::{TrigField3T, TrigKind, TrigPoly2, TrigTerm};
use crate::model::tube::TubeProfile;

/// Any model a CLI experiment can run on.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelFile {
    Tube(TubeProfile),
    FlowBox(FlowBoxField),
    Trig(TrigField3T),
    Suspension(CatSuspension),
}

impl ModelFile {
    pub fn kind(&self) -> &'static str {
        match self {
            ModelFile::Tube(_) => "toric_tube",
            ModelFile::FlowBox(_) => "flow_box",
            ModelFile::Trig(_) => "trig_field_3t",
            ModelFile::Suspension(_) => "cat_suspension",
        }
    }
}

struct Ctx<'a> {
    path: &'a str,
}

impl<'a> Ctx<'a> {
    fn err(&self, key: &str, message: impl std::fmt::Display) -> Error {
        Error::ModelFile {
            path: self.path.to_string(),
            message: format!("key '{key}': {message}"),
        }
    }

    fn number(&self, v: &Value, key: &str) -> Result<f64> {
        v.as_f64().ok_or_else(|| self.err(key, "expected a number"))
    }

    fn integer(&self, v: &Value, key: &str) -> Result<i64> {
        v.as_i64().ok_or_else(|| self.err(key, "expected an integer"))
    }

    fn array<'v>(&self, v: &'v Value, key: &str) -> Result<&'v Vec<Value>> {
        v.as_array().ok_or_else(|| self.err(key, "expected an array"))
    }

    fn number_list(&self, v: &Value, key: &str) -> Result<Vec<f64>> {
        self.array(v, key)?
            .iter()
            .map(|x| self.number(x, key))
            .collect()
    }

    fn pair_f64(&self, v: &Value, key: &str) -> Result<(f64, f64)> {
        let arr = self.number_list(v, key)?;
        if arr.len() != 2 {
            return Err(self.err(key, "expected exactly two numbers"));
        }
        Ok((arr[0], arr[1]))
    }

    fn pair_i64(&self, v: &Value, key: &str) -> Result<(i64, i64)> {
        let arr = self.array(v, key)?;
        if arr.len() != 2 {
            return Err(self.err(key, "expected exactly two integers"));
        }
        Ok((self.integer(&arr[0], key)?, self.integer(&arr[1], key)?))
    }

    fn profile(&self, v: &Value, key: &str) -> Result<ScalarProfile1D> {
        let obj = v.as_object().ok_or_else(|| self.err(key, "expected a profile object"))?;
        for k in obj.keys() {
            if !matches!(k.as_str(), "const" | "poly" | "cos" | "sin" | "bumps") {
                return Err(self.err(&format!("{key}.{k}"), "unknown profile key"));
            }
        }
        let mut poly = match obj.get("poly") {
            Some(p) => self.number_list(p, &format!("{key}.poly"))?,
            None => vec![],
        };
        if let Some(c) = obj.get("const") {
            let c = self.number(c, &format!("{key}.const"))?;
            if poly.is_empty() {
                poly.push(c);
            } else {
                poly[0] += c;
            }
        }
        let cos = match obj.get("cos") {
            Some(p) => self.number_list(p, &format!("{key}.cos"))?,
            None => vec![],
        };
        let sin = match obj.get("sin") {
            Some(p) => self.number_list(p, &format!("{key}.sin"))?,
            None => vec![],
        };
        let mut profile = ScalarProfile1D::from_parts(poly, cos, sin)
            .map_err(|e| self.err(key, e))?;
        if let Some(bumps) = obj.get("bumps") {
            for (i, bump) in self.array(bumps, &format!("{key}.bumps"))?.iter().enumerate() {
                let bkey = format!("{key}.bumps[{i}]");
                let triple = self.number_list(bump, &bkey)?;
                if triple.len() != 3 {
                    return Err(self.err(&bkey, "expected [center, halfwidth, amplitude]"));
                }
                profile = profile
                    .with_bump(triple[0], triple[1], triple[2])
                    .map_err(|e| self.err(&bkey, e))?;
            }
        }
        Ok(profile)
    }

    fn trig_terms(&self, v: &Value, key: &str) -> Result<TrigPoly2> {
        let mut terms = Vec::new();
        for (i, term) in self.array(v, key)?.iter().enumerate() {
            let tkey = format!("{key}[{i}]");
            let obj = term.as_object().ok_or_else(|| self.err(&tkey, "expected a term object"))?;
            let kind = match obj.get("kind").and_then(|k| k.as_str()) {
                Some("cos") => TrigKind::Cos,
                Some("sin") => TrigKind::Sin,
                _ => return Err(self.err(&format!("{tkey}.kind"), "expected \"cos\" or \"sin\"")),
            };
            let amp = self.number(
                obj.get("amp").ok_or_else(|| self.err(&tkey, "missing 'amp'"))?,
                &format!("{tkey}.amp"),
            )?;
            let (k0, k1) = self.pair_i64(
                obj.get("k").ok_or_else(|| self.err(&tkey, "missing 'k'"))?,
                &format!("{tkey}.k"),
            )?;
            terms.push(TrigTerm { amp, kind, k: [k0, k1] });
        }
        Ok(TrigPoly2::new(terms))
    }
}

/// Parses a model file; errors carry the path and offending key.
pub fn parse_model_file(path: &Path) -> Result<ModelFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::ModelFile {
        path: path.display().to_string(),
        message: format!("cannot read file: {e}"),
    })?;
    parse_model_str(&text, &path.display().to_string())
}

/// Parses model JSON given explicitly (the `path` is used for error context).
pub fn parse_model_str(text: &str, path: &str) -> Result<ModelFile> {
    let ctx = Ctx { path };
    let root: Value = serde_json::from_str(text).map_err(|e| Error::ModelFile {
        path: path.to_string(),
        message: format!("invalid JSON: {e}"),
    })?;
    let obj = root.as_object().ok_or_else(|| ctx.err("<root>", "expected a JSON object"))?;
    let kind = obj
        .get("type")
        .and_then(|t| t.as_str())
        .ok_or_else(|| ctx.err("type", "missing or non-string"))?;
    match kind {
        "toric_tube" => {
            let f = ctx.profile(obj.get("F").ok_or_else(|| ctx.err("F", "missing"))?, "F")?;
            let g = ctx.profile(obj.get("G").ok_or_else(|| ctx.err("G", "missing"))?, "G")?;
            let class_start = match obj.get("class_start") {
                Some(v) => ctx.pair_f64(v, "class_start")?,
                None => (0.0, 0.0),
            };
            let frame_offset = match obj.get("frame_offset") {
                Some(v) => ctx.pair_i64(v, "frame_offset")?,
                None => (1, 0),
            };
            let tube = TubeProfile::new(f, g, class_start, frame_offset)
                .map_err(|e| ctx.err("G", e))?;
            Ok(ModelFile::Tube(tube))
        }
        "flow_box" => {
            let delta = ctx.number(
                obj.get("delta").ok_or_else(|| ctx.err("delta", "missing"))?,
                "delta",
            )?;
            Ok(ModelFile::FlowBox(FlowBoxField::new(delta).map_err(|e| ctx.err("delta", e))?))
        }
        "trig_field_3t" => {
            let comps = ctx.array(
                obj.get("components").ok_or_else(|| ctx.err("components", "missing"))?,
                "components",
            )?;
            if comps.len() != 3 {
                return Err(ctx.err("components", "expected exactly three component term lists"));
            }
            let c0 = ctx.trig_terms(&comps[0], "components[0]")?;
            let c1 = ctx.trig_terms(&comps[1], "components[1]")?;
            let c2 = ctx.trig_terms(&comps[2], "components[2]")?;
            Ok(ModelFile::Trig(TrigField3T::new([c0, c1, c2])))
        }
        "cat_suspension" => {
            let mat_rows = ctx.array(
                obj.get("mat").ok_or_else(|| ctx.err("mat", "missing"))?,
                "mat",
            )?;
            if mat_rows.len() != 2 {
                return Err(ctx.err("mat", "expected two rows"));
            }
            let r0 = ctx.pair_i64(&mat_rows[0], "mat[0]")?;
            let r1 = ctx.pair_i64(&mat_rows[1], "mat[1]")?;
            let roof = ctx.trig_terms(
                obj.get("roof").ok_or_else(|| ctx.err("roof", "missing"))?,
                "roof",
            )?;
            let model = CatSuspension::new([[r0.0, r0.1], [r1.0, r1.1]], roof)
                .map_err(|e| ctx.err("mat", e))?;
            Ok(ModelFile::Suspension(model))
        }
        other => Err(ctx.err("type", format!("unknown model type '{other}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_file_parses_tube_record() {
        let text = r#"{
            "type": "toric_tube",
            "F": {"const": 1.0, "sin": [0.5]},
            "G": {"const": 1.0},
            "class_start": [0.0, 1.0],
            "frame_offset": [1, 0]
        }"#;
        let model = parse_model_str(text, "inline").unwrap();
        match model {
            ModelFile::Tube(tp) => {
                assert_eq!(tp.boundary_start(), (0.0, 1.0));
                assert_eq!(tp.frame_offset(), (1, 0));
                assert!((tp.f().eval(0.25) - 1.5).abs() <= 1e-15);
            }
            other => panic!("expected a tube, got {}", other.kind()),
        }
    }

    #[test]
    fn test_file_defaults_class_and_offset() {
        let text = r#"{"type": "toric_tube", "F": {"const": 0.0}, "G": {"const": 1.0}}"#;
        match parse_model_str(text, "inline").unwrap() {
            ModelFile::Tube(tp) => {
                assert_eq!(tp.boundary_start(), (0.0, 0.0));
                assert_eq!(tp.frame_offset(), (1, 0));
            }
            other => panic!("expected a tube, got {}", other.kind()),
        }
    }

    #[test]
    fn test_file_error_names_offending_key() {
        let text = r#"{"type": "toric_tube", "F": {"const": "x"}, "G": {"const": 1.0}}"#;
        let err = parse_model_str(text, "model.json").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("model.json") && msg.contains("F.const"), "got: {msg}");
    }

    #[test]
    fn test_file_rejects_unknown_type_and_bad_json() {
        assert!(parse_model_str(r#"{"type": "nope"}"#, "m").is_err());
        assert!(parse_model_str("{", "m").is_err());
    }

    #[test]
    fn test_file_parses_suspension_and_trig() {
        let susp = r#"{
            "type": "cat_suspension",
            "mat": [[2, 1], [1, 1]],
            "roof": [{"kind": "cos", "k": [0, 0], "amp": 1.0},
                     {"kind": "cos", "k": [1, 0], "amp": 0.1}]
        }"#;
        match parse_model_str(susp, "m").unwrap() {
            ModelFile::Suspension(m) => {
                assert!((m.roof().mean() - 1.0).abs() <= 1e-15);
            }
            other => panic!("expected a suspension, got {}", other.kind()),
        }
        let trig = r#"{
            "type": "trig_field_3t",
            "components": [
                [{"kind": "sin", "k": [1, 0], "amp": 1.0}],
                [{"kind": "sin", "k": [0, 1], "amp": 1.0}],
                [{"kind": "sin", "k": [1, 0], "amp": 1.0}]
            ]
        }"#;
        match parse_model_str(trig, "m").unwrap() {
            ModelFile::Trig(f) => {
                assert_eq!(f, TrigField3T::canonical_sines());
            }
            other => panic!("expected a trig field, got {}", other.kind()),
        }
    }
}
