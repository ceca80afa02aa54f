//! Shared certificate plumbing for the perturbation constructions.
//!
//! Every construction returns a [`CertifiedField`]: an evaluator for the
//! built vector field plus a list of named, quantitative certificate clauses
//! (measured value against its bound). Constructions fail eagerly when a
//! clause fails, but the full record is kept for reporting either way.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// One quantitative certificate clause: a measured diagnostic against the
/// bound it must satisfy.
#[derive(Debug, Clone)]
pub struct Clause {
    pub name: String,
    pub measured: f64,
    pub bound: f64,
    pub pass: bool,
}

impl Clause {
    /// Clause that passes iff `measured <= bound` (both must be finite).
    pub fn le(name: &str, measured: f64, bound: f64) -> Clause {
        Clause {
            name: name.to_string(),
            measured,
            bound,
            pass: measured.is_finite() && bound.is_finite() && measured <= bound,
        }
    }

    /// Informative clause recorded without a pass requirement.
    pub fn info(name: &str, measured: f64, bound: f64) -> Clause {
        Clause { name: name.to_string(), measured, bound, pass: true }
    }
}

type FieldEval = dyn Fn([f64; 3]) -> [f64; 3] + Send + Sync;

/// A constructed vector field together with its certificate record.
#[derive(Clone)]
pub struct CertifiedField {
    pub construction: String,
    /// Rendered input parameters, in insertion order.
    pub inputs: Vec<(String, String)>,
    pub clauses: Vec<Clause>,
    field: Arc<FieldEval>,
}

impl fmt::Debug for CertifiedField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CertifiedField")
            .field("construction", &self.construction)
            .field("inputs", &self.inputs)
            .field("clauses", &self.clauses)
            .finish_non_exhaustive()
    }
}

impl CertifiedField {
    pub fn new(
        construction: &str,
        inputs: Vec<(String, String)>,
        field: Arc<FieldEval>,
    ) -> CertifiedField {
        CertifiedField { construction: construction.to_string(), inputs, clauses: Vec::new(), field }
    }

    pub fn eval(&self, p: [f64; 3]) -> [f64; 3] {
        (self.field)(p)
    }

    pub fn push(&mut self, clause: Clause) {
        self.clauses.push(clause);
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }

    pub fn all_pass(&self) -> bool {
        self.clauses.iter().all(|c| c.pass)
    }

    /// Errors with the names of every failed clause, if any.
    pub fn ensure(self) -> Result<CertifiedField> {
        let failed: Vec<&str> =
            self.clauses.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        if failed.is_empty() {
            Ok(self)
        } else {
            Err(Error::Construction(format!(
                "{}: certificate failed: {}",
                self.construction,
                failed.join(", ")
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dummy() -> CertifiedField {
        CertifiedField::new(
            "dummy",
            vec![("k".into(), "1".into())],
            Arc::new(|p| [p[0], 0.0, 0.0]),
        )
    }

    #[test]
    fn test_certify_clause_le_compares_and_rejects_nan() {
        assert!(Clause::le("a", 0.5, 1.0).pass);
        assert!(!Clause::le("b", 2.0, 1.0).pass);
        assert!(!Clause::le("c", f64::NAN, 1.0).pass);
        assert!(!Clause::le("d", 0.0, f64::INFINITY).pass);
    }

    #[test]
    fn test_certify_ensure_names_failed_clauses() {
        let mut cf = dummy();
        cf.push(Clause::le("fine", 0.0, 1.0));
        cf.push(Clause::le("broken_one", 2.0, 1.0));
        cf.push(Clause::le("broken_two", 3.0, 1.0));
        let err = cf.ensure().unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("broken_one") && msg.contains("broken_two"), "{msg}");
        assert!(!msg.contains("fine,"), "{msg}");
    }

    #[test]
    fn test_certify_eval_delegates_to_closure() {
        let cf = dummy();
        assert_eq!(cf.eval([2.0, 5.0, 7.0]), [2.0, 0.0, 0.0]);
        assert!(cf.all_pass());
    }
}
