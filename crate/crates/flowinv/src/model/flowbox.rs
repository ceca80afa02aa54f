//! Flat flow boxes.

use crate::error::{Error, Result};

/// The flow box `[-1, 1]^2 x [-delta, delta]` with volume `dx ^ dy ^ dz` and
/// base field `X = d/dz`. Perturbations are supplied downstream as primitives
/// of one-forms added to `alpha = x dy` (for which `d(x dy) = i_X mu`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowBoxField {
    delta: f64,
}

impl FlowBoxField {
    pub fn new(delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::Domain(format!("flow box half-thickness {delta} must be positive")));
        }
        Ok(FlowBoxField { delta })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// The unperturbed field.
    pub fn base_field(&self, _p: [f64; 3]) -> [f64; 3] {
        [0.0, 0.0, 1.0]
    }

    pub fn contains(&self, p: [f64; 3]) -> bool {
        p[0].abs() <= 1.0 && p[1].abs() <= 1.0 && p[2].abs() <= self.delta
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_flowbox_rejects_bad_delta() {
        assert!(FlowBoxField::new(0.0).is_err());
        assert!(FlowBoxField::new(-1.0).is_err());
        assert!(FlowBoxField::new(f64::NAN).is_err());
    }

    #[test]
    fn test_flowbox_contains_boundary() {
        let b = FlowBoxField::new(0.25).unwrap();
        assert!(b.contains([1.0, -1.0, 0.25]));
        assert!(!b.contains([0.0, 0.0, 0.26]));
        assert_eq!(b.base_field([0.3, 0.1, -0.2]), [0.0, 0.0, 1.0]);
    }
}
