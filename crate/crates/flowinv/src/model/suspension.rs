//! Suspension models over hyperbolic toral automorphisms.

use crate::error::{Error, Result};
use crate::model::trig3::TrigPoly2;

/// A hyperbolic integer matrix (`det = 1`, `|trace| > 2`) with a certified
/// positive roof function on the base 2-torus. The suspension flow moves at
/// unit speed up the mapping torus, returning to the base after `roof(p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CatSuspension {
    mat: [[i64; 2]; 2],
    roof: TrigPoly2,
}

impl CatSuspension {
    pub fn new(mat: [[i64; 2]; 2], roof: TrigPoly2) -> Result<Self> {
        let det = mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0];
        if det != 1 {
            return Err(Error::Domain(format!("base matrix determinant {det} must be 1")));
        }
        let trace = mat[0][0] + mat[1][1];
        if trace.abs() <= 2 {
            return Err(Error::Domain(format!(
                "base matrix trace {trace} is not hyperbolic (|trace| must exceed 2)"
            )));
        }
        let (min, certified) = roof.positivity_certificate();
        if !certified {
            return Err(Error::Domain(format!(
                "roof is not certified positive (grid min {min:.3e})"
            )));
        }
        Ok(CatSuspension { mat, roof })
    }

    /// The standard cat map `[[2, 1], [1, 1]]` with the given roof.
    pub fn cat(roof: TrigPoly2) -> Result<Self> {
        CatSuspension::new([[2, 1], [1, 1]], roof)
    }

    pub fn mat(&self) -> &[[i64; 2]; 2] {
        &self.mat
    }

    pub fn roof(&self) -> &TrigPoly2 {
        &self.roof
    }

    pub fn with_roof(&self, roof: TrigPoly2) -> Result<Self> {
        CatSuspension::new(self.mat, roof)
    }

    /// Applies the base map to a point of the 2-torus (mod 1).
    pub fn apply(&self, p: [f64; 2]) -> [f64; 2] {
        let x = self.mat[0][0] as f64 * p[0] + self.mat[0][1] as f64 * p[1];
        let y = self.mat[1][0] as f64 * p[0] + self.mat[1][1] as f64 * p[1];
        [x.rem_euclid(1.0), y.rem_euclid(1.0)]
    }

    /// Larger eigenvalue of the base matrix (real, since `|trace| > 2`).
    pub fn expanding_eigenvalue(&self) -> f64 {
        let t = (self.mat[0][0] + self.mat[1][1]) as f64;
        (t.abs() + (t * t - 4.0).sqrt()) / 2.0
    }
}
