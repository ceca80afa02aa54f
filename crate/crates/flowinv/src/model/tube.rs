//! Toric flow tubes.
//!
//! A tube is the slab `[0,1]_t x T^2_{x,y}` carrying the volume form
//! `dt ^ dx ^ dy` and the divergence-free field
//!
//! ```text
//!     X = F(t) d/dx + G(t) d/dy,      G > 0,
//! ```
//!
//! together with a normal-frame trivialization that rotates by
//! `2 pi (m x + n y)` radians across the torus (`frame_offset = (m, n)`).
//! Every invariant computed downstream (helicity, Ruelle) is a functional of
//! `(F, G, boundary_start, frame_offset)`.

use crate::error::{Error, Result};
use crate::model::profile::ScalarProfile1D;

/// Immutable tube model; see the module docs for the geometry.
#[derive(Debug, Clone, PartialEq)]
pub struct TubeProfile {
    f: ScalarProfile1D,
    g: ScalarProfile1D,
    boundary_start: (f64, f64),
    frame_offset: (i64, i64),
}

impl TubeProfile {
    /// Validates positivity of `G` with the grid + Lipschitz-slack certificate.
    pub fn new(
        f: ScalarProfile1D,
        g: ScalarProfile1D,
        boundary_start: (f64, f64),
        frame_offset: (i64, i64),
    ) -> Result<Self> {
        let (min, certified) = g.positivity_certificate();
        if !certified {
            return Err(Error::Domain(format!(
                "tube profile G is not certified positive (grid min {min:.3e})"
            )));
        }
        Ok(TubeProfile { f, g, boundary_start, frame_offset })
    }

    /// Convenience constructor with class start `(0, 0)` and offset `(1, 0)`.
    pub fn standard(f: ScalarProfile1D, g: ScalarProfile1D) -> Result<Self> {
        TubeProfile::new(f, g, (0.0, 0.0), (1, 0))
    }

    pub fn f(&self) -> &ScalarProfile1D {
        &self.f
    }

    pub fn g(&self) -> &ScalarProfile1D {
        &self.g
    }

    pub fn boundary_start(&self) -> (f64, f64) {
        self.boundary_start
    }

    pub fn frame_offset(&self) -> (i64, i64) {
        self.frame_offset
    }

    /// Primitive `A` with `A' = G`, `A(0) = a0`.
    pub fn primitive_a(&self) -> Result<ScalarProfile1D> {
        self.g.antiderivative(self.boundary_start.0)
    }

    /// Primitive `B` with `B' = -F`, `B(0) = b0`.
    pub fn primitive_b(&self) -> Result<ScalarProfile1D> {
        self.f.scale(-1.0).antiderivative(self.boundary_start.1)
    }

    /// Boundary class endpoint `(c, d) = (A(1), B(1))`.
    pub fn boundary_end(&self) -> Result<(f64, f64)> {
        Ok((self.primitive_a()?.eval(1.0), self.primitive_b()?.eval(1.0)))
    }

    /// Returns a copy with a different class start (same field).
    pub fn with_boundary_start(&self, start: (f64, f64)) -> TubeProfile {
        TubeProfile { boundary_start: start, ..self.clone() }
    }

    /// Returns a copy with a different frame offset (same field).
    pub fn with_frame_offset(&self, offset: (i64, i64)) -> TubeProfile {
        TubeProfile { frame_offset: offset, ..self.clone() }
    }

    /// Returns a copy with `F` replaced (class data untouched).
    pub fn with_f(&self, f: ScalarProfile1D) -> TubeProfile {
        TubeProfile { f, ..self.clone() }
    }

    /// Pushforward under the volume-preserving torus shear
    /// `(t, x, y) -> (t, x + p y, y)`: the field components transform as
    /// `(F, G) -> (F + p G, G)`, the frame offset as `(m, n) -> (m, n - p m)`,
    /// and the class start as `(a0, b0) -> (a0, b0 - p a0)`.
    pub fn shear_pushforward(&self, p: i64) -> Result<TubeProfile> {
        let pf = p as f64;
        let f = self.f.add_scaled(&self.g, pf)?;
        let (m, n) = self.frame_offset;
        let (a0, b0) = self.boundary_start;
        TubeProfile::new(f, self.g.clone(), (a0, b0 - pf * a0), (m, n - p * m))
    }

    /// Splits the tube at `t = 1/2` into two sub-tubes reparametrized to
    /// `[0, 1]`. Class starts chain (`left` ends where `right` begins); frame
    /// offsets are inherited. Profiles must stay in the basis (even harmonics
    /// only) and bumps must not straddle the cut.
    pub fn split_at_half(&self) -> Result<(TubeProfile, TubeProfile)> {
        let a_mid = self.primitive_a()?.eval(0.5);
        let b_mid = self.primitive_b()?.eval(0.5);
        let left = TubeProfile::new(
            self.f.reparam_half(0)?,
            self.g.reparam_half(0)?,
            self.boundary_start,
            self.frame_offset,
        )?;
        let right = TubeProfile::new(
            self.f.reparam_half(1)?,
            self.g.reparam_half(1)?,
            (a_mid, b_mid),
            self.frame_offset,
        )?;
        Ok((left, right))
    }
}

/// Translation vector `(integral of G, -integral of F)` between the two
/// boundary classes: the class set of the tube is `{z, z + c}` as `z` ranges
/// over starting classes. Integration runs over the tube coordinate `t`.
pub fn tube_boundary_class_set(tp: &TubeProfile) -> (f64, f64) {
    (tp.g().integral01(), -tp.f().integral01())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile_const(c: f64) -> ScalarProfile1D {
        ScalarProfile1D::constant(c)
    }

    #[test]
    fn test_tube_boundary_class_set_constants() {
        let tp = TubeProfile::standard(profile_const(0.0), profile_const(1.0)).unwrap();
        assert_eq!(tube_boundary_class_set(&tp), (1.0, 0.0));
        let tp = TubeProfile::standard(profile_const(1.0), profile_const(1.0)).unwrap();
        assert_eq!(tube_boundary_class_set(&tp), (1.0, -1.0));
    }

    #[test]
    fn test_tube_boundary_class_set_mixed_profile() {
        // F = sin(2 pi t) integrates to 0; G = 1 + t integrates to 3/2.
        let f = ScalarProfile1D::sin_term(1, 1.0).unwrap();
        let g = ScalarProfile1D::from_poly(&[1.0, 1.0]).unwrap();
        let tp = TubeProfile::standard(f, g).unwrap();
        let c = tube_boundary_class_set(&tp);
        assert!((c.0 - 1.5).abs() <= 1e-12);
        assert!(c.1.abs() <= 1e-12);
    }

    #[test]
    fn test_tube_boundary_end_matches_class_vector() {
        let f = ScalarProfile1D::from_poly(&[0.2, -0.4, 1.0]).unwrap();
        let g = profile_const(2.0)
            .add(&ScalarProfile1D::cos_term(2, 0.3).unwrap())
            .unwrap();
        let tp = TubeProfile::new(f, g, (0.7, -0.2), (1, 2)).unwrap();
        let (c, d) = tp.boundary_end().unwrap();
        let vec = tube_boundary_class_set(&tp);
        assert!((c - (0.7 + vec.0)).abs() <= 1e-12);
        assert!((d - (-0.2 + vec.1)).abs() <= 1e-12);
    }

    #[test]
    fn test_tube_rejects_nonpositive_g() {
        let g = ScalarProfile1D::sin_term(1, 1.0).unwrap();
        assert!(TubeProfile::standard(profile_const(0.0), g).is_err());
    }

    #[test]
    fn test_tube_shear_pushforward_transforms_components() {
        let f = profile_const(1.0);
        let g = profile_const(2.0);
        let tp = TubeProfile::new(f, g, (0.5, 0.25), (1, 3)).unwrap();
        let sheared = tp.shear_pushforward(2).unwrap();
        assert!((sheared.f().eval(0.3) - 5.0).abs() <= 1e-15);
        assert_eq!(sheared.frame_offset(), (1, 1));
        assert_eq!(sheared.boundary_start(), (0.5, 0.25 - 2.0 * 0.5));
    }

    #[test]
    fn test_tube_split_at_half_chains_class_starts() {
        let f = ScalarProfile1D::from_poly(&[1.0, 0.5]).unwrap();
        let g = profile_const(1.0).add(&ScalarProfile1D::cos_term(2, 0.25).unwrap()).unwrap();
        let tp = TubeProfile::new(f, g, (0.0, 0.0), (1, 0)).unwrap();
        let (left, right) = tp.split_at_half().unwrap();
        let (c_left, d_left) = left.boundary_end().unwrap();
        let start_right = right.boundary_start();
        assert!((c_left - start_right.0).abs() <= 1e-12);
        assert!((d_left - start_right.1).abs() <= 1e-12);
        // Chained endpoint equals the whole tube's endpoint.
        let (c, d) = tp.boundary_end().unwrap();
        let (c2, d2) = right.boundary_end().unwrap();
        assert!((c - c2).abs() <= 1e-12);
        assert!((d - d2).abs() <= 1e-12);
    }
}
