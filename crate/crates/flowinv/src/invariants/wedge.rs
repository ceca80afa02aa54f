//! Symbolic wedge calculus on the tube slab `[0,1]_t x T^2`.
//!
//! Differential forms are finite sums of [`WedgeTerm`]s: an ordered coordinate
//! monomial (for example `dx ^ dt ^ dy`) times a coefficient profile in `t`.
//! Degree-3 monomials reduce to the reference volume `dt ^ dx ^ dy` through
//! the permutation sign; a repeated coordinate kills the term. All helicity
//! signs downstream derive from this single orientation convention.

use crate::error::{Error, Result};
use crate::model::profile::ScalarProfile1D;
use crate::numerics::{quad1d, QuadratureSpec};

/// Tube coordinates in reference order `(t, x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    T,
    X,
    Y,
}

impl Axis {
    pub fn index(self) -> usize {
        match self {
            Axis::T => 0,
            Axis::X => 1,
            Axis::Y => 2,
        }
    }
}

/// Ordered monomial times a coefficient profile (a function of `t` alone;
/// torus factors carry no coefficient dependence in the tube models).
#[derive(Debug, Clone, PartialEq)]
pub struct WedgeTerm {
    pub axes: Vec<Axis>,
    pub coeff: ScalarProfile1D,
}

impl WedgeTerm {
    pub fn new(axes: Vec<Axis>, coeff: ScalarProfile1D) -> Self {
        WedgeTerm { axes, coeff }
    }
}

/// A finite sum of wedge terms (homogeneous degree expected by the ops).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Form {
    pub terms: Vec<WedgeTerm>,
}

impl Form {
    pub fn one_form(terms: Vec<(Axis, ScalarProfile1D)>) -> Self {
        Form { terms: terms.into_iter().map(|(a, c)| WedgeTerm::new(vec![a], c)).collect() }
    }

    pub fn two_form(terms: Vec<([Axis; 2], ScalarProfile1D)>) -> Self {
        Form {
            terms: terms
                .into_iter()
                .map(|(a, c)| WedgeTerm::new(vec![a[0], a[1]], c))
                .collect(),
        }
    }
}

/// Sign of the permutation taking `axes` to the reference order `(t, x, y)`;
/// `0.0` when a coordinate repeats. Defined for degree-3 monomials.
pub fn reduction_sign(axes: &[Axis]) -> f64 {
    if axes.len() != 3 {
        return 0.0;
    }
    let idx: Vec<usize> = axes.iter().map(|a| a.index()).collect();
    if idx[0] == idx[1] || idx[0] == idx[2] || idx[1] == idx[2] {
        return 0.0;
    }
    // Parity via inversion count of the 3-permutation.
    let mut inversions = 0;
    for i in 0..3 {
        for j in (i + 1)..3 {
            if idx[i] > idx[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Exterior derivative for coefficients depending on `t` only:
/// `d(P(t) dm) = P'(t) dt ^ dm`; a leading `dt` in the monomial kills the
/// term.
pub fn d_t(form: &Form) -> Result<Form> {
    let mut out = Form::default();
    for term in &form.terms {
        if term.axes.contains(&Axis::T) {
            continue;
        }
        let mut axes = Vec::with_capacity(term.axes.len() + 1);
        axes.push(Axis::T);
        axes.extend_from_slice(&term.axes);
        out.terms.push(WedgeTerm::new(axes, term.coeff.derivative()?));
    }
    Ok(out)
}

/// Volume-form coefficient assembled from products of profile pairs; kept as
/// factored pairs because profile products leave the closed basis.
#[derive(Debug, Clone, Default)]
pub struct VolumeIntegrand {
    pub pairs: Vec<(f64, ScalarProfile1D, ScalarProfile1D)>,
}

impl VolumeIntegrand {
    pub fn eval(&self, t: f64) -> f64 {
        self.pairs.iter().map(|(s, p, q)| s * p.eval(t) * q.eval(t)).sum()
    }

    pub fn integral01(&self, tol: f64) -> Result<f64> {
        if self.pairs.is_empty() {
            return Ok(0.0);
        }
        Ok(quad1d(|t| self.eval(t), (0.0, 1.0), QuadratureSpec::with_tol(tol))?.value)
    }
}

/// Wedges a 1-form against a 2-form and reduces every degree-3 monomial to
/// the reference volume `dt ^ dx ^ dy`.
pub fn wedge_reduce(one: &Form, two: &Form) -> Result<VolumeIntegrand> {
    let mut out = VolumeIntegrand::default();
    for a in &one.terms {
        if a.axes.len() != 1 {
            return Err(Error::Domain("wedge_reduce: first factor must be a 1-form".into()));
        }
        for b in &two.terms {
            if b.axes.len() != 2 {
                return Err(Error::Domain("wedge_reduce: second factor must be a 2-form".into()));
            }
            let axes = [a.axes[0], b.axes[0], b.axes[1]];
            let sign = reduction_sign(&axes);
            if sign != 0.0 {
                out.pairs.push((sign, a.coeff.clone(), b.coeff.clone()));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_wedge_reduction_sign_all_permutations() {
        use Axis::{T, X, Y};
        assert_eq!(reduction_sign(&[T, X, Y]), 1.0);
        assert_eq!(reduction_sign(&[X, Y, T]), 1.0);
        assert_eq!(reduction_sign(&[Y, T, X]), 1.0);
        assert_eq!(reduction_sign(&[X, T, Y]), -1.0);
        assert_eq!(reduction_sign(&[T, Y, X]), -1.0);
        assert_eq!(reduction_sign(&[Y, X, T]), -1.0);
    }

    #[test]
    fn test_wedge_reduction_sign_repeated_coordinate() {
        use Axis::{T, X};
        assert_eq!(reduction_sign(&[X, X, T]), 0.0);
        assert_eq!(reduction_sign(&[T, T, T]), 0.0);
    }

    #[test]
    fn test_wedge_d_t_of_coefficient_one_form() {
        // d(t^2 dx) = 2t dt ^ dx
        let p = ScalarProfile1D::from_poly(&[0.0, 0.0, 1.0]).unwrap();
        let form = Form::one_form(vec![(Axis::X, p)]);
        let d = d_t(&form).unwrap();
        assert_eq!(d.terms.len(), 1);
        assert_eq!(d.terms[0].axes, vec![Axis::T, Axis::X]);
        assert!((d.terms[0].coeff.eval(0.5) - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn test_wedge_d_t_kills_dt_terms() {
        let p = ScalarProfile1D::cos_term(3, 1.0).unwrap();
        let form = Form::one_form(vec![(Axis::T, p)]);
        assert!(d_t(&form).unwrap().terms.is_empty());
    }

    #[test]
    fn test_wedge_reduce_hand_case() {
        // (A dx) ^ (-F dt ^ dy): monomial (x, t, y) has sign -1, giving +AF.
        let a = ScalarProfile1D::constant(2.0);
        let f = ScalarProfile1D::constant(3.0);
        let one = Form::one_form(vec![(Axis::X, a)]);
        let two = Form::two_form(vec![([Axis::T, Axis::Y], f.scale(-1.0))]);
        let v = wedge_reduce(&one, &two).unwrap();
        assert!((v.eval(0.3) - 6.0).abs() <= 1e-15);
        assert!((v.integral01(1e-12).unwrap() - 6.0).abs() <= 1e-12);
    }

    #[test]
    fn test_wedge_reduce_drops_dt_coefficient_terms() {
        // (h'(t) dt) ^ (G dt ^ dx) vanishes: repeated dt.
        let h = ScalarProfile1D::cos_term(1, 1.0).unwrap();
        let one = Form::one_form(vec![(Axis::T, h)]);
        let two = Form::two_form(vec![
            ([Axis::T, Axis::X], ScalarProfile1D::constant(1.0)),
            ([Axis::T, Axis::Y], ScalarProfile1D::constant(-1.0)),
        ]);
        let v = wedge_reduce(&one, &two).unwrap();
        assert!(v.pairs.is_empty());
    }
}
