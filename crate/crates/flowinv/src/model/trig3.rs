//! Trigonometric polynomials on the 2-torus and structured fields on the
//! 3-torus.
//!
//! [`TrigField3T`] components have the shape `(f(y,z), g(x,z), h(x,y))`:
//! component `i` never depends on coordinate `i`, so the Euclidean divergence
//! vanishes identically (and even finite differences of the diagonal terms are
//! exactly zero).

pub const TAU: f64 = std::f64::consts::TAU;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigKind {
    Cos,
    Sin,
}

/// One term `amp * cos/sin(2 pi (k0 u + k1 v))` on the 2-torus.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigTerm {
    pub amp: f64,
    pub kind: TrigKind,
    pub k: [i64; 2],
}

impl TrigTerm {
    fn eval(&self, u: f64, v: f64) -> f64 {
        let phase = TAU * (self.k[0] as f64 * u + self.k[1] as f64 * v);
        match self.kind {
            TrigKind::Cos => self.amp * phase.cos(),
            TrigKind::Sin => self.amp * phase.sin(),
        }
    }

    /// Partial derivative with respect to argument `arg` (0 or 1).
    fn deriv(&self, arg: usize, u: f64, v: f64) -> f64 {
        let w = TAU * self.k[arg] as f64;
        let phase = TAU * (self.k[0] as f64 * u + self.k[1] as f64 * v);
        match self.kind {
            TrigKind::Cos => -self.amp * w * phase.sin(),
            TrigKind::Sin => self.amp * w * phase.cos(),
        }
    }
}

/// Finite trigonometric sum on the 2-torus.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrigPoly2 {
    terms: Vec<TrigTerm>,
}

impl TrigPoly2 {
    pub fn constant(c: f64) -> Self {
        TrigPoly2 { terms: vec![TrigTerm { amp: c, kind: TrigKind::Cos, k: [0, 0] }] }
    }

    pub fn new(terms: Vec<TrigTerm>) -> Self {
        TrigPoly2 { terms }
    }

    pub fn terms(&self) -> &[TrigTerm] {
        &self.terms
    }

    pub fn push(mut self, term: TrigTerm) -> Self {
        self.terms.push(term);
        self
    }

    pub fn cos(k: [i64; 2], amp: f64) -> Self {
        TrigPoly2 { terms: vec![TrigTerm { amp, kind: TrigKind::Cos, k }] }
    }

    pub fn sin(k: [i64; 2], amp: f64) -> Self {
        TrigPoly2 { terms: vec![TrigTerm { amp, kind: TrigKind::Sin, k }] }
    }

    pub fn eval(&self, u: f64, v: f64) -> f64 {
        self.terms.iter().map(|t| t.eval(u, v)).sum()
    }

    pub fn deriv(&self, arg: usize, u: f64, v: f64) -> f64 {
        self.terms.iter().map(|t| t.deriv(arg, u, v)).sum()
    }

    /// Exact Lebesgue mean: only constant (`k = 0`) cosine terms survive.
    pub fn mean(&self) -> f64 {
        self.terms
            .iter()
            .filter(|t| t.k == [0, 0] && t.kind == TrigKind::Cos)
            .map(|t| t.amp)
            .sum()
    }

    pub fn scale(&self, factor: f64) -> TrigPoly2 {
        TrigPoly2 {
            terms: self.terms.iter().map(|t| TrigTerm { amp: factor * t.amp, ..t.clone() }).collect(),
        }
    }

    pub fn add(&self, other: &TrigPoly2) -> TrigPoly2 {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        TrigPoly2 { terms }
    }

    /// Subtracts the exact mean, leaving a mean-zero polynomial.
    pub fn centered(&self) -> TrigPoly2 {
        self.add(&TrigPoly2::constant(-self.mean()))
    }

    /// Exact precomposition with an integer matrix: `p(M u)` has frequency
    /// vectors `M^T k`.
    pub fn compose_matrix(&self, m: &[[i64; 2]; 2]) -> TrigPoly2 {
        TrigPoly2 {
            terms: self
                .terms
                .iter()
                .map(|t| TrigTerm {
                    k: [
                        m[0][0] * t.k[0] + m[1][0] * t.k[1],
                        m[0][1] * t.k[0] + m[1][1] * t.k[1],
                    ],
                    ..t.clone()
                })
                .collect(),
        }
    }

    /// Coefficient-sum bound for `sup |p|`.
    pub fn sup_bound(&self) -> f64 {
        self.terms.iter().map(|t| t.amp.abs()).sum()
    }

    /// Coefficient bound for the gradient sup norm (both arguments).
    pub fn grad_sup_bound(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.amp.abs() * TAU * ((t.k[0].abs() + t.k[1].abs()) as f64))
            .sum()
    }

    /// Grid minimum minus Lipschitz slack; certifies `p > 0` when positive.
    pub fn positivity_certificate(&self) -> (f64, bool) {
        const N: usize = 256;
        let mut min = f64::INFINITY;
        for i in 0..N {
            for j in 0..N {
                let v = self.eval(i as f64 / N as f64, j as f64 / N as f64);
                min = min.min(v);
            }
        }
        // Worst-case move to a grid cell center is half a diagonal.
        let slack = self.grad_sup_bound() * std::f64::consts::SQRT_2 * 0.5 / N as f64;
        (min, min - slack > 0.0)
    }
}

/// Structured divergence-free trigonometric field on the 3-torus.
///
/// Component `i` is a [`TrigPoly2`] evaluated at the two other coordinates in
/// increasing index order: `(f(y,z), g(x,z), h(x,y))`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigField3T {
    components: [TrigPoly2; 3],
}

/// The two coordinate indices component `i` depends on, in increasing order.
fn args_of(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

impl TrigField3T {
    pub fn new(components: [TrigPoly2; 3]) -> Self {
        TrigField3T { components }
    }

    /// The canonical 8-zero example `(sin 2 pi y, sin 2 pi z, sin 2 pi x)`.
    pub fn canonical_sines() -> Self {
        TrigField3T::new([
            TrigPoly2::sin([1, 0], 1.0),
            TrigPoly2::sin([0, 1], 1.0),
            TrigPoly2::sin([1, 0], 1.0),
        ])
    }

    pub fn components(&self) -> &[TrigPoly2; 3] {
        &self.components
    }

    pub fn eval(&self, p: [f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (i, comp) in self.components.iter().enumerate() {
            let (a, b) = args_of(i);
            out[i] = comp.eval(p[a], p[b]);
        }
        out
    }

    /// Analytic Jacobian; row `i` is the gradient of component `i`.
    pub fn jacobian(&self, p: [f64; 3]) -> [[f64; 3]; 3] {
        let mut jac = [[0.0; 3]; 3];
        for (i, comp) in self.components.iter().enumerate() {
            let (a, b) = args_of(i);
            jac[i][a] = comp.deriv(0, p[a], p[b]);
            jac[i][b] = comp.deriv(1, p[a], p[b]);
        }
        jac
    }

    /// Structural divergence: identically zero because `jac[i][i] = 0`.
    pub fn divergence(&self, p: [f64; 3]) -> f64 {
        let j = self.jacobian(p);
        j[0][0] + j[1][1] + j[2][2]
    }

    pub fn scale(&self, factor: f64) -> TrigField3T {
        TrigField3T::new([
            self.components[0].scale(factor),
            self.components[1].scale(factor),
            self.components[2].scale(factor),
        ])
    }

    /// Pushforward under the cyclic coordinate rotation
    /// `sigma(x, y, z) = (y, z, x)`: an exact conjugation that preserves the
    /// component shape, permuting zero sets and eigenvalue data.
    pub fn cyclic_pushforward(&self) -> TrigField3T {
        // (sigma_* X)^i (q) = X^{pre(i)} (sigma^{-1} q) with pre = (1, 2, 0);
        // sigma^{-1}(q) = (q2, q0, q1). Rewriting each component in the
        // increasing-index arguments of its new slot permutes/swaps the
        // frequency indices.
        let rewrite = |i: usize| -> TrigPoly2 {
            let pre = [1usize, 2, 0][i];
            let src = &self.components[pre];
            let (a_old, b_old) = args_of(pre);
            // sigma^{-1}(q)[c] = q[(c + 2) mod 3]: old coordinate c reads the
            // new coordinate at that index.
            let new_of_old = |c: usize| (c + 2) % 3;
            let (a_new, b_new) = args_of(i);
            TrigPoly2::new(
                src.terms()
                    .iter()
                    .map(|t| {
                        let mut k = [0i64; 2];
                        for (k_old, old_coord) in [(t.k[0], a_old), (t.k[1], b_old)] {
                            let nc = new_of_old(old_coord);
                            if nc == a_new {
                                k[0] += k_old;
                            } else if nc == b_new {
                                k[1] += k_old;
                            } else {
                                unreachable!("cyclic rotation preserves the component shape");
                            }
                        }
                        TrigTerm { amp: t.amp, kind: t.kind, k }
                    })
                    .collect(),
            )
        };
        TrigField3T::new([rewrite(0), rewrite(1), rewrite(2)])
    }
}
