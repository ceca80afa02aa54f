//! 1D scalar profiles on `[0, 1]` with exact calculus.
//!
//! A [`ScalarProfile1D`] is a finite combination of the closed basis
//! `{1, t, ..., t^8, cos(2*pi*k*t), sin(2*pi*k*t) for k <= 32}` plus a list of
//! compactly supported bump atoms. Evaluation, differentiation, and
//! antidifferentiation are exact linear maps on the basis coefficients;
//! bump atoms differentiate symbolically (the bump family is closed under two
//! derivatives and one antiderivative), so `derivative(antiderivative(p))`
//! reproduces `p` exactly. Only *evaluation* of a bump antiderivative uses a
//! precomputed high-accuracy prefix table.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::numerics::{quad1d, QuadratureSpec};

pub const MAX_DEGREE: usize = 8;
pub const MAX_HARMONIC: usize = 32;
pub const TAU: f64 = std::f64::consts::TAU;

/// The standard unit bump `exp(1 - 1/(1 - s^2))` on `(-1, 1)`, zero outside.
pub fn unit_bump(s: f64) -> f64 {
    if s.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - s * s)).exp()
    }
}

/// First derivative of [`unit_bump`].
pub fn unit_bump_d1(s: f64) -> f64 {
    if s.abs() >= 1.0 {
        0.0
    } else {
        let u = 1.0 / (1.0 - s * s);
        -2.0 * s * u * u * unit_bump(s)
    }
}

/// Second derivative of [`unit_bump`].
pub fn unit_bump_d2(s: f64) -> f64 {
    if s.abs() >= 1.0 {
        0.0
    } else {
        let u = 1.0 / (1.0 - s * s);
        let s2 = s * s;
        (4.0 * s2 * u.powi(4) - 8.0 * s2 * u.powi(3) - 2.0 * u * u) * unit_bump(s)
    }
}

const PREFIX_PANELS: usize = 8192;

struct BumpTables {
    /// Simpson prefix integrals of `unit_bump` at `s = -1 + 2k/PREFIX_PANELS`.
    prefix: Vec<f64>,
    total: f64,
    d1_sup: f64,
    d2_sup: f64,
}

fn bump_tables() -> &'static BumpTables {
    static TABLES: OnceLock<BumpTables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let n = PREFIX_PANELS;
        let h = 2.0 / n as f64;
        let mut prefix = Vec::with_capacity(n + 1);
        prefix.push(0.0);
        let mut acc = 0.0;
        for k in 0..n {
            let a = -1.0 + k as f64 * h;
            acc += h / 6.0 * (unit_bump(a) + 4.0 * unit_bump(a + 0.5 * h) + unit_bump(a + h));
            prefix.push(acc);
        }
        let mut d1_sup = 0.0f64;
        let mut d2_sup = 0.0f64;
        let m = 40_001;
        for i in 0..m {
            let s = -1.0 + 2.0 * i as f64 / (m - 1) as f64;
            d1_sup = d1_sup.max(unit_bump_d1(s).abs());
            d2_sup = d2_sup.max(unit_bump_d2(s).abs());
        }
        BumpTables { total: acc, prefix, d1_sup: d1_sup * 1.001, d2_sup: d2_sup * 1.001 }
    })
}

/// `integral of unit_bump from -1 to s`, via the prefix table plus a local
/// Simpson correction for the fractional panel.
pub fn unit_bump_prefix(s: f64) -> f64 {
    let tables = bump_tables();
    if s <= -1.0 {
        return 0.0;
    }
    if s >= 1.0 {
        return tables.total;
    }
    let pos = (s + 1.0) / 2.0 * PREFIX_PANELS as f64;
    let k = (pos.floor() as usize).min(PREFIX_PANELS - 1);
    let a = -1.0 + 2.0 * k as f64 / PREFIX_PANELS as f64;
    let tail = if s > a {
        (s - a) / 6.0 * (unit_bump(a) + 4.0 * unit_bump(0.5 * (a + s)) + unit_bump(s))
    } else {
        0.0
    };
    tables.prefix[k] + tail
}

/// Total mass of the unit bump.
pub fn unit_bump_total() -> f64 {
    bump_tables().total
}

/// Differentiation order of a bump atom relative to the plain bump.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomKind {
    /// Antiderivative of the bump (vanishes left of the support).
    Antideriv,
    /// The bump itself.
    Value,
    /// First derivative.
    D1,
    /// Second derivative.
    D2,
}

/// A scaled translate of the unit bump family member of the given kind.
#[derive(Debug, Clone, PartialEq)]
pub struct BumpAtom {
    pub center: f64,
    pub halfwidth: f64,
    pub amplitude: f64,
    pub kind: AtomKind,
}

impl BumpAtom {
    pub fn support(&self) -> (f64, f64) {
        (self.center - self.halfwidth, self.center + self.halfwidth)
    }

    pub fn eval(&self, t: f64) -> f64 {
        let s = (t - self.center) / self.halfwidth;
        match self.kind {
            AtomKind::Antideriv => self.amplitude * self.halfwidth * unit_bump_prefix(s),
            AtomKind::Value => self.amplitude * unit_bump(s),
            AtomKind::D1 => self.amplitude * unit_bump_d1(s) / self.halfwidth,
            AtomKind::D2 => self.amplitude * unit_bump_d2(s) / self.halfwidth / self.halfwidth,
        }
    }

    fn derivative(&self) -> Result<BumpAtom> {
        let kind = match self.kind {
            AtomKind::Antideriv => AtomKind::Value,
            AtomKind::Value => AtomKind::D1,
            AtomKind::D1 => AtomKind::D2,
            AtomKind::D2 => {
                return Err(Error::BasisOverflow(
                    "bump atoms support at most two derivatives".into(),
                ))
            }
        };
        Ok(BumpAtom { kind, ..self.clone() })
    }

    fn antiderivative(&self) -> Result<BumpAtom> {
        let kind = match self.kind {
            AtomKind::Antideriv => {
                return Err(Error::BasisOverflow(
                    "bump atoms support a single antiderivative".into(),
                ))
            }
            AtomKind::Value => AtomKind::Antideriv,
            AtomKind::D1 => AtomKind::Value,
            AtomKind::D2 => AtomKind::D1,
        };
        Ok(BumpAtom { kind, ..self.clone() })
    }

    /// Sup bound of |atom| on the real line.
    fn sup_bound(&self) -> f64 {
        let t = bump_tables();
        let a = self.amplitude.abs();
        match self.kind {
            AtomKind::Antideriv => a * self.halfwidth * t.total,
            AtomKind::Value => a,
            AtomKind::D1 => a * t.d1_sup / self.halfwidth,
            AtomKind::D2 => a * t.d2_sup / self.halfwidth / self.halfwidth,
        }
    }

    /// Exact integral over `[0, 1]` (quadrature only for `Antideriv`).
    fn integral01(&self) -> f64 {
        let (lo, hi) = self.support();
        let s0 = (0.0 - self.center) / self.halfwidth;
        let s1 = (1.0 - self.center) / self.halfwidth;
        match self.kind {
            AtomKind::Value => {
                self.amplitude * self.halfwidth * (unit_bump_prefix(s1) - unit_bump_prefix(s0))
            }
            AtomKind::D1 => self.amplitude * (unit_bump(s1.clamp(-1.0, 1.0)) - unit_bump(s0.clamp(-1.0, 1.0))),
            AtomKind::D2 => {
                self.amplitude / self.halfwidth
                    * (unit_bump_d1(s1.clamp(-1.0, 1.0)) - unit_bump_d1(s0.clamp(-1.0, 1.0)))
            }
            AtomKind::Antideriv => {
                let a = lo.max(0.0);
                let b = hi.min(1.0);
                let mut total = 0.0;
                if b > a {
                    total += quad1d(|t| self.eval(t), (a, b), QuadratureSpec::with_tol(1e-13))
                        .map(|r| r.value)
                        .unwrap_or_else(|_| 0.0);
                }
                if hi < 1.0 {
                    total += (1.0 - hi.max(0.0)) * self.amplitude * self.halfwidth * bump_tables().total;
                }
                total
            }
        }
    }
}

/// Finite basis combination plus bump atoms; see the module docs.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScalarProfile1D {
    /// `poly[i]` multiplies `t^i`.
    poly: Vec<f64>,
    /// `cos_coeffs[k-1]` multiplies `cos(2 pi k t)`.
    cos_coeffs: Vec<f64>,
    /// `sin_coeffs[k-1]` multiplies `sin(2 pi k t)`.
    sin_coeffs: Vec<f64>,
    atoms: Vec<BumpAtom>,
}

impl ScalarProfile1D {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        ScalarProfile1D { poly: vec![c], ..Self::default() }
    }

    /// Builds a profile from raw coefficient vectors, checking the basis caps.
    pub fn from_parts(poly: Vec<f64>, cos_coeffs: Vec<f64>, sin_coeffs: Vec<f64>) -> Result<Self> {
        if poly.len() > MAX_DEGREE + 1 {
            return Err(Error::BasisOverflow(format!(
                "polynomial degree {} exceeds cap {MAX_DEGREE}",
                poly.len() - 1
            )));
        }
        if cos_coeffs.len() > MAX_HARMONIC || sin_coeffs.len() > MAX_HARMONIC {
            return Err(Error::BasisOverflow(format!(
                "harmonic count {} exceeds cap {MAX_HARMONIC}",
                cos_coeffs.len().max(sin_coeffs.len())
            )));
        }
        let mut p = ScalarProfile1D { poly, cos_coeffs, sin_coeffs, atoms: Vec::new() };
        p.normalize();
        Ok(p)
    }

    pub fn from_poly(coeffs: &[f64]) -> Result<Self> {
        Self::from_parts(coeffs.to_vec(), vec![], vec![])
    }

    /// `amp * cos(2 pi k t)`.
    pub fn cos_term(k: usize, amp: f64) -> Result<Self> {
        if k == 0 || k > MAX_HARMONIC {
            return Err(Error::BasisOverflow(format!("cos harmonic {k} outside 1..={MAX_HARMONIC}")));
        }
        let mut cos_coeffs = vec![0.0; k];
        cos_coeffs[k - 1] = amp;
        Self::from_parts(vec![], cos_coeffs, vec![])
    }

    /// `amp * sin(2 pi k t)`.
    pub fn sin_term(k: usize, amp: f64) -> Result<Self> {
        if k == 0 || k > MAX_HARMONIC {
            return Err(Error::BasisOverflow(format!("sin harmonic {k} outside 1..={MAX_HARMONIC}")));
        }
        let mut sin_coeffs = vec![0.0; k];
        sin_coeffs[k - 1] = amp;
        Self::from_parts(vec![], vec![], sin_coeffs)
    }

    /// Adds a bump atom `amplitude * unit_bump((t - center)/halfwidth)`.
    pub fn with_bump(mut self, center: f64, halfwidth: f64, amplitude: f64) -> Result<Self> {
        if !(halfwidth > 0.0) {
            return Err(Error::Domain(format!("bump halfwidth {halfwidth} must be positive")));
        }
        self.merge_atom(BumpAtom { center, halfwidth, amplitude, kind: AtomKind::Value });
        self.normalize();
        Ok(self)
    }

    pub fn atoms(&self) -> &[BumpAtom] {
        &self.atoms
    }

    pub fn poly_coeffs(&self) -> &[f64] {
        &self.poly
    }

    fn merge_atom(&mut self, atom: BumpAtom) {
        for existing in &mut self.atoms {
            if existing.kind == atom.kind
                && existing.center.to_bits() == atom.center.to_bits()
                && existing.halfwidth.to_bits() == atom.halfwidth.to_bits()
            {
                existing.amplitude += atom.amplitude;
                return;
            }
        }
        self.atoms.push(atom);
    }

    fn normalize(&mut self) {
        while self.poly.last() == Some(&0.0) {
            self.poly.pop();
        }
        while self.cos_coeffs.last() == Some(&0.0) {
            self.cos_coeffs.pop();
        }
        while self.sin_coeffs.last() == Some(&0.0) {
            self.sin_coeffs.pop();
        }
        self.atoms.retain(|a| a.amplitude != 0.0);
    }

    pub fn eval(&self, t: f64) -> f64 {
        let mut value = 0.0;
        for &p in self.poly.iter().rev() {
            value = value * t + p;
        }
        for (idx, (&c, &s)) in self.cos_coeffs.zip_longest_zeros(&self.sin_coeffs) {
            let phase = TAU * (idx + 1) as f64 * t;
            if c != 0.0 {
                value += c * phase.cos();
            }
            if s != 0.0 {
                value += s * phase.sin();
            }
        }
        for atom in &self.atoms {
            value += atom.eval(t);
        }
        value
    }

    /// Exact derivative within the basis (atoms shift one kind up).
    pub fn derivative(&self) -> Result<ScalarProfile1D> {
        let mut poly = vec![0.0; self.poly.len().saturating_sub(1)];
        for i in 1..self.poly.len() {
            poly[i - 1] = self.poly[i] * i as f64;
        }
        let n = self.cos_coeffs.len().max(self.sin_coeffs.len());
        let mut cos_coeffs = vec![0.0; n];
        let mut sin_coeffs = vec![0.0; n];
        for k in 1..=n {
            let w = TAU * k as f64;
            let c = self.cos_coeffs.get(k - 1).copied().unwrap_or(0.0);
            let s = self.sin_coeffs.get(k - 1).copied().unwrap_or(0.0);
            sin_coeffs[k - 1] = -w * c;
            cos_coeffs[k - 1] = w * s;
        }
        let atoms: Result<Vec<BumpAtom>> = self.atoms.iter().map(|a| a.derivative()).collect();
        let mut out = ScalarProfile1D { poly, cos_coeffs, sin_coeffs, atoms: atoms? };
        out.normalize();
        Ok(out)
    }

    /// Exact antiderivative with `result(0) = start`.
    ///
    /// Errors with basis overflow if the input has a degree-8 polynomial term
    /// (the primitive would leave the basis).
    pub fn antiderivative(&self, start: f64) -> Result<ScalarProfile1D> {
        if self.poly.len() > MAX_DEGREE {
            return Err(Error::BasisOverflow(format!(
                "antiderivative of degree-{} polynomial exceeds cap {MAX_DEGREE}",
                self.poly.len() - 1
            )));
        }
        let mut poly = vec![0.0; self.poly.len() + 1];
        for (i, &p) in self.poly.iter().enumerate() {
            poly[i + 1] = p / (i + 1) as f64;
        }
        let n = self.cos_coeffs.len().max(self.sin_coeffs.len());
        let mut cos_coeffs = vec![0.0; n];
        let mut sin_coeffs = vec![0.0; n];
        for k in 1..=n {
            let w = TAU * k as f64;
            let c = self.cos_coeffs.get(k - 1).copied().unwrap_or(0.0);
            let s = self.sin_coeffs.get(k - 1).copied().unwrap_or(0.0);
            sin_coeffs[k - 1] = c / w;
            cos_coeffs[k - 1] = -s / w;
        }
        let atoms: Result<Vec<BumpAtom>> = self.atoms.iter().map(|a| a.antiderivative()).collect();
        let mut out = ScalarProfile1D { poly, cos_coeffs, sin_coeffs, atoms: atoms? };
        let at_zero = out.eval(0.0);
        if out.poly.is_empty() {
            out.poly.push(0.0);
        }
        out.poly[0] += start - at_zero;
        out.normalize();
        Ok(out)
    }

    /// Exact integral over `[0, 1]` (Fourier terms vanish over a full period;
    /// only antiderivative atoms fall back to quadrature).
    pub fn integral01(&self) -> f64 {
        let mut total = 0.0;
        for (i, &p) in self.poly.iter().enumerate() {
            total += p / (i + 1) as f64;
        }
        for atom in &self.atoms {
            total += atom.integral01();
        }
        total
    }

    pub fn add_scaled(&self, other: &ScalarProfile1D, factor: f64) -> Result<ScalarProfile1D> {
        let np = self.poly.len().max(other.poly.len());
        let nc = self.cos_coeffs.len().max(other.cos_coeffs.len());
        let ns = self.sin_coeffs.len().max(other.sin_coeffs.len());
        let get = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
        let poly = (0..np).map(|i| get(&self.poly, i) + factor * get(&other.poly, i)).collect();
        let cos_coeffs = (0..nc).map(|i| get(&self.cos_coeffs, i) + factor * get(&other.cos_coeffs, i)).collect();
        let sin_coeffs = (0..ns).map(|i| get(&self.sin_coeffs, i) + factor * get(&other.sin_coeffs, i)).collect();
        let mut out = ScalarProfile1D { poly, cos_coeffs, sin_coeffs, atoms: self.atoms.clone() };
        for atom in &other.atoms {
            out.merge_atom(BumpAtom { amplitude: factor * atom.amplitude, ..atom.clone() });
        }
        out.normalize();
        Ok(out)
    }

    pub fn add(&self, other: &ScalarProfile1D) -> Result<ScalarProfile1D> {
        self.add_scaled(other, 1.0)
    }

    pub fn scale(&self, factor: f64) -> ScalarProfile1D {
        let mut out = self.clone();
        for v in out.poly.iter_mut().chain(&mut out.cos_coeffs).chain(&mut out.sin_coeffs) {
            *v *= factor;
        }
        for atom in &mut out.atoms {
            atom.amplitude *= factor;
        }
        out.normalize();
        out
    }

    /// Upper bound for `sup |p|` on `[0, 1]` from coefficient magnitudes.
    pub fn sup_bound(&self) -> f64 {
        let mut b: f64 = self.poly.iter().map(|p| p.abs()).sum();
        b += self
            .cos_coeffs
            .iter()
            .chain(&self.sin_coeffs)
            .map(|c| c.abs())
            .sum::<f64>();
        b += self.atoms.iter().map(|a| a.sup_bound()).sum::<f64>();
        b
    }

    /// Upper bound for `sup |p'|` on `[0, 1]`.
    pub fn deriv_sup_bound(&self) -> f64 {
        let mut b: f64 = self.poly.iter().enumerate().map(|(i, p)| i as f64 * p.abs()).sum();
        for k in 1..=self.cos_coeffs.len().max(self.sin_coeffs.len()) {
            let w = TAU * k as f64;
            b += w * self.cos_coeffs.get(k - 1).copied().unwrap_or(0.0).abs();
            b += w * self.sin_coeffs.get(k - 1).copied().unwrap_or(0.0).abs();
        }
        for atom in &self.atoms {
            if let Ok(d) = atom.derivative() {
                b += d.sup_bound();
            } else {
                // D2 atoms: fall back to a generous constant never used by the
                // positivity certificate in practice.
                b += atom.sup_bound() * 8.0 / atom.halfwidth;
            }
        }
        b
    }

    /// Certified positivity on `[0, 1]`: the 2048-point grid minimum must
    /// exceed the Lipschitz slack `sup|p'| * spacing / 2`.
    pub fn positivity_certificate(&self) -> (f64, bool) {
        const N: usize = 2048;
        let mut min = f64::INFINITY;
        for i in 0..N {
            let t = i as f64 / (N - 1) as f64;
            min = min.min(self.eval(t));
        }
        let slack = self.deriv_sup_bound() * (1.0 / (N - 1) as f64) / 2.0;
        (min, min > slack)
    }

    /// Reparametrizes to one half of the domain: returns the profile
    /// `u -> p((u + side)/2) / 2` for `side` in `{0, 1}`.
    ///
    /// Exact for polynomials, even harmonics, and bumps supported inside the
    /// chosen half; odd harmonics would leave the integer-frequency basis and
    /// are rejected.
    pub fn reparam_half(&self, side: usize) -> Result<ScalarProfile1D> {
        if side > 1 {
            return Err(Error::Domain(format!("reparam_half: side {side} not in {{0, 1}}")));
        }
        // Polynomial part: expand p_i ((u + side)/2)^i and halve.
        let mut poly = vec![0.0; self.poly.len()];
        for (i, &p) in self.poly.iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            let scale = p / 2f64.powi(i as i32 + 1);
            // binomial expansion of (u + side)^i
            let mut binom = 1.0;
            for j in 0..=i {
                // side^(i-j) is 1 when side=1, and 0^(i-j) when side=0.
                let side_pow = if side == 1 { 1.0 } else if i == j { 1.0 } else { 0.0 };
                if side_pow != 0.0 {
                    poly[j] += scale * binom * side_pow;
                }
                binom = binom * (i - j) as f64 / (j + 1) as f64;
            }
        }
        let n = self.cos_coeffs.len().max(self.sin_coeffs.len());
        let mut cos_coeffs = vec![0.0; n.div_ceil(2)];
        let mut sin_coeffs = vec![0.0; n.div_ceil(2)];
        for k in 1..=n {
            let c = self.cos_coeffs.get(k - 1).copied().unwrap_or(0.0);
            let s = self.sin_coeffs.get(k - 1).copied().unwrap_or(0.0);
            if c == 0.0 && s == 0.0 {
                continue;
            }
            if k % 2 != 0 {
                return Err(Error::BasisOverflow(format!(
                    "harmonic {k} is odd: half-domain reparametrization leaves the basis"
                )));
            }
            cos_coeffs[k / 2 - 1] += c / 2.0;
            sin_coeffs[k / 2 - 1] += s / 2.0;
        }
        let lo_bound = side as f64 * 0.5;
        let hi_bound = lo_bound + 0.5;
        let mut atoms = Vec::with_capacity(self.atoms.len());
        for atom in &self.atoms {
            let (lo, hi) = atom.support();
            if hi <= lo_bound || lo >= hi_bound {
                // Supported entirely in the other half: restriction is zero.
                continue;
            }
            if lo < lo_bound || hi > hi_bound {
                return Err(Error::Domain(format!(
                    "bump support [{lo}, {hi}] straddles the cut of half [{lo_bound}, {hi_bound}]"
                )));
            }
            let amp_scale = match atom.kind {
                AtomKind::Antideriv => 0.25,
                AtomKind::Value => 0.5,
                AtomKind::D1 => 1.0,
                AtomKind::D2 => 2.0,
            };
            atoms.push(BumpAtom {
                center: 2.0 * atom.center - side as f64,
                halfwidth: 2.0 * atom.halfwidth,
                amplitude: atom.amplitude * amp_scale,
                kind: atom.kind,
            });
        }
        let mut out = ScalarProfile1D { poly, cos_coeffs, sin_coeffs, atoms };
        out.normalize();
        Ok(out)
    }
}

static ZERO: f64 = 0.0;

/// Helper: zip two coefficient slices, padding the shorter with zeros.
trait ZipExt {
    fn zip_longest_zeros<'a>(&'a self, other: &'a [f64]) -> ZipZeros<'a>;
}

impl ZipExt for [f64] {
    fn zip_longest_zeros<'a>(&'a self, other: &'a [f64]) -> ZipZeros<'a> {
        ZipZeros { a: self, b: other, idx: 0, len: self.len().max(other.len()) }
    }
}

struct ZipZeros<'a> {
    a: &'a [f64],
    b: &'a [f64],
    idx: usize,
    len: usize,
}

impl<'a> Iterator for ZipZeros<'a> {
    type Item = (usize, (&'a f64, &'a f64));

    fn next(&mut self) -> Option<Self::Item> {
        if self.idx >= self.len {
            return None;
        }
        let i = self.idx;
        self.idx += 1;
        Some((i, (self.a.get(i).unwrap_or(&ZERO), self.b.get(i).unwrap_or(&ZERO))))
    }
}

/// Standalone smooth bump `amplitude * unit_bump((t - center)/halfwidth)`.
///
/// Thin value type used where a single compactly supported bump is the whole
/// story (constraint-solved pairs, observables); convertible into a
/// [`ScalarProfile1D`] atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BumpProfile1D {
    pub center: f64,
    pub halfwidth: f64,
    pub amplitude: f64,
}

impl BumpProfile1D {
    pub fn new(center: f64, halfwidth: f64, amplitude: f64) -> Result<Self> {
        if !(halfwidth > 0.0) {
            return Err(Error::Domain(format!("bump halfwidth {halfwidth} must be positive")));
        }
        Ok(BumpProfile1D { center, halfwidth, amplitude })
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.amplitude * unit_bump((t - self.center) / self.halfwidth)
    }

    pub fn deriv(&self, t: f64) -> f64 {
        self.amplitude * unit_bump_d1((t - self.center) / self.halfwidth) / self.halfwidth
    }

    pub fn support(&self) -> (f64, f64) {
        (self.center - self.halfwidth, self.center + self.halfwidth)
    }

    /// Exact-support integral `integral of the bump over the whole line`.
    pub fn total_mass(&self) -> f64 {
        self.amplitude * self.halfwidth * unit_bump_total()
    }

    pub fn to_profile(self) -> Result<ScalarProfile1D> {
        ScalarProfile1D::zero().with_bump(self.center, self.halfwidth, self.amplitude)
    }
}
