//! Hyperbolic zeros of structured 3-torus fields and the spectral functional
//! summing squared real parts of linearization eigenvalues.

use crate::error::{Error, Result};
use crate::model::trig3::TrigField3T;
use crate::parallel;
use num_complex::Complex64;

/// Distinct zeros closer than this (torus sup metric) are merged.
pub const DEDUPE_TOL: f64 = 1e-6;

/// A zero's record is hyperbolic only when every eigenvalue real part
/// clears this margin.
pub const HYPERBOLIC_MARGIN: f64 = 1e-8;

const NEWTON_MAX_ITERS: usize = 60;
const SINGULAR_DET: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct ZeroRecord {
    pub location: [f64; 3],
    pub jacobian: [[f64; 3]; 3],
    /// Sorted by real part, then imaginary part.
    pub eigenvalues: [Complex64; 3],
    pub hyperbolic: bool,
}

/// Roots of `x^3 + a2 x^2 + a1 x + a0`, Cardano/trigonometric closed form
/// followed by a complex Newton polish.
pub(crate) fn cubic_roots(a2: f64, a1: f64, a0: f64) -> [Complex64; 3] {
    let shift = -a2 / 3.0;
    let p = a1 - a2 * a2 / 3.0;
    let q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
    let r = 0.25 * q * q + p * p * p / 27.0;
    let mut roots = if r > 0.0 {
        // One real root, one conjugate pair.
        let s = r.sqrt();
        let u = (-0.5 * q + s).cbrt();
        let v = (-0.5 * q - s).cbrt();
        let re = -0.5 * (u + v);
        let im = 0.5 * 3f64.sqrt() * (u - v);
        [
            Complex64::new(u + v + shift, 0.0),
            Complex64::new(re + shift, im),
            Complex64::new(re + shift, -im),
        ]
    } else if p.abs() <= 1e-300 {
        // r <= 0 with p ~ 0 forces q ~ 0: a (near-)triple root.
        let t = (-q).cbrt() + shift;
        [Complex64::new(t, 0.0); 3]
    } else {
        // Three real roots via the trigonometric form (p < 0 here).
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (2.0 * p) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
        let theta = arg.acos();
        let mut out = [Complex64::new(0.0, 0.0); 3];
        for (k, slot) in out.iter_mut().enumerate() {
            let t = m * ((theta - std::f64::consts::TAU * k as f64) / 3.0).cos();
            *slot = Complex64::new(t + shift, 0.0);
        }
        out
    };
    for z in &mut roots {
        for _ in 0..3 {
            let f = ((*z + a2) * *z + a1) * *z + a0;
            let df = (3.0 * *z + 2.0 * a2) * *z + a1;
            if df.norm() > 0.0 {
                *z -= f / df;
            }
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    roots
}

fn eigenvalues_3x3(j: &[[f64; 3]; 3]) -> [Complex64; 3] {
    let tr = j[0][0] + j[1][1] + j[2][2];
    let minors = j[0][0] * j[1][1] - j[0][1] * j[1][0] + j[0][0] * j[2][2]
        - j[0][2] * j[2][0]
        + j[1][1] * j[2][2]
        - j[1][2] * j[2][1];
    let det = det3(j);
    cubic_roots(-tr, minors, -det)
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Cramer solve of `m x = b`; `None` when `m` is numerically singular.
fn solve3(m: &[[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let d = det3(m);
    if d.abs() < SINGULAR_DET {
        return None;
    }
    let mut x = [0.0; 3];
    for (j, xj) in x.iter_mut().enumerate() {
        let mut mj = *m;
        for i in 0..3 {
            mj[i][j] = b[i];
        }
        *xj = det3(&mj) / d;
    }
    Some(x)
}

fn torus_dist(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    (0..3)
        .map(|i| {
            let d = (a[i] - b[i]).abs();
            d.min(1.0 - d)
        })
        .fold(0.0, f64::max)
}

fn newton_step(field: &TrigField3T, p: &mut [f64; 3]) -> Option<()> {
    let f = field.eval(*p);
    let step = solve3(&field.jacobian(*p), [-f[0], -f[1], -f[2]])?;
    for (pi, si) in p.iter_mut().zip(step) {
        *pi = (*pi + si).rem_euclid(1.0);
    }
    Some(())
}

fn newton_refine(field: &TrigField3T, seed: [f64; 3], tol: f64) -> Option<[f64; 3]> {
    let mut p = seed;
    let mut converged = false;
    for _ in 0..NEWTON_MAX_ITERS {
        let f = field.eval(p);
        if f.iter().all(|v| v.abs() <= tol) {
            converged = true;
            break;
        }
        newton_step(field, &mut p)?;
    }
    if !converged {
        return None;
    }
    // Two more quadratic steps push the iterate to machine accuracy so the
    // downstream eigenvalue data does not inherit the stopping slack.
    for _ in 0..2 {
        if newton_step(field, &mut p).is_none() {
            break;
        }
    }
    let f = field.eval(p);
    f.iter().all(|v| v.abs() <= tol).then_some(p)
}

/// Newton refinement of every seed on a centered `grid^3` lattice; divergent
/// or singular seeds are dropped, converged points deduplicated and returned
/// sorted by location.
pub fn find_zeros(field: &TrigField3T, grid: usize, tol: f64) -> Result<Vec<ZeroRecord>> {
    if grid < 16 {
        return Err(Error::Domain(format!("seed grid {grid} below the 16^3 minimum")));
    }
    if !(tol > 0.0 && tol <= 1e-10) {
        return Err(Error::Domain(format!("zero tolerance {tol} outside (0, 1e-10]")));
    }
    let candidates: Vec<Option<[f64; 3]>> = parallel::map_indexed(grid * grid * grid, |idx| {
        let (i, rest) = (idx / (grid * grid), idx % (grid * grid));
        let seed = [
            (i as f64 + 0.5) / grid as f64,
            ((rest / grid) as f64 + 0.5) / grid as f64,
            ((rest % grid) as f64 + 0.5) / grid as f64,
        ];
        newton_refine(field, seed, tol)
    });
    let mut locations: Vec<[f64; 3]> = Vec::new();
    for p in candidates.into_iter().flatten() {
        if !locations.iter().any(|q| torus_dist(&p, q) <= DEDUPE_TOL) {
            locations.push(p);
        }
    }
    locations.sort_by(|a, b| {
        a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])).then(a[2].total_cmp(&b[2]))
    });
    let mut records = Vec::with_capacity(locations.len());
    for location in locations {
        let jacobian = field.jacobian(location);
        let eigenvalues = eigenvalues_3x3(&jacobian);
        let tr = jacobian[0][0] + jacobian[1][1] + jacobian[2][2];
        let sum: Complex64 = eigenvalues.iter().sum();
        if (sum.re - tr).abs() > 1e-8 || sum.im.abs() > 1e-8 {
            return Err(Error::Construction(format!(
                "eigenvalue sum {sum} disagrees with trace {tr} at {location:?}"
            )));
        }
        let min_re = eigenvalues.iter().map(|z| z.re.abs()).fold(f64::INFINITY, f64::min);
        records.push(ZeroRecord {
            location,
            jacobian,
            eigenvalues,
            hyperbolic: min_re > HYPERBOLIC_MARGIN,
        });
    }
    Ok(records)
}

#[derive(Debug, Clone, Copy)]
pub struct SFunctional {
    pub value: f64,
    /// 0 here means the functional was evaluated on an empty zero set.
    pub zero_count: usize,
}

/// Sum of squared eigenvalue real parts over all zeros. Defined only on
/// all-hyperbolic records; a flagged record is a hard error.
pub fn s_functional(records: &[ZeroRecord]) -> Result<SFunctional> {
    for r in records {
        if !r.hyperbolic {
            let min_re = r.eigenvalues.iter().map(|z| z.re.abs()).fold(f64::INFINITY, f64::min);
            return Err(Error::NonHyperbolic { location: r.location, min_re });
        }
    }
    let value = records
        .iter()
        .map(|r| r.eigenvalues.iter().map(|z| z.re * z.re).sum::<f64>())
        .sum();
    Ok(SFunctional { value, zero_count: records.len() })
}
