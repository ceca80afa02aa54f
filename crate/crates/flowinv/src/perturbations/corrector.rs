//! Helicity corrector: the divergence-free field whose contraction with the
//! volume form is `d(sqrt(1 + f) * alpha)`, for a separable interior factor
//! `f(t, x, y) = u(t) v(x) w(y)` on a tube.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::model::profile::ScalarProfile1D;
use crate::model::tube::TubeProfile;
use crate::numerics::fd::d1_fd4;
use crate::numerics::quad::{composite_gauss_legendre, quad1d, QuadratureSpec};
use crate::parallel;
use crate::perturbations::certify::{CertifiedField, Clause};

/// Separable interior factor and its declared support box.
#[derive(Debug, Clone)]
pub struct CorrectorSpec {
    /// Factors in `t`, `x`, `y` order; each must be bump atoms supported
    /// strictly inside its box interval.
    pub factors: [ScalarProfile1D; 3],
    /// Open support box `[(t0,t1), (x0,x1), (y0,y1)]` inside `(0, 1)^3`.
    pub support_box: [(f64, f64); 3],
}

const OUTSIDE_POINTS: usize = 10_000;
const ROUTE_TOL: f64 = 1e-8;
/// Gauss-Legendre nodes per panel and panels per axis for the grid route;
/// bump factors are flat to all orders at their support endpoints, so the
/// rule is panelled rather than raised in order.
const GL_NODES: usize = 12;
const GL_PANELS: usize = 20;

fn validate_factor(p: &ScalarProfile1D, interval: (f64, f64), axis: &str) -> Result<()> {
    if !(0.0 < interval.0 && interval.0 < interval.1 && interval.1 < 1.0) {
        return Err(Error::Domain(format!(
            "helicity_corrector: {axis} box {interval:?} must lie inside (0, 1)"
        )));
    }
    if !p.poly_coeffs().iter().all(|&c| c == 0.0) || (p.atoms().is_empty() && p.sup_bound() != 0.0)
    {
        return Err(Error::Domain(format!(
            "helicity_corrector: {axis} factor must be bump atoms only"
        )));
    }
    for atom in p.atoms() {
        let (lo, hi) = atom.support();
        if lo <= interval.0 || hi >= interval.1 {
            return Err(Error::Domain(format!(
                "helicity_corrector: {axis} factor support [{lo}, {hi}] escapes box {interval:?}"
            )));
        }
    }
    Ok(())
}

struct Assembled {
    u: ScalarProfile1D,
    v: ScalarProfile1D,
    w: ScalarProfile1D,
    du: ScalarProfile1D,
    dv: ScalarProfile1D,
    dw: ScalarProfile1D,
    a: ScalarProfile1D,
    b: ScalarProfile1D,
    f_prof: ScalarProfile1D,
    g_prof: ScalarProfile1D,
}

impl Assembled {
    fn f(&self, p: [f64; 3]) -> f64 {
        self.u.eval(p[0]) * self.v.eval(p[1]) * self.w.eval(p[2])
    }

    /// `(s, s_t, s_x, s_y)` with `s = sqrt(1 + f)`.
    fn s_and_grad(&self, p: [f64; 3]) -> (f64, f64, f64, f64) {
        let (ut, vx, wy) = (self.u.eval(p[0]), self.v.eval(p[1]), self.w.eval(p[2]));
        let s = (1.0 + ut * vx * wy).sqrt();
        let half = 0.5 / s;
        (
            s,
            half * self.du.eval(p[0]) * vx * wy,
            half * ut * self.dv.eval(p[1]) * wy,
            half * ut * vx * self.dw.eval(p[2]),
        )
    }

    fn field(&self, p: [f64; 3]) -> [f64; 3] {
        let (s, st, sx, sy) = self.s_and_grad(p);
        let (a, b) = (self.a.eval(p[0]), self.b.eval(p[0]));
        let (fv, gv) = (self.f_prof.eval(p[0]), self.g_prof.eval(p[0]));
        [sx * b - sy * a, -st * b + s * fv, st * a + s * gv]
    }
}

fn xorshift(state: &mut u64) -> f64 {
    let mut x = *state;
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    *state = x;
    (x >> 11) as f64 / (1u64 << 53) as f64
}

/// Constructs the corrected field for `f > -1` supported in the given box and
/// certifies: agreement of two independent helicity-change quadratures, exact
/// equality with the tube field outside the box, finite-difference closure of
/// the assembled partial derivatives, and a vanishing divergence.
pub fn helicity_corrector(tp: &TubeProfile, spec: &CorrectorSpec) -> Result<CertifiedField> {
    for (i, axis) in ["t", "x", "y"].iter().enumerate() {
        validate_factor(&spec.factors[i], spec.support_box[i], axis)?;
    }
    let asm = Assembled {
        du: spec.factors[0].derivative()?,
        dv: spec.factors[1].derivative()?,
        dw: spec.factors[2].derivative()?,
        u: spec.factors[0].clone(),
        v: spec.factors[1].clone(),
        w: spec.factors[2].clone(),
        a: tp.primitive_a()?,
        b: tp.primitive_b()?,
        f_prof: tp.f().clone(),
        g_prof: tp.g().clone(),
    };

    // f must stay above -1; check the factor extrema on a dense grid of the
    // box (the product attains its extrema at per-axis extrema).
    let mut fmin = f64::INFINITY;
    let bx = spec.support_box;
    const N: usize = 64;
    for i in 0..=N {
        let t = bx[0].0 + (bx[0].1 - bx[0].0) * i as f64 / N as f64;
        for j in 0..=N {
            let x = bx[1].0 + (bx[1].1 - bx[1].0) * j as f64 / N as f64;
            for k in 0..=N {
                let y = bx[2].0 + (bx[2].1 - bx[2].0) * k as f64 / N as f64;
                fmin = fmin.min(asm.f([t, x, y]));
            }
        }
    }
    if fmin <= -1.0 {
        return Err(Error::Domain(format!(
            "helicity_corrector: factor reaches {fmin} <= -1 on the support box"
        )));
    }

    // Route 1: separable quadrature of f * (A F + B G).
    let qspec = QuadratureSpec::with_tol(1e-13);
    let coeff =
        |t: f64| asm.a.eval(t) * asm.f_prof.eval(t) + asm.b.eval(t) * asm.g_prof.eval(t);
    let qt = quad1d(|t| asm.u.eval(t) * coeff(t), bx[0], qspec)?.value;
    let dh_separable = qt * asm.v.integral01() * asm.w.integral01();

    // Route 2: tensor Gauss-Legendre quadrature over the box of the full
    // helicity integrand (Q dP/dt - P dQ/dt with P = sA, Q = sB) minus the
    // unperturbed integrand; the two routes share no algebra beyond alpha.
    let (tn, tw) = composite_gauss_legendre(GL_NODES, GL_PANELS, bx[0].0, bx[0].1);
    let (xn, xw) = composite_gauss_legendre(GL_NODES, GL_PANELS, bx[1].0, bx[1].1);
    let (yn, yw) = composite_gauss_legendre(GL_NODES, GL_PANELS, bx[2].0, bx[2].1);
    let uvals: Vec<f64> = tn.iter().map(|&t| asm.u.eval(t)).collect();
    let duvals: Vec<f64> = tn.iter().map(|&t| asm.du.eval(t)).collect();
    let vvals: Vec<f64> = xn.iter().map(|&x| asm.v.eval(x)).collect();
    let wvals: Vec<f64> = yn.iter().map(|&y| asm.w.eval(y)).collect();
    let slices: Vec<f64> = parallel::map_indexed(tn.len(), |it| {
        let t = tn[it];
        let (a, b) = (asm.a.eval(t), asm.b.eval(t));
        let (da, db) = (asm.g_prof.eval(t), -asm.f_prof.eval(t));
        let base = b * da - a * db;
        let (ut, dut) = (uvals[it], duvals[it]);
        let mut slice = 0.0;
        for (jx, &xwj) in xw.iter().enumerate() {
            let uv = ut * vvals[jx];
            let duv = dut * vvals[jx];
            let mut row = 0.0;
            for (ky, &ywk) in yw.iter().enumerate() {
                let s = (1.0 + uv * wvals[ky]).sqrt();
                let st = 0.5 / s * duv * wvals[ky];
                let (p, q) = (s * a, s * b);
                let (dp, dq) = (st * a + s * da, st * b + s * db);
                row += ywk * ((q * dp - p * dq) - base);
            }
            row *= xwj;
            slice += row;
        }
        tw[it] * slice
    });
    let dh_grid: f64 = slices.iter().sum();

    // Outside points: reject-sample the unit cube against the box.
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut outside_sup = 0.0f64;
    let mut found = 0usize;
    while found < OUTSIDE_POINTS {
        let p = [xorshift(&mut state), xorshift(&mut state), xorshift(&mut state)];
        let inside = (0..3).all(|i| p[i] > bx[i].0 && p[i] < bx[i].1);
        if inside {
            continue;
        }
        found += 1;
        let y = asm.field(p);
        let x = [0.0, asm.f_prof.eval(p[0]), asm.g_prof.eval(p[0])];
        for c in 0..3 {
            outside_sup = outside_sup.max((y[c] - x[c]).abs());
        }
    }

    // FD closure of the assembled partials of sA, sB and the divergence,
    // through fourth-order stencils (bump factors carry third derivatives in
    // the thousands, defeating the second-order stencil at this tolerance).
    let mut fd_residual = 0.0f64;
    let mut div_residual = 0.0f64;
    let fd_h = 1e-4;
    for _ in 0..200 {
        let p = [
            bx[0].0 + (bx[0].1 - bx[0].0) * xorshift(&mut state),
            bx[1].0 + (bx[1].1 - bx[1].0) * xorshift(&mut state),
            bx[2].0 + (bx[2].1 - bx[2].0) * xorshift(&mut state),
        ];
        let pfun = |q: [f64; 3]| asm.s_and_grad(q).0 * asm.a.eval(q[0]);
        let qfun = |q: [f64; 3]| asm.s_and_grad(q).0 * asm.b.eval(q[0]);
        let grad_p = [
            d1_fd4(|t| pfun([t, p[1], p[2]]), p[0], fd_h),
            d1_fd4(|x| pfun([p[0], x, p[2]]), p[1], fd_h),
            d1_fd4(|y| pfun([p[0], p[1], y]), p[2], fd_h),
        ];
        let grad_q = [
            d1_fd4(|t| qfun([t, p[1], p[2]]), p[0], fd_h),
            d1_fd4(|x| qfun([p[0], x, p[2]]), p[1], fd_h),
            d1_fd4(|y| qfun([p[0], p[1], y]), p[2], fd_h),
        ];
        let (s, st, sx, sy) = asm.s_and_grad(p);
        let (a, b) = (asm.a.eval(p[0]), asm.b.eval(p[0]));
        let (da, db) = (asm.g_prof.eval(p[0]), -asm.f_prof.eval(p[0]));
        fd_residual = fd_residual
            .max((grad_p[0] - (st * a + s * da)).abs())
            .max((grad_p[1] - sx * a).abs())
            .max((grad_p[2] - sy * a).abs())
            .max((grad_q[0] - (st * b + s * db)).abs())
            .max((grad_q[1] - sx * b).abs())
            .max((grad_q[2] - sy * b).abs());
        let div = d1_fd4(|t| asm.field([t, p[1], p[2]])[0], p[0], fd_h)
            + d1_fd4(|x| asm.field([p[0], x, p[2]])[1], p[1], fd_h)
            + d1_fd4(|y| asm.field([p[0], p[1], y])[2], p[2], fd_h);
        div_residual = div_residual.max(div.abs());
    }

    let inputs = vec![
        ("support_box".to_string(), format!("{bx:?}")),
        ("factor_min".to_string(), format!("{fmin:.6e}")),
        ("class_start".to_string(), format!("{:?}", tp.boundary_start())),
    ];
    let field = Arc::new(move |p: [f64; 3]| asm.field(p));
    let mut cf = CertifiedField::new("helicity_corrector", inputs, field);
    cf.push(Clause::le("equals_x_outside_support", outside_sup, 1e-12));
    cf.push(Clause::le(
        "delta_h_route_agreement",
        (dh_separable - dh_grid).abs(),
        ROUTE_TOL,
    ));
    cf.push(Clause::info("delta_h_separable_route", dh_separable, dh_grid));
    cf.push(Clause::le("primitive_fd_residual", fd_residual, 1e-6));
    cf.push(Clause::le("divergence_fd", div_residual, 1e-6));
    cf.ensure()
}
