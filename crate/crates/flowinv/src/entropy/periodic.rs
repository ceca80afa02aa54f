//! Exact enumeration of periodic points of hyperbolic toral automorphisms.
//!
//! Fixed points of `M^n` on the 2-torus are the rational points `x` with
//! `(M^n - I) x` integral. Row-reducing `N = M^n - I` over the integers to an
//! upper-triangular form `H` (left multiplication by unimodular matrices
//! preserves the solution set) turns the lattice solve into a direct
//! double loop: the points are `H^{-1} (i, j)` for `0 <= i < h00`,
//! `0 <= j < h11`, all sharing the common denominator `|det N|`.

use crate::error::{Error, Result};

/// Enumeration refuses orders whose fixed-point count exceeds this cap.
pub const COUNT_CAP: u64 = 150_000;

/// Largest supported order; integer matrix powers stay well inside `i64`.
pub const MAX_ORDER: u32 = 14;

pub type IntMat2 = [[i64; 2]; 2];

/// The standard cat map.
pub const CAT_MAP: IntMat2 = [[2, 1], [1, 1]];

pub(crate) fn mat_mul(a: &IntMat2, b: &IntMat2) -> Result<IntMat2> {
    let mut out = [[0i64; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let v = a[i][0] as i128 * b[0][j] as i128 + a[i][1] as i128 * b[1][j] as i128;
            *entry = i64::try_from(v)
                .map_err(|_| Error::Domain(format!("matrix power entry {v} overflows i64")))?;
        }
    }
    Ok(out)
}

pub(crate) fn mat_pow(m: &IntMat2, n: u32) -> Result<IntMat2> {
    let mut out = [[1, 0], [0, 1]];
    for _ in 0..n {
        out = mat_mul(&out, m)?;
    }
    Ok(out)
}

fn det(m: &IntMat2) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Integer row reduction of `n` to upper-triangular form. Row swaps, row
/// negations, and adding integer multiples of one row to another are all
/// unimodular, so the set `{x : n x integral}` is unchanged.
fn row_triangularize(mut h: IntMat2) -> IntMat2 {
    while h[1][0] != 0 {
        if h[0][0] != 0 {
            let q = h[0][0].div_euclid(h[1][0]);
            h[0][0] -= q * h[1][0];
            h[0][1] -= q * h[1][1];
        }
        h.swap(0, 1);
    }
    if h[0][0] < 0 {
        h[0][0] = -h[0][0];
        h[0][1] = -h[0][1];
    }
    if h[1][1] < 0 {
        h[1][1] = -h[1][1];
    }
    h
}

/// The complete set of fixed points of `M^n` on the 2-torus, stored as exact
/// rationals with a common denominator.
#[derive(Debug, Clone)]
pub struct PeriodicPointSet {
    mat: IntMat2,
    order: u32,
    denom: i64,
    points: Vec<[i64; 2]>,
}

impl PeriodicPointSet {
    pub fn mat(&self) -> &IntMat2 {
        &self.mat
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Common denominator of all fixed points (equals the count).
    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn count(&self) -> usize {
        self.points.len()
    }

    /// Numerator pairs; the point is `(p[0], p[1]) / denom`.
    pub fn points(&self) -> &[[i64; 2]] {
        &self.points
    }

    pub fn point_f64(&self, p: [i64; 2]) -> [f64; 2] {
        let d = self.denom as f64;
        [p[0] as f64 / d, p[1] as f64 / d]
    }

    /// One exact base-map step in numerator arithmetic.
    pub fn step(&self, p: [i64; 2]) -> [i64; 2] {
        [
            (self.mat[0][0] * p[0] + self.mat[0][1] * p[1]).rem_euclid(self.denom),
            (self.mat[1][0] * p[0] + self.mat[1][1] * p[1]).rem_euclid(self.denom),
        ]
    }

    /// Exact check that every enumerated point is fixed by `M^order`.
    pub fn verify_all_fixed(&self) -> bool {
        let pow = match mat_pow(&self.mat, self.order) {
            Ok(p) => p,
            Err(_) => return false,
        };
        self.points.iter().all(|p| {
            let x = (pow[0][0] * p[0] + pow[0][1] * p[1]).rem_euclid(self.denom);
            let y = (pow[1][0] * p[0] + pow[1][1] * p[1]).rem_euclid(self.denom);
            [x, y] == *p
        })
    }
}

/// Enumerates all fixed points of `mat^n` exactly.
pub fn periodic_points(mat: IntMat2, n: u32) -> Result<PeriodicPointSet> {
    if det(&mat) != 1 {
        return Err(Error::Domain(format!("base matrix determinant {} must be 1", det(&mat))));
    }
    if (mat[0][0] + mat[1][1]).abs() <= 2 {
        return Err(Error::Domain(format!(
            "base matrix trace {} is not hyperbolic",
            mat[0][0] + mat[1][1]
        )));
    }
    if n == 0 || n > MAX_ORDER {
        return Err(Error::Domain(format!("order {n} outside 1..={MAX_ORDER}")));
    }
    let pow = mat_pow(&mat, n)?;
    let nmat = [[pow[0][0] - 1, pow[0][1]], [pow[1][0], pow[1][1] - 1]];
    let expected = det(&nmat).unsigned_abs();
    if expected > COUNT_CAP {
        return Err(Error::CountCap { order: n, count: expected, cap: COUNT_CAP });
    }
    let h = row_triangularize(nmat);
    let (a, b, d) = (h[0][0], h[0][1], h[1][1]);
    debug_assert_eq!((a * d).unsigned_abs(), expected);
    let denom = a * d;
    // H^{-1} (i, j) = ((d i - b j) / (a d), (a j) / (a d)); the second
    // coordinates separate points across j, the first across i.
    let mut points = Vec::with_capacity(denom as usize);
    for j in 0..d {
        for i in 0..a {
            points.push([(d * i - b * j).rem_euclid(denom), (a * j).rem_euclid(denom)]);
        }
    }
    Ok(PeriodicPointSet { mat, order: n, denom, points })
}
