//! Tensor-grid sup norms.

use crate::error::{Error, Result};
use crate::parallel;

/// Default points per axis in 1 or 2 dimensions.
pub const GRID_RES_LOW_DIM: usize = 256;
/// Default points per axis in 3 dimensions.
pub const GRID_RES_3D: usize = 96;

/// Sup of |f| over a tensor grid, together with the coarsest grid spacing
/// (useful for Lipschitz slack in certificates).
#[derive(Debug, Clone, Copy)]
pub struct GridSup {
    pub value: f64,
    pub spacing: f64,
    pub argmax: [f64; 3],
}

fn axis_points(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![0.5 * (lo + hi)];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// Sup of `|f|` over a `dim`-dimensional box sampled on a uniform tensor
/// grid; unused trailing coordinates are fixed at 0. `resolution` is points
/// per axis (defaults: 256 per axis in 1D/2D, 96 in 3D).
pub fn grid_sup(
    f: impl Fn([f64; 3]) -> f64 + Sync + Send,
    bounds: &[(f64, f64)],
    resolution: Option<usize>,
) -> Result<GridSup> {
    let dim = bounds.len();
    if dim == 0 || dim > 3 {
        return Err(Error::Domain(format!("grid_sup: dimension {dim} unsupported")));
    }
    for &(lo, hi) in bounds {
        if !(lo < hi) {
            return Err(Error::Domain(format!("grid_sup: empty axis [{lo}, {hi}]")));
        }
    }
    let res = resolution.unwrap_or(if dim == 3 { GRID_RES_3D } else { GRID_RES_LOW_DIM });
    if res < 2 {
        return Err(Error::Domain("grid_sup: resolution must be at least 2".into()));
    }
    let axes: Vec<Vec<f64>> = (0..3)
        .map(|d| if d < dim { axis_points(bounds[d].0, bounds[d].1, res) } else { vec![0.0] })
        .collect();
    let spacing = bounds
        .iter()
        .map(|&(lo, hi)| (hi - lo) / (res - 1) as f64)
        .fold(0.0f64, f64::max);
    let (nx, ny, nz) = (axes[0].len(), axes[1].len(), axes[2].len());
    let per_slice = parallel::map_indexed(nx, |i| {
        let mut best = (0.0f64, [axes[0][i], axes[1][0], axes[2][0]]);
        for &y in &axes[1] {
            for &z in &axes[2] {
                let v = f([axes[0][i], y, z]).abs();
                if v > best.0 {
                    best = (v, [axes[0][i], y, z]);
                }
            }
        }
        best
    });
    let _ = (ny, nz);
    let mut best = (0.0f64, [axes[0][0], axes[1][0], axes[2][0]]);
    for cand in per_slice {
        if cand.0 > best.0 {
            best = cand;
        }
    }
    Ok(GridSup { value: best.0, spacing, argmax: best.1 })
}
