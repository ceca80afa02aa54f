//! Fixed-step Runge-Kutta flow integration.

use crate::error::{Error, Result};

/// A sampled trajectory: `states[k]` is the state at `times[k]`.
#[derive(Debug, Clone)]
pub struct OdePath {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
}

impl OdePath {
    pub fn end(&self) -> &[f64] {
        self.states.last().expect("path has at least the initial state")
    }
}

/// Integrates `dy/dt = field(t, y)` from `start` over `[t0, t0 + horizon]`
/// with `steps` classical RK4 steps, recording every intermediate state.
pub fn flow_rk4(
    field: impl Fn(f64, &[f64]) -> Vec<f64>,
    t0: f64,
    start: &[f64],
    horizon: f64,
    steps: usize,
) -> Result<OdePath> {
    if steps == 0 {
        return Err(Error::Domain("flow_rk4: steps must be positive".into()));
    }
    if !horizon.is_finite() || horizon <= 0.0 {
        return Err(Error::Domain(format!("flow_rk4: bad horizon {horizon}")));
    }
    let n = start.len();
    let h = horizon / steps as f64;
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(t0);
    states.push(start.to_vec());
    let mut y = start.to_vec();
    let mut t = t0;
    for k in 0..steps {
        let k1 = field(t, &y);
        let y2: Vec<f64> = (0..n).map(|i| y[i] + 0.5 * h * k1[i]).collect();
        let k2 = field(t + 0.5 * h, &y2);
        let y3: Vec<f64> = (0..n).map(|i| y[i] + 0.5 * h * k2[i]).collect();
        let k3 = field(t + 0.5 * h, &y3);
        let y4: Vec<f64> = (0..n).map(|i| y[i] + h * k3[i]).collect();
        let k4 = field(t + h, &y4);
        for i in 0..n {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        t = t0 + horizon * (k + 1) as f64 / steps as f64;
        times.push(t);
        states.push(y.clone());
    }
    Ok(OdePath { times, states })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle_error(steps: usize) -> f64 {
        // y' = (-y2, y1), exact solution rotates the start by the elapsed angle.
        let path = flow_rk4(|_t, y| vec![-y[1], y[0]], 0.0, &[1.0, 0.0], 1.0, steps).unwrap();
        let e = path.end();
        ((e[0] - 1f64.cos()).powi(2) + (e[1] - 1f64.sin()).powi(2)).sqrt()
    }

    #[test]
    fn test_ode_flow_rk4_circle_fourth_order() {
        let e1 = circle_error(40);
        let e2 = circle_error(80);
        let ratio = e1 / e2;
        assert!((12.0..22.0).contains(&ratio), "RK4 halving ratio {ratio} not ~16");
    }

    #[test]
    fn test_ode_flow_rk4_records_all_steps() {
        let path = flow_rk4(|_t, _y| vec![1.0], 0.0, &[0.0], 2.0, 10).unwrap();
        assert_eq!(path.times.len(), 11);
        assert!((path.end()[0] - 2.0).abs() <= 1e-13);
    }

    #[test]
    fn test_ode_flow_rk4_rejects_zero_steps() {
        assert!(flow_rk4(|_t, y| y.to_vec(), 0.0, &[1.0], 1.0, 0).is_err());
    }
}
