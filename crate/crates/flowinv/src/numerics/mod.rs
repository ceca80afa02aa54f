//! Shared numerical kernels: adaptive quadrature, fixed-step RK4 flows,
//! central finite differences, and tensor-grid sup norms.

pub mod fd;
pub mod grid;
pub mod ode;
pub mod quad;

pub use fd::{gradient_fd, jacobian_fd, FD_STEP_DEFAULT};
pub use grid::{grid_sup, GridSup};
pub use ode::{flow_rk4, OdePath};
pub use quad::{composite_gauss_legendre, gauss_legendre, quad1d, QuadResult, QuadratureSpec};
