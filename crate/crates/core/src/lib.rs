//! Numerical laboratory for radial solitons of the cubic focusing Schrödinger
//! equation i dpsi/dt + Delta psi + |psi|^2 psi = 0 on R^3.
//!
//! The crate builds the ground-state soliton, the tangent and cotangent frames
//! of the soliton manifold, the linearized matrix Hamiltonian with its
//! spectral decomposition, modulated nonlinear dynamics, shooting along the
//! unstable direction, and resolvent / dispersive-estimate monitors, all in
//! the radially reduced sectors l = 0, 1.

pub mod dst;
pub mod error;
pub mod frame;
pub mod grid;
pub mod ground;
pub mod io;
pub mod spectral;

pub use error::{Error, Result};
