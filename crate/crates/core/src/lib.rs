//! Exact symbolic kernel for the boundary term of the noncommutative residue
//! of `pi^+ D^-p1 o pi^+ D^-p2` for the Dirac operator of a collar metric
//! `g = g_boundary / h(x_n) + dx_n^2` on a spin manifold with boundary.
//!
//! Layers, bottom-up:
//!
//! * [`scalar`]: Gaussian rationals times monomials in `pi`, `Omega_d`, `h1`.
//! * [`clifford`]: Clifford algebra with the spinor trace.
//! * [`rational_xi`]: partial fractions in `xi_n` with poles at `+-i`.
//! * [`symbol`]: Clifford-valued boundary symbols stored as order-1 jets.
//! * [`dirac`]: the symbols of `D^-2` and boundary geometry at a point.
//! * [`engine`]: term enumeration and evaluation of the boundary integrand.
//! * [`oracle`]: floating-point quadrature used to audit exact results.
//! * [`anchors`]: the shipped table of expected values and the checks
//!   run against it.

pub mod anchors;
pub mod clifford;
pub mod dirac;
pub mod engine;
pub mod error;
pub mod oracle;
pub mod rational_xi;
pub mod scalar;
pub mod symbol;

pub use clifford::{Blade, CliffordElement};
pub use engine::{CaseResult, Engine, TermIndex, VolumeReport};
pub use error::{Error, Result};
pub use rational_xi::{Pole, RationalXi};
pub use scalar::{FormalMonomial, GaussianRational, Scalar, Symbol};
pub use symbol::{BoundarySymbol, TangMonomial};
