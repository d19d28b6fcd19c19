//! Exact jet calculus for focus-focus labels.
//!
//! The crate works with truncated formal power series over an exact scalar
//! ring (Gaussian rationals extended by a formal symbol π) and builds on them:
//!
//! - [`coeff`]: the scalars.
//! - [`jet`]: truncated bivariate series, basis changes between `(X, Y)`,
//!   `(Z, Z̄)` and `(Z_μ, Z̄_μ)`, plane map jets and their inverses.
//! - [`germ`]: Laurent-log germs such as the expansion of `G ln G`, their
//!   imaginary parts and singular parts.
//! - [`label`]: focus-focus labels, their relations and group actions.
//! - [`affine`]: first-order invariants, liftability, affine admissibility and
//!   equivalence, and synthesis of equivalent labels.
//! - [`polygon`]: lattice polygons with marked points, corner types and the
//!   shear-translation action.
//! - [`cli`]: the command dispatcher behind the `focaljet` binary.
//!
//! Every capability has a runnable walk-through under `examples/`, e.g.
//! `cargo run --example jet_reversion`.
//!
//! All results are exact. Series are truncated at an explicit total degree
//! `N`, and every verdict is reported together with that order.

#[macro_use]
mod macros;

pub mod affine;
pub mod cli;
pub mod coeff;
pub mod error;
pub mod germ;
pub mod jet;
pub mod label;
pub mod polygon;

pub use coeff::{GaussRational, PiGaussCoeff, Rational};
pub use error::{Error, Result};
pub use jet::{Basis, Mu, PlaneJet, Sign, SmoothJet, VPlusJet};

/// Truncation order used when none is given.
pub const DEFAULT_ORDER: u32 = 6;
