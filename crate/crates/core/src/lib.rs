//! Numerical toolkit around Hardy's Z-function.
//!
//! The crate is organised bottom-up:
//!
//! * [`special_fns`]: complex log-Gamma, the functional-equation factor χ(s)
//!   and the Riemann–Siegel theta function.
//! * [`zeta_eval`]: Euler–Maclaurin reference evaluator, the first
//!   approximation Dirichlet polynomial, a truncated Euler product and a
//!   convexity-envelope diagnostic.
//! * [`z_function`]: Z(t) by definition, by the main Riemann–Siegel sum and
//!   by an anchored Dirichlet polynomial.
//! * [`quad`]: adaptive Gauss–Kronrod quadrature for complex integrands.
//! * [`oscillatory`]: van der Corput first/second derivative tests as
//!   numerically checked bound certificates.
//! * [`hardy_harness`]: ∫Z and ∫|Z| over [T, 2T], contour checks, zero
//!   scanning and scaling fits.

pub mod error;
pub mod hardy_harness;
pub mod oscillatory;
pub mod quad;
pub mod special_fns;
pub mod z_function;
pub mod zeta_eval;

pub use error::{Error, Result};
pub use special_fns::ComplexPoint;

/// Complex double used throughout the crate.
pub type Complex = num_complex::Complex64;
