//! Symmetric power L-functions of level-1 Hecke eigenforms, computed at
//! desk scale: exact eigenform coefficients, local Euler factors and their
//! Dirichlet series, prime-counting statistics, in-strip evaluation,
//! random Euler products, and universality-style shift searches.
//!
//! # Module map
//!
//! - [`modform`] — exact q-expansions for the six one-dimensional weights,
//!   normalized eigenvalues, Satake angles.
//! - [`sympower`] — local factors and Dirichlet coefficients for
//!   `sym^m f` and `sym^m f x sym^m f` (m = 1..4), von Mangoldt closed
//!   forms, factorization identities.
//! - [`prime_stats`] — prime sieve and the prime-counting sums and window
//!   densities attached to the coefficients.
//! - [`lvalue`] — gamma factors, smoothed/Euler evaluation, the completed
//!   function for `sym^1`, mean-square and growth diagnostics.
//! - [`random_model`] — random Euler products over Haar-uniform phases and
//!   distribution comparisons against vertical shifts.
//! - [`universality`] — sup-distance shift searches, exp-polynomial target
//!   fitting, Cauchy-integral derivative jets.
//! - [`verify`] — the invariant suite (quick) and the acceptance criteria
//!   (full), shared by the CLI and the integration tests.
//!
//! Each major capability has a runnable example under `examples/`; see the
//! README for the catalogue. The `symuniv` binary wires the same library
//! calls into subcommands.

pub mod cache;
pub mod error;
pub mod lvalue;
pub mod modform;
pub mod numeric;
pub mod prime_stats;
pub mod qseries;
pub mod random_model;
pub mod stats;
pub mod sympower;
pub mod universality;
pub mod verify;

pub use error::{Error, Result};
pub use lvalue::LSeries;
pub use modform::{qexp_delta, qexp_newform, HeckeEigenform, SatakeAngle};
pub use sympower::LKind;
