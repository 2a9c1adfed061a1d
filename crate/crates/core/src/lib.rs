//! Exact kernels and Monte Carlo drivers for a one-dimensional interacting
//! particle system that mixes nearest-neighbor exclusion moves with
//! voter-style copy events, restricted to shock profiles: occupation
//! patterns that are all ones far to the left and all zeros far to the
//! right.
//!
//! States are translation classes of such profiles, stored as the finite
//! block structure between the two infinite regions ([`config`]). Two
//! integer-valued potentials ([`lyapunov`]) measure the distance to the
//! single-shock class; their one-step increments have closed forms that the
//! transition kernels ([`kernel`]) verify against brute-force enumeration.
//! On top of that sit drift classification scans ([`analysis`]) and
//! reproducible hitting-time simulation ([`montecarlo`]).
//!
//! The `parallel` feature (on by default) runs batch work on a rayon pool;
//! disabling it falls back to sequential loops with identical results.

pub mod analysis;
pub mod config;
pub mod kernel;
pub mod lyapunov;
pub mod montecarlo;
pub mod oracle;
pub mod parallel;
pub mod rng;
pub mod scalar;
pub mod stats;

pub use config::{Configuration, ElementaryMove};
pub use kernel::ModelParams;
pub use scalar::{Rational, Scalar};
