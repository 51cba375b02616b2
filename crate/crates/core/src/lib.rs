//! Explicit inverses of symmetric tridiagonal near-Toeplitz matrices
//!
//! ```text
//!        | b̃  -1              |
//!        | -1  b  -1          |
//! T̃_n =  |     ⋱   ⋱   ⋱      |      b = ±2
//!        |         -1  b  -1  |
//!        |             -1  b̃  |
//! ```
//!
//! with closed-form entries, traces, row sums, sign patterns and bounds on
//! `‖T̃_n⁻¹‖_∞`, a dense reference inverse for checking them, and a
//! fixed-point solver for `u'' = f(u)` whose contraction rate the bounds
//! predict.

pub mod analysis;
pub mod bvp;
pub mod config;
pub mod error;
pub mod experiments;
pub mod inverse;
pub mod oracle;
pub mod params;
pub mod tridiag;

pub use config::{Diagonal, MatrixConfig};
pub use error::{Error, Result};
pub use inverse::{assemble_inverse, near_toeplitz_inverse_entry, toeplitz_inverse_entry, InverseMatrix};
pub use params::{derived_params, is_singular, DerivedParams, SingularityCheck};
