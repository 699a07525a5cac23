//! One-way deficit, concurrence and phase-flip dynamics of two-qubit X states.
//!
//! Every closed form in the crate has a matrix-level counterpart so the two
//! can be checked against each other: X-state spectra against Jacobi
//! eigenvalues, the relaxed one-variable deficit against a brute-force
//! search over measurement directions, and the concurrence formula against
//! the general Wootters computation.

pub mod deficit;
pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod linalg;
pub mod measurement;
pub mod optimize;
pub mod par;
pub mod report;
pub mod verify;
pub mod xstate;

pub use error::{Error, Result};
