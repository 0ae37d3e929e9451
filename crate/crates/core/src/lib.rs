//! Weak degree and immunity of Boolean functions over finite fields.
//!
//! The crate computes the least degree of a nonzero multilinear polynomial
//! that vanishes wherever a Boolean function does, with general, symmetric
//! and formula-based methods, plus the supporting finite-field and linear
//! algebra machinery.

pub mod cli;
pub mod error;
pub mod gf;
pub mod hilbert;
pub mod immunity;
pub mod linalg;
pub mod residue;
pub mod ring;
pub mod symmetric;
pub mod verify;

pub use error::{Error, Result};
