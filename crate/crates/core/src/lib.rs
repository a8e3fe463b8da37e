//! Exact verification of Galois objects for the Taft-type algebraic quantum
//! groups A(n,m,λ): ab = λba, bⁿ = 0, Δ(b) = b⊗aᵐ + 1⊗b.
//!
//! Everything is computed over Q(ζₙ) with no tolerance. Infinite-dimensional
//! statements are checked on finite windows of PBW monomials.

pub mod config;
pub mod error;
pub mod galois;
pub mod hopf;
pub mod linalg;
pub mod qalgebra;
pub mod reflection;
pub mod report;
pub mod scalar;
pub mod solve;

pub use error::{Error, Result};
