//! Exact SLOCC classification of pure tripartite 2×M×N states.
//!
//! A 2×M×N state is a pair of M×N slices `(Γ₁, Γ₂)`, i.e. a matrix pencil.
//! Its SLOCC class is fixed by the Kronecker structure of the pencil
//! (minimal indices and Segre characteristics) together with the cross
//! ratios of its eigenvalues modulo a finite permutation group.

pub mod catalog;
pub mod counting;
pub mod error;
pub mod exactnum;
pub mod nonlocal;
pub mod pencil;

pub use error::{Error, Result};
