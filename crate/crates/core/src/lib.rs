//! A kernel for first-order arithmetic: syntax, Hilbert proofs, Goedel
//! coding, primitive recursive functions and their arithmetic representation,
//! and the diagonal and Rosser sentence constructions.

pub mod arith;
pub mod cli;
pub mod coding;
pub mod diagonal;
pub mod fol;
pub mod primrec;
pub mod proof;
pub mod represent;
pub mod sexpr;

/// Arbitrary-precision natural number; the carrier of every code.
pub type Nat = num_bigint::BigUint;
