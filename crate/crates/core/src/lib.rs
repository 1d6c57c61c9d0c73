//! Higher Euler-Kronecker constants of number fields.
//!
//! The constants `γ_{K,r}` are the Laurent coefficients of `ζ'_K/ζ_K` at
//! `s = 1`:
//!
//! ```text
//! ζ'_K/ζ_K(s) = -1/(s-1) + γ_{K,0} + Σ_{r≥1} γ_{K,r} (s-1)^r
//! ```
//!
//! This crate computes them along several independent routes so that each
//! one can be checked against the others:
//!
//! - [`ek::ek_dirichlet`]: partial sums of `Λ_K(n) (log n)^r / n`,
//! - [`ek::ek_ihara`]: the smoothed prime-ideal sum `Φ_K(r, x)` against the
//!   elementary main term `f(r, x)`,
//! - [`ek::ek_integral`]: the integral of the prime-ideal-theorem error
//!   term `Δ_K(t)`,
//! - [`ek::ek_zero_sum`]: a sum over tabulated nontrivial zeros.
//!
//! On top of those it assembles Li coefficients ([`li`]), Dedekind
//! Stieltjes constants ([`stieltjes`]) and bound diagnostics ([`bounds`]).
//!
//! The crate is `no_std` and only needs `alloc`. File formats, threading
//! and the command-line front end live in the `ekron` crate.

#![cfg_attr(not(test), no_std)]
// `!(x > a)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod arith;
pub mod bounds;
pub mod ek;
pub mod error;
pub mod field;
pub mod laurent;
pub mod li;
pub mod sieve;
pub mod special;
pub mod stieltjes;
pub mod stream;
pub mod sum;

pub use error::{Error, Result};
pub use field::{Factor, FieldKind, FieldSpec, LocalSplitting, SplittingTable};
pub use stream::{CoeffStream, StreamKind};

/// Largest Laurent order accepted by the engine.
pub const R_MAX: u32 = 10;
