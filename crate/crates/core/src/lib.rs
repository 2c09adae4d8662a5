//! Counting permutations of a finite field whose permutation polynomial has
//! degree strictly below `q - 2`.
//!
//! For every permutation `σ` of `GF(q)` the interpolating polynomial
//! `f_σ(x) = Σ_c σ(c)(1 - (x - c)^(q-1))` has degree at most `q - 2`, and the
//! `x^(q-2)` coefficient is `-Σ_c c·σ(c)`. This crate counts
//!
//! ```text
//! N(q) = #{ σ : deg f_σ < q - 2 }
//! ```
//!
//! four independent ways (direct interpolation, the coefficient criterion,
//! inclusion–exclusion over subset counts evaluated with exact character
//! sums, and a Ryser permanent of the character matrix) and checks the
//! exponential-sum inequality chain that bounds `|N - (q-1)!|` by
//! `sqrt(2e/π)·q^(q/2)`.
//!
//! Module map:
//!
//! - [`gf`]: table-driven `GF(p^f)` with trace and additive characters.
//! - [`cyclotomic`]: exact arithmetic in `Z[ζ_p]`.
//! - [`permpoly`]: permutations, interpolation, the degree criterion.
//! - [`counting`]: the four counting engines and subset counts `n_S`.
//! - [`bounds`]: the inequality chain and per-`q` bound reports.
//! - [`cli`]: the `ppcount` command-line front end.

pub mod bounds;
pub mod cli;
pub mod counting;
pub mod cyclotomic;
pub mod error;
pub mod gf;
pub mod permpoly;

mod arith;

pub use cyclotomic::CycInt;
pub use error::{Error, Result};
pub use gf::{CharValue, FieldSpec, FiniteField};
pub use permpoly::{Permutation, PolyFq};
