//! Functional-degree calculus for maps between finite abelian groups, and
//! lower bounds on the `p`-adic valuation of the number of common zeros of
//! such maps.
//!
//! The crate is organised bottom-up:
//!
//! * [`partitions`]: integer partitions, conjugation and the weight sequence
//!   obtained by reading a Ferrers diagram column by column.
//! * [`groups`]: shapes of finite abelian groups, element enumeration,
//!   primary decomposition and the maximal functional degree `δ_p`.
//! * [`calculus`]: tabulated maps, difference operators, functional degree,
//!   binomial series expansions, proper lifts and zero counting.
//! * [`bounds`]: the closed forms (`ν_p`, `V_p`, the `S`/`N` minimisations and
//!   the main valuation bound together with its non-cyclic, multi-prime and
//!   polynomial-system extensions).
//! * [`oracle`]: brute-force cross-checks for every closed form.

pub mod arith;
pub mod bigjson;
pub mod bounds;
pub mod calculus;
mod error;
pub mod groups;
pub mod oracle;
pub mod partitions;

pub use error::{Error, Result};
