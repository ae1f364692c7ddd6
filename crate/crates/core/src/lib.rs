//! Special functions, cubic modular functions and the Borwein cubic AGM.
//!
//! The crate is organised bottom-up:
//!
//! * [`specialfn`] – Γ, Ψ, B, the Ramanujan constant `R(a, b)` and the
//!   power series (`₂F₁`, Kummer `Φ`, generalized Bessel `u_v`).
//! * [`modular`] – the quotient `μ_a*(r)`, its derivative and inverse, and the
//!   solution operator `φ_K*(a, r)` with its closed forms at `K = 3, 1/3`.
//! * [`cubic_agm`] – the cubic arithmetic–geometric mean and the transformation
//!   identities it encodes.
//! * [`product_expansion`] – the cubic orbit and the log-sum representation of
//!   `μ*(r)` together with the two-sided bounds for general signatures.
//! * [`verifier`] – grid-based numerical certification of every identity and
//!   inequality, producing CSV-serialisable reports.
//! * [`cli`] – argument parsing and command execution for the binary.

// `!(x > 0.0)` is used on purpose so that NaN is rejected with the other invalid inputs
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod cubic_agm;
mod error;
pub mod modular;
pub mod product_expansion;
pub mod specialfn;
pub mod verifier;

pub use error::{Error, Result};
