//! A first-order logic kernel built on index-based simultaneous substitution.
//!
//! Variables are numbered `x1, x2, ...`; the quantifier `forall` binds `x1`
//! of its body and renumbers the rest, so there are no bound-variable names
//! and no capture. On top of the substitution calculus ([`clone`]) sit a
//! Hilbert proof checker ([`proof`]) and finite-structure semantics
//! ([`semantics`]).

pub mod cli;
pub mod clone;
pub mod proof;
pub mod semantics;
pub mod syntax;

pub use syntax::{Formula, Signature, Term};
