//! Hilbert-style proofs: axiom recognition, proof checking against theories,
//! and the arithmetic theory.

mod arith;
mod check;
mod schema;
mod script;

pub use arith::{arith_signature, ta_base, ta_induction, ta_theory, InductionError};
pub use check::{
    check_lines, check_proof, Justification, Line, LineEvidence, Proof, RejectReason, Theory, TheoryError, Verdict,
};
pub use schema::{
    is_axiom, match_a5, standard_schemas, AxiomSchema, AxiomTag, AxiomWitness, SchemaRegistry, A1, A2, A3, A4, A5, A6,
    A7, A8,
};
pub use script::{parse_proof, parse_theory, ScriptError};
