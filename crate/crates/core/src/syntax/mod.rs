//! Signatures, terms and formulas, with their canonical text forms.

mod ast;
mod parse;
mod signature;

pub use ast::{Formula, Term, EQ, FALSE};
pub use parse::{parse_formula, parse_substitution, parse_term, ParseError};
pub use signature::{Signature, SignatureError, WellFormedError};

pub fn print_term(t: &Term) -> String {
    t.to_string()
}

pub fn print_formula(a: &Formula) -> String {
    a.to_string()
}
