//! Text formats for proofs and theories.
//!
//! Proof scripts have one line per step:
//!
//! ```text
//! 1. (forall P(x1)) ; hyp all
//! 2. ((forall P(x1)) -> P(f(x1))) ; axiom
//! 3. P(f(x1)) ; mp 1 2
//! ```
//!
//! Theory files start with `theory NAME`, followed by `NAME: FORMULA` lines
//! and optionally `schema induction`.

use thiserror::Error;

use super::check::{Justification, Proof, Theory, TheoryError};
use crate::syntax::{parse_formula, ParseError, Signature};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("line {line}: {source}")]
    Parse { line: usize, source: ParseError },
    #[error("line {line}: {source}")]
    Theory { line: usize, source: TheoryError },
    #[error("line {line}: expected step number {expected}")]
    Numbering { line: usize, expected: usize },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

fn content(raw: &str) -> &str {
    raw.split('#').next().unwrap_or("").trim()
}

fn malformed(line: usize, message: impl Into<String>) -> ScriptError {
    ScriptError::Malformed { line, message: message.into() }
}

fn parse_justification(text: &str, line: usize, sig: &Signature) -> Result<Justification, ScriptError> {
    let text = text.trim();
    if text == "axiom" {
        return Ok(Justification::Axiom);
    }
    if let Some(inner) = text.strip_prefix("ind(").and_then(|s| s.strip_suffix(')')) {
        let (formula, index) = inner.rsplit_once(',').ok_or_else(|| malformed(line, "ind needs `ind(FORMULA, i)`"))?;
        let formula = parse_formula(formula, sig).map_err(|source| ScriptError::Parse { line, source })?;
        let index =
            index.trim().parse().map_err(|_| malformed(line, format!("bad induction index `{}`", index.trim())))?;
        return Ok(Justification::Ind(formula, index));
    }
    let words: Vec<&str> = text.split_whitespace().collect();
    match words.as_slice() {
        ["hyp", name] => Ok(Justification::Hyp(name.to_string())),
        ["mp", i, j] => {
            let num = |s: &str| s.parse::<usize>().map_err(|_| malformed(line, format!("bad line reference `{s}`")));
            Ok(Justification::Mp(num(i)?, num(j)?))
        }
        _ => Err(malformed(line, format!("unknown justification `{text}`"))),
    }
}

pub fn parse_proof(text: &str, sig: &Signature) -> Result<Proof, ScriptError> {
    let mut proof = Proof::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = content(raw);
        if body.is_empty() {
            continue;
        }
        let expected = proof.lines.len() + 1;
        let (num, rest) = body.split_once('.').ok_or(ScriptError::Numbering { line, expected })?;
        if num.trim().parse::<usize>().ok() != Some(expected) {
            return Err(ScriptError::Numbering { line, expected });
        }
        let (formula, just) =
            rest.split_once(';').ok_or_else(|| malformed(line, "missing `;` before the justification"))?;
        let formula = parse_formula(formula, sig).map_err(|source| ScriptError::Parse { line, source })?;
        let just = parse_justification(just, line, sig)?;
        proof.push(formula, just);
    }
    Ok(proof)
}

pub fn parse_theory(text: &str, sig: &Signature) -> Result<Theory, ScriptError> {
    let mut theory: Option<Theory> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = content(raw);
        if body.is_empty() {
            continue;
        }
        let Some(current) = theory.as_mut() else {
            let name = body
                .strip_prefix("theory ")
                .map(str::trim)
                .filter(|n| !n.is_empty() && !n.contains(char::is_whitespace))
                .ok_or_else(|| malformed(line, "expected `theory NAME` header"))?;
            theory = Some(Theory::new(name));
            continue;
        };
        if body == "schema induction" {
            *current = std::mem::take(current).with_induction();
            continue;
        }
        let (name, formula) = body.split_once(':').ok_or_else(|| malformed(line, "expected `NAME: FORMULA`"))?;
        let name = name.trim();
        if name.is_empty() || name.contains(char::is_whitespace) {
            return Err(malformed(line, format!("bad sentence name `{name}`")));
        }
        let formula = parse_formula(formula, sig).map_err(|source| ScriptError::Parse { line, source })?;
        current.add(name, formula).map_err(|source| ScriptError::Theory { line, source })?;
    }
    theory.ok_or_else(|| malformed(1, "empty theory file"))
}
