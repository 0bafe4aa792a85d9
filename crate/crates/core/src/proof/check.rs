use std::fmt;

use thiserror::Error;

use super::arith::ta_induction;
use super::schema::{is_axiom, AxiomTag};
use crate::clone::min_rank;
use crate::syntax::{Formula, Signature};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("sentence `{0}` has free variables")]
    NotSentence(String),
    #[error("sentence `{0}` mentions parameters")]
    HasParameters(String),
    #[error("sentence name `{0}` is already used")]
    Duplicate(String),
}

/// A named set of sentences, optionally extended by the induction schema.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Theory {
    name: String,
    sentences: Vec<(String, Formula)>,
    induction: bool,
}

impl Theory {
    pub fn new(name: impl Into<String>) -> Self {
        Theory { name: name.into(), sentences: Vec::new(), induction: false }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn add(&mut self, name: impl Into<String>, sentence: Formula) -> Result<(), TheoryError> {
        let name = name.into();
        if min_rank(&sentence) != 0 {
            return Err(TheoryError::NotSentence(name));
        }
        if !sentence.is_param_free() {
            return Err(TheoryError::HasParameters(name));
        }
        if self.get(&name).is_some() {
            return Err(TheoryError::Duplicate(name));
        }
        self.sentences.push((name, sentence));
        Ok(())
    }

    /// Admits every instance of the arithmetic induction schema as a hypothesis.
    pub fn with_induction(mut self) -> Self {
        self.induction = true;
        self
    }

    pub fn has_induction(&self) -> bool {
        self.induction
    }

    pub fn get(&self, name: &str) -> Option<&Formula> {
        self.sentences.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn sentences(&self) -> &[(String, Formula)] {
        &self.sentences
    }

    pub fn contains(&self, sentence: &Formula) -> bool {
        self.sentences.iter().any(|(_, f)| f == sentence)
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "theory {}", self.name)?;
        if self.induction {
            writeln!(f, "schema induction")?;
        }
        for (name, sentence) in &self.sentences {
            writeln!(f, "{name}: {sentence}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    Axiom,
    Hyp(String),
    /// An instance of the induction schema, regenerated from the formula and
    /// the induction variable.
    Ind(Formula, usize),
    /// Modus ponens from lines `i` (the antecedent) and `j` (the implication),
    /// numbered from 1.
    Mp(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Proof {
    pub lines: Vec<Line>,
}

impl Proof {
    pub fn new() -> Self {
        Proof::default()
    }

    pub fn push(&mut self, formula: Formula, justification: Justification) -> usize {
        self.lines.push(Line { formula, justification });
        self.lines.len()
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, line) in self.lines.iter().enumerate() {
            write!(f, "{}. {} ; ", k + 1, line.formula)?;
            match &line.justification {
                Justification::Axiom => writeln!(f, "axiom")?,
                Justification::Hyp(name) => writeln!(f, "hyp {name}")?,
                Justification::Ind(a, i) => writeln!(f, "ind({a}, {i})")?,
                Justification::Mp(i, j) => writeln!(f, "mp {i} {j}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectReason {
    EmptyProof,
    IllFormed(String),
    HasParameters,
    NotAnAxiom,
    UnknownHypothesis(String),
    HypothesisMismatch(String),
    NoInductionSchema,
    BadInduction(String),
    ForwardReference,
    MpMismatch,
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::EmptyProof => f.write_str("empty-proof"),
            RejectReason::IllFormed(msg) => write!(f, "ill-formed ({msg})"),
            RejectReason::HasParameters => f.write_str("has-parameters"),
            RejectReason::NotAnAxiom => f.write_str("not-an-axiom"),
            RejectReason::UnknownHypothesis(name) => write!(f, "unknown-hypothesis ({name})"),
            RejectReason::HypothesisMismatch(name) => write!(f, "hypothesis-mismatch ({name})"),
            RejectReason::NoInductionSchema => f.write_str("no-induction-schema"),
            RejectReason::BadInduction(msg) => write!(f, "bad-induction ({msg})"),
            RejectReason::ForwardReference => f.write_str("forward-reference"),
            RejectReason::MpMismatch => f.write_str("mp-mismatch"),
        }
    }
}

/// Outcome of checking a proof. Line numbers start at 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject { line: usize, reason: RejectReason },
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accept => f.write_str("ACCEPT"),
            Verdict::Reject { line, reason } => write!(f, "REJECT line={line} reason={reason}"),
        }
    }
}

/// Why a single line is justified, when it is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineEvidence {
    Axiom(AxiomTag),
    Hyp,
    Ind,
    Mp,
}

/// Checks every line of `proof` against the axioms, the sentences of
/// `theory`, and modus ponens. Acceptance shows the last line is in every
/// filter containing the theory.
pub fn check_proof(proof: &Proof, theory: &Theory, sig: &Signature) -> Verdict {
    match check_lines(proof, theory, sig) {
        Ok(_) => Verdict::Accept,
        Err((line, reason)) => Verdict::Reject { line, reason },
    }
}

/// Like [`check_proof`], returning the evidence for each line.
pub fn check_lines(
    proof: &Proof,
    theory: &Theory,
    sig: &Signature,
) -> Result<Vec<LineEvidence>, (usize, RejectReason)> {
    if proof.lines.is_empty() {
        return Err((0, RejectReason::EmptyProof));
    }
    let mut evidence = Vec::with_capacity(proof.lines.len());
    for (k, line) in proof.lines.iter().enumerate() {
        let n = k + 1;
        let f = &line.formula;
        sig.check_formula(f).map_err(|e| (n, RejectReason::IllFormed(e.to_string())))?;
        if !f.is_param_free() {
            return Err((n, RejectReason::HasParameters));
        }
        let ev = match &line.justification {
            Justification::Axiom => LineEvidence::Axiom(is_axiom(f, sig).ok_or((n, RejectReason::NotAnAxiom))?),
            Justification::Hyp(name) => match theory.get(name) {
                None => return Err((n, RejectReason::UnknownHypothesis(name.clone()))),
                Some(s) if s != f => return Err((n, RejectReason::HypothesisMismatch(name.clone()))),
                Some(_) => LineEvidence::Hyp,
            },
            Justification::Ind(a, i) => {
                if !theory.has_induction() {
                    return Err((n, RejectReason::NoInductionSchema));
                }
                let instance = ta_induction(a, *i).map_err(|e| (n, RejectReason::BadInduction(e.to_string())))?;
                if instance != *f {
                    return Err((n, RejectReason::BadInduction("formula is not the generated instance".into())));
                }
                LineEvidence::Ind
            }
            Justification::Mp(i, j) => {
                let earlier = |m: usize| (m >= 1 && m < n).then(|| &proof.lines[m - 1].formula);
                let (Some(ante), Some(imp)) = (earlier(*i), earlier(*j)) else {
                    return Err((n, RejectReason::ForwardReference));
                };
                match imp.as_implies() {
                    Some((a, b)) if a == ante && b == f => LineEvidence::Mp,
                    _ => return Err((n, RejectReason::MpMismatch)),
                }
            }
        };
        evidence.push(ev);
    }
    Ok(evidence)
}
