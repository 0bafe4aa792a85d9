use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::ast::{Formula, Term, EQ, FALSE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("line {line}: duplicate symbol `{name}`")]
    Duplicate { line: usize, name: String },
    #[error("line {line}: negative arity {arity} for `{name}`")]
    NegativeArity { line: usize, name: String, arity: i64 },
    #[error("line {line}: reserved symbol `{name}` must be a predicate of arity {expected}")]
    Reserved { line: usize, name: String, expected: usize },
    #[error("line {line}: `{name}` is not a legal symbol name")]
    BadName { line: usize, name: String },
    #[error("line {line}: `with-equality` must precede all declarations")]
    LateEquality { line: usize },
    #[error("line {line}: cannot parse `{text}`")]
    Malformed { line: usize, text: String },
}

/// Whether a symbol was found in the signature with the right arity.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WellFormedError {
    #[error("unknown function symbol `{0}`")]
    UnknownFunction(String),
    #[error("unknown predicate symbol `{0}`")]
    UnknownPredicate(String),
    #[error("`{name}` expects {expected} arguments, got {found}")]
    Arity { name: String, expected: usize, found: usize },
}

/// Function and predicate symbols of a first-order language.
///
/// `false/0` is always declared; `eq/2` is declared exactly when the
/// language has equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    functions: BTreeMap<String, usize>,
    predicates: BTreeMap<String, usize>,
    with_equality: bool,
}

pub(crate) fn is_variable_name(s: &str) -> bool {
    s.len() > 1 && s.starts_with('x') && s[1..].bytes().all(|b| b.is_ascii_digit())
}

pub(crate) fn is_symbol_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !is_variable_name(s) && s != "forall" && s != "with"
}

impl Signature {
    pub fn new(with_equality: bool) -> Self {
        let mut predicates = BTreeMap::new();
        predicates.insert(FALSE.to_string(), 0);
        if with_equality {
            predicates.insert(EQ.to_string(), 2);
        }
        Signature { functions: BTreeMap::new(), predicates, with_equality }
    }

    pub fn with_equality(&self) -> bool {
        self.with_equality
    }

    pub fn function_arity(&self, name: &str) -> Option<usize> {
        self.functions.get(name).copied()
    }

    pub fn predicate_arity(&self, name: &str) -> Option<usize> {
        self.predicates.get(name).copied()
    }

    /// Function symbols with arities, sorted by name.
    pub fn functions(&self) -> impl Iterator<Item = (&str, usize)> {
        self.functions.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Predicate symbols with arities, sorted by name, including `false`
    /// and (when present) `eq`.
    pub fn predicates(&self) -> impl Iterator<Item = (&str, usize)> {
        self.predicates.iter().map(|(k, v)| (k.as_str(), *v))
    }

    fn declare(&mut self, line: usize, name: &str, arity: usize, predicate: bool) -> Result<(), SignatureError> {
        if name == FALSE || name == EQ {
            let expected = if name == FALSE { 0 } else { 2 };
            let allowed = predicate && arity == expected && (name == FALSE || self.with_equality);
            if !allowed {
                return Err(SignatureError::Reserved { line, name: name.to_string(), expected });
            }
            return Ok(());
        }
        if !is_symbol_name(name) {
            return Err(SignatureError::BadName { line, name: name.to_string() });
        }
        if self.functions.contains_key(name) || self.predicates.contains_key(name) {
            return Err(SignatureError::Duplicate { line, name: name.to_string() });
        }
        if predicate {
            self.predicates.insert(name.to_string(), arity);
        } else {
            self.functions.insert(name.to_string(), arity);
        }
        Ok(())
    }

    pub fn add_function(&mut self, name: &str, arity: usize) -> Result<(), SignatureError> {
        self.declare(0, name, arity, false)
    }

    pub fn add_predicate(&mut self, name: &str, arity: usize) -> Result<(), SignatureError> {
        self.declare(0, name, arity, true)
    }

    /// Reads the line-oriented signature format:
    /// an optional leading `with-equality`, then `fn NAME ARITY` and
    /// `pred NAME ARITY` lines. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Signature, SignatureError> {
        let mut sig = Signature::new(false);
        let mut declared_any = false;
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let words: Vec<&str> = content.split_whitespace().collect();
            match words.as_slice() {
                ["with-equality"] => {
                    if declared_any {
                        return Err(SignatureError::LateEquality { line });
                    }
                    sig = Signature::new(true);
                }
                [kind @ ("fn" | "pred"), name, arity] => {
                    let arity: i64 =
                        arity.parse().map_err(|_| SignatureError::Malformed { line, text: content.to_string() })?;
                    if arity < 0 {
                        return Err(SignatureError::NegativeArity { line, name: name.to_string(), arity });
                    }
                    sig.declare(line, name, arity as usize, *kind == "pred")?;
                    declared_any = true;
                }
                _ => {
                    return Err(SignatureError::Malformed { line, text: content.to_string() });
                }
            }
        }
        Ok(sig)
    }

    pub fn check_term(&self, t: &Term) -> Result<(), WellFormedError> {
        match t {
            Term::Var(_) | Term::Param(_) => Ok(()),
            Term::App(f, args) => {
                let expected = self.function_arity(f).ok_or_else(|| WellFormedError::UnknownFunction(f.to_string()))?;
                if expected != args.len() {
                    return Err(WellFormedError::Arity { name: f.to_string(), expected, found: args.len() });
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
        }
    }

    pub fn check_formula(&self, a: &Formula) -> Result<(), WellFormedError> {
        match a {
            Formula::Atom(p, args) => {
                let expected =
                    self.predicate_arity(p).ok_or_else(|| WellFormedError::UnknownPredicate(p.to_string()))?;
                if expected != args.len() {
                    return Err(WellFormedError::Arity { name: p.to_string(), expected, found: args.len() });
                }
                args.iter().try_for_each(|t| self.check_term(t))
            }
            Formula::Implies(l, r) => {
                self.check_formula(l)?;
                self.check_formula(r)
            }
            Formula::Forall(b) => self.check_formula(b),
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.with_equality {
            writeln!(f, "with-equality")?;
        }
        for (name, arity) in &self.functions {
            writeln!(f, "fn {name} {arity}")?;
        }
        for (name, arity) in &self.predicates {
            if name != FALSE && name != EQ {
                writeln!(f, "pred {name} {arity}")?;
            }
        }
        Ok(())
    }
}
