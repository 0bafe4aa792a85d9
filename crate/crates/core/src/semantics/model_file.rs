//! Reading finite structures from text.
//!
//! ```text
//! domain a b
//! fn s: a -> b
//! fn s: b -> a
//! pred P: b
//! env a
//! ```
//!
//! Every function table must be given in full. Predicates list their true
//! tuples. `eq` and `false` are fixed and may not appear. `#` starts a comment.

use std::collections::BTreeMap;

use thiserror::Error;

use super::structure::{tuple_at, tuple_index, Element, Env, Structure, StructureError};
use crate::syntax::Signature;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("model file must start with a `domain` line")]
    MissingDomain,
    #[error("line {line}: {source}")]
    Structure { line: usize, source: StructureError },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: `{name}` is not a domain element")]
    UnknownElement { line: usize, name: String },
    #[error("line {line}: conflicting entry for `{name}`")]
    Conflict { line: usize, name: String },
    #[error("line {line}: second `env` line")]
    DuplicateEnv { line: usize },
    #[error("function `{name}` has no entry for ({tuple})")]
    Incomplete { name: String, tuple: String },
}

/// A structure and, if the file gave one, an environment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    pub structure: Structure,
    pub env: Option<Env>,
}

pub fn parse_model(text: &str, sig: &Signature) -> Result<Model, ModelError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (first, header) = lines.next().ok_or(ModelError::MissingDomain)?;
    let names = header.strip_prefix("domain").filter(|r| r.is_empty() || r.starts_with(char::is_whitespace));
    let names = names.ok_or(ModelError::MissingDomain)?;
    let mut s = Structure::new(sig, names.split_whitespace().map(str::to_string).collect())
        .map_err(|source| ModelError::Structure { line: first, source })?;

    let mut filled: BTreeMap<String, BTreeMap<usize, Element>> = BTreeMap::new();
    let mut env = None;
    for (line, text) in lines {
        let (keyword, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
        let structure_err = |source| ModelError::Structure { line, source };
        match keyword {
            "fn" => {
                let (name, entry) = split_colon(rest, line)?;
                let (args, value) = entry.split_once("->").ok_or_else(|| ModelError::Malformed {
                    line,
                    message: "expected `fn NAME: args -> value`".into(),
                })?;
                let args = elements(&s, args, line)?;
                let value = match elements(&s, value, line)?.as_slice() {
                    [v] => *v,
                    _ => return Err(ModelError::Malformed { line, message: "expected one value".into() }),
                };
                s.set_function(name, &args, value).map_err(structure_err)?;
                let previous = filled.entry(name.to_string()).or_default().insert(tuple_index(&args, s.size()), value);
                if previous.is_some_and(|p| p != value) {
                    return Err(ModelError::Conflict { line, name: name.to_string() });
                }
            }
            "pred" => {
                let (name, args) = split_colon(rest, line)?;
                let args = elements(&s, args, line)?;
                s.set_predicate(name, &args, true).map_err(structure_err)?;
            }
            "env" => {
                if env.is_some() {
                    return Err(ModelError::DuplicateEnv { line });
                }
                env = Some(Env::new(elements(&s, rest, line)?));
            }
            other => {
                return Err(ModelError::Malformed { line, message: format!("unknown keyword `{other}`") });
            }
        }
    }

    for (name, arity) in sig.functions() {
        let given = filled.get(name);
        let count = s.size().pow(arity as u32);
        if let Some(k) = (0..count).find(|k| !given.is_some_and(|g| g.contains_key(k))) {
            let tuple = tuple_at(k, arity, s.size()).iter().map(|&e| s.element_name(e)).collect::<Vec<_>>();
            return Err(ModelError::Incomplete { name: name.to_string(), tuple: tuple.join(" ") });
        }
    }
    Ok(Model { structure: s, env })
}

fn split_colon(rest: &str, line: usize) -> Result<(&str, &str), ModelError> {
    let (name, tail) =
        rest.split_once(':').ok_or_else(|| ModelError::Malformed { line, message: "expected `NAME:`".into() })?;
    Ok((name.trim(), tail))
}

fn elements(s: &Structure, text: &str, line: usize) -> Result<Vec<Element>, ModelError> {
    text.split_whitespace()
        .map(|w| s.element(w).ok_or_else(|| ModelError::UnknownElement { line, name: w.to_string() }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::parse("with-equality\nfn s 1\nfn z 0\npred P 1").unwrap()
    }

    const GOOD: &str = "# two elements\ndomain a b\nfn s: a -> b\nfn s: b -> a\nfn z: -> a\npred P: b\nenv b a\n";

    #[test]
    fn reads_tables_and_env() {
        let m = parse_model(GOOD, &sig()).unwrap();
        let s = &m.structure;
        assert_eq!(s.apply("s", &[0]), Some(1));
        assert_eq!(s.apply("z", &[]), Some(0));
        assert_eq!(s.holds("P", &[1]), Some(true));
        assert_eq!(s.holds("P", &[0]), Some(false));
        assert_eq!(m.env, Some(Env::new(vec![1, 0])));
    }

    #[test]
    fn round_trips_through_display() {
        let m = parse_model(GOOD, &sig()).unwrap();
        let again = parse_model(&m.structure.to_string(), &sig()).unwrap();
        assert_eq!(again.structure, m.structure);
        assert_eq!(again.env, None);
    }

    #[test]
    fn rejects_bad_files() {
        let err = |t: &str| parse_model(t, &sig()).unwrap_err();
        assert_eq!(err("fn z: -> a"), ModelError::MissingDomain);
        assert_eq!(err(""), ModelError::MissingDomain);
        assert!(
            matches!(err("domain a b\nfn s: a -> b\nfn z: -> a"), ModelError::Incomplete { name, .. } if name == "s")
        );
        assert!(matches!(err("domain a\nfn s: a -> a\nfn s: a -> b"), ModelError::UnknownElement { line: 3, .. }));
        assert!(matches!(err("domain a b\nfn s: a -> a\nfn s: a -> b"), ModelError::Conflict { line: 3, .. }));
        assert!(matches!(
            err("domain a\nfn s: a -> a\nfn z: -> a\npred eq: a a"),
            ModelError::Structure { line: 4, source: StructureError::Fixed(_) }
        ));
        assert!(matches!(err("domain a\nfrob"), ModelError::Malformed { line: 2, .. }));
        assert!(matches!(err("domain a\nenv a\nenv a"), ModelError::DuplicateEnv { line: 3 }));
        assert!(matches!(err("domain"), ModelError::Structure { source: StructureError::EmptyDomain, .. }));
    }
}
