use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::syntax::{Signature, EQ, FALSE};

/// A domain element, identified by its position in the domain.
pub type Element = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("a structure needs a nonempty domain")]
    EmptyDomain,
    #[error("domain element `{0}` is listed twice")]
    DuplicateElement(String),
    #[error("`{0}` is not a legal element name")]
    BadElementName(String),
    #[error("unknown function symbol `{0}`")]
    UnknownFunction(String),
    #[error("unknown predicate symbol `{0}`")]
    UnknownPredicate(String),
    #[error("`{name}` takes {expected} arguments, got {found}")]
    Arity { name: String, expected: usize, found: usize },
    #[error("element index {0} is outside the domain")]
    OutOfDomain(usize),
    #[error("`{0}` has a fixed interpretation")]
    Fixed(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct FnTable {
    pub(crate) arity: usize,
    pub(crate) values: Vec<Element>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct PredTable {
    pub(crate) arity: usize,
    pub(crate) members: Vec<bool>,
}

/// Position of a tuple in a table: lexicographic, first argument most
/// significant.
pub(crate) fn tuple_index(args: &[Element], size: usize) -> usize {
    args.iter().fold(0, |acc, &a| acc * size + a)
}

/// The tuple at position `index` of a table of the given arity.
pub(crate) fn tuple_at(mut index: usize, arity: usize, size: usize) -> Vec<Element> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = index % size;
        index /= size;
    }
    out
}

/// A finite structure: a nonempty domain, a total table for each function
/// symbol and a relation for each predicate symbol. `false` is empty and
/// `eq` is the identity relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    domain: Arc<[String]>,
    pub(crate) functions: BTreeMap<Arc<str>, FnTable>,
    pub(crate) predicates: BTreeMap<Arc<str>, PredTable>,
}

fn legal_element(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Structure {
    /// A structure over `domain` where every function returns the first
    /// element and every free predicate is empty.
    pub fn new(sig: &Signature, domain: Vec<String>) -> Result<Self, StructureError> {
        if domain.is_empty() {
            return Err(StructureError::EmptyDomain);
        }
        for (k, name) in domain.iter().enumerate() {
            if !legal_element(name) {
                return Err(StructureError::BadElementName(name.clone()));
            }
            if domain[..k].contains(name) {
                return Err(StructureError::DuplicateElement(name.clone()));
            }
        }
        let size = domain.len();
        let functions = sig
            .functions()
            .map(|(name, arity)| (Arc::from(name), FnTable { arity, values: vec![0; size.pow(arity as u32)] }))
            .collect();
        let predicates = sig
            .predicates()
            .map(|(name, arity)| {
                let mut members = vec![false; size.pow(arity as u32)];
                if name == EQ {
                    for m in 0..size {
                        members[tuple_index(&[m, m], size)] = true;
                    }
                }
                (Arc::from(name), PredTable { arity, members })
            })
            .collect();
        Ok(Structure { domain: domain.into(), functions, predicates })
    }

    /// Domain `0, 1, ..., size-1`.
    pub fn with_size(sig: &Signature, size: usize) -> Result<Self, StructureError> {
        Structure::new(sig, (0..size).map(|k| k.to_string()).collect())
    }

    pub fn size(&self) -> usize {
        self.domain.len()
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn element(&self, name: &str) -> Option<Element> {
        self.domain.iter().position(|d| d == name)
    }

    pub fn element_name(&self, e: Element) -> &str {
        &self.domain[e]
    }

    fn check_args(&self, name: &str, arity: usize, args: &[Element]) -> Result<(), StructureError> {
        if args.len() != arity {
            return Err(StructureError::Arity { name: name.to_string(), expected: arity, found: args.len() });
        }
        match args.iter().find(|&&a| a >= self.size()) {
            Some(&bad) => Err(StructureError::OutOfDomain(bad)),
            None => Ok(()),
        }
    }

    pub fn set_function(&mut self, name: &str, args: &[Element], value: Element) -> Result<(), StructureError> {
        let size = self.size();
        if value >= size {
            return Err(StructureError::OutOfDomain(value));
        }
        let arity = self.functions.get(name).ok_or_else(|| StructureError::UnknownFunction(name.to_string()))?.arity;
        self.check_args(name, arity, args)?;
        let table = self.functions.get_mut(name).expect("checked above");
        table.values[tuple_index(args, size)] = value;
        Ok(())
    }

    pub fn set_predicate(&mut self, name: &str, args: &[Element], holds: bool) -> Result<(), StructureError> {
        if name == FALSE || name == EQ {
            return Err(StructureError::Fixed(name.to_string()));
        }
        let size = self.size();
        let arity = self.predicates.get(name).ok_or_else(|| StructureError::UnknownPredicate(name.to_string()))?.arity;
        self.check_args(name, arity, args)?;
        let table = self.predicates.get_mut(name).expect("checked above");
        table.members[tuple_index(args, size)] = holds;
        Ok(())
    }

    /// `None` for unknown symbols or wrong arity.
    pub fn apply(&self, name: &str, args: &[Element]) -> Option<Element> {
        let table = self.functions.get(name)?;
        (table.arity == args.len()).then(|| table.values[tuple_index(args, self.size())])
    }

    /// `None` for unknown symbols or wrong arity.
    pub fn holds(&self, name: &str, args: &[Element]) -> Option<bool> {
        let table = self.predicates.get(name)?;
        (table.arity == args.len()).then(|| table.members[tuple_index(args, self.size())])
    }
}

/// The model file format: the domain line, every function entry, and the
/// true tuples of each predicate other than `false` and `eq`.
impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "domain {}", self.domain.join(" "))?;
        let size = self.size();
        let names = |tuple: &[Element]| tuple.iter().map(|&e| format!(" {}", self.domain[e])).collect::<String>();
        for (name, table) in &self.functions {
            for (k, &v) in table.values.iter().enumerate() {
                let tuple = tuple_at(k, table.arity, size);
                writeln!(f, "fn {name}:{} -> {}", names(&tuple), self.domain[v])?;
            }
        }
        for (name, table) in &self.predicates {
            if &**name == FALSE || &**name == EQ {
                continue;
            }
            for (k, _) in table.members.iter().enumerate().filter(|(_, &m)| m) {
                writeln!(f, "pred {name}:{}", names(&tuple_at(k, table.arity, size)))?;
            }
        }
        Ok(())
    }
}

/// Values for the variables `x1, x2, ...`, in order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct Env(Vec<Element>);

impl Env {
    pub fn new(values: Vec<Element>) -> Self {
        Env(values)
    }

    pub fn empty() -> Self {
        Env(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[Element] {
        &self.0
    }

    /// Value of `xi`, if the environment reaches that far.
    pub fn get(&self, i: usize) -> Option<Element> {
        i.checked_sub(1).and_then(|k| self.0.get(k).copied())
    }

    /// `[m, e1, e2, ...]`
    pub fn cons(&self, m: Element) -> Env {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(m);
        v.extend_from_slice(&self.0);
        Env(v)
    }

    /// Reads space-separated element names.
    pub fn parse(text: &str, s: &Structure) -> Result<Env, String> {
        text.split_whitespace()
            .map(|w| s.element(w).ok_or_else(|| format!("`{w}` is not a domain element")))
            .collect::<Result<Vec<_>, _>>()
            .map(Env)
    }

    pub fn display<'a>(&'a self, s: &'a Structure) -> impl fmt::Display + 'a {
        EnvDisplay(self, s)
    }
}

struct EnvDisplay<'a>(&'a Env, &'a Structure);

impl fmt::Display for EnvDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("env")?;
        for &e in self.0.values() {
            write!(f, " {}", self.1.element_name(e))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::parse("with-equality\nfn plus 2\nfn zero 0\npred P 1").unwrap()
    }

    #[test]
    fn tables_and_fixed_relations() {
        let mut s = Structure::with_size(&sig(), 2).unwrap();
        assert_eq!(s.holds("eq", &[1, 1]), Some(true));
        assert_eq!(s.holds("eq", &[0, 1]), Some(false));
        assert_eq!(s.holds("false", &[]), Some(false));
        s.set_function("plus", &[1, 1], 0).unwrap();
        s.set_function("plus", &[0, 1], 1).unwrap();
        assert_eq!(s.apply("plus", &[0, 1]), Some(1));
        assert_eq!(s.apply("plus", &[1, 1]), Some(0));
        assert_eq!(s.set_predicate("eq", &[0, 1], true), Err(StructureError::Fixed("eq".into())));
        assert_eq!(s.set_predicate("false", &[], true), Err(StructureError::Fixed("false".into())));
        assert_eq!(s.set_function("plus", &[2, 0], 0), Err(StructureError::OutOfDomain(2)));
        assert!(matches!(s.set_predicate("P", &[0, 0], true), Err(StructureError::Arity { .. })));
    }

    #[test]
    fn domain_checks() {
        assert_eq!(Structure::new(&sig(), vec![]), Err(StructureError::EmptyDomain));
        assert!(matches!(
            Structure::new(&sig(), vec!["a".into(), "a".into()]),
            Err(StructureError::DuplicateElement(_))
        ));
        assert!(matches!(Structure::new(&sig(), vec!["a b".into()]), Err(StructureError::BadElementName(_))));
    }

    #[test]
    fn tuple_encoding_is_lexicographic() {
        for k in 0..27 {
            assert_eq!(tuple_index(&tuple_at(k, 3, 3), 3), k);
        }
        assert_eq!(tuple_at(5, 3, 3), vec![0, 1, 2]);
    }

    #[test]
    fn model_file_rendering() {
        let sig = Signature::parse("with-equality\nfn s 1\nfn z 0\npred P 1\npred Q 0").unwrap();
        let mut s = Structure::new(&sig, vec!["a".into(), "b".into()]).unwrap();
        s.set_function("s", &[0], 1).unwrap();
        s.set_predicate("P", &[1], true).unwrap();
        s.set_predicate("Q", &[], true).unwrap();
        let expected = "domain a b\nfn s: a -> b\nfn s: b -> a\nfn z: -> a\npred P: b\npred Q:\n";
        assert_eq!(s.to_string(), expected);
    }

    #[test]
    fn env_ops() {
        let s = Structure::new(&sig(), vec!["a".into(), "b".into()]).unwrap();
        let e = Env::parse("b a", &s).unwrap();
        assert_eq!(e.get(1), Some(1));
        assert_eq!(e.get(3), None);
        assert_eq!(e.cons(0).values(), &[0, 1, 0]);
        assert_eq!(e.display(&s).to_string(), "env b a");
        assert!(Env::parse("c", &s).is_err());
    }
}
