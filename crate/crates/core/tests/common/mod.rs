//! Generators shared by the integration tests: seeded random builders for the
//! acceptance suite and proptest strategies for the property tests.

#![allow(dead_code)]

use clonelogic::clone::{forall_n, Substitution};
use clonelogic::proof::AxiomWitness;
use clonelogic::semantics::{Element, Env, Structure};
use clonelogic::syntax::{Formula, Signature, Term, EQ, FALSE};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Three function and three predicate symbols.
pub fn clone_sig() -> Signature {
    Signature::parse("fn c 0\nfn f 1\nfn g 2\npred P 1\npred Q 2\npred R 0").unwrap()
}

/// The same symbols with equality.
pub fn eq_sig() -> Signature {
    Signature::parse("with-equality\nfn c 0\nfn f 1\nfn g 2\npred P 1\npred Q 2\npred R 0").unwrap()
}

/// One unary function and one binary predicate, with equality.
pub fn small_sig() -> Signature {
    Signature::parse("with-equality\nfn f 1\npred Q 2").unwrap()
}

/// One constant, one unary function, one unary predicate.
pub fn unary_sig() -> Signature {
    Signature::parse("fn c 0\nfn f 1\npred P 1").unwrap()
}

/// Random terms, formulas, substitutions and structures over a signature.
pub struct Gen {
    pub rng: ChaCha8Rng,
    functions: Vec<(String, usize)>,
    predicates: Vec<(String, usize)>,
    with_eq: bool,
    pub max_var: usize,
}

impl Gen {
    pub fn new(seed: u64, sig: &Signature, max_var: usize) -> Self {
        let functions = sig.functions().map(|(n, a)| (n.to_string(), a)).collect();
        let predicates =
            sig.predicates().filter(|(n, _)| *n != FALSE && *n != EQ).map(|(n, a)| (n.to_string(), a)).collect();
        Gen { rng: ChaCha8Rng::seed_from_u64(seed), functions, predicates, with_eq: sig.with_equality(), max_var }
    }

    /// Uniform in `0..n`.
    pub fn rng_index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn var(&mut self) -> usize {
        self.rng.gen_range(1..=self.max_var)
    }

    pub fn term(&mut self, depth: usize) -> Term {
        let constants: Vec<&(String, usize)> = self.functions.iter().filter(|(_, a)| *a == 0).collect();
        let compound: Vec<&(String, usize)> = self.functions.iter().filter(|(_, a)| *a > 0).collect();
        if depth == 0 || compound.is_empty() || self.rng.gen_bool(0.4) {
            if constants.is_empty() || self.rng.gen_bool(0.75) {
                return Term::var(self.rng.gen_range(1..=self.max_var));
            }
            let (name, _) = constants.choose(&mut self.rng).unwrap();
            return Term::constant(name.as_str());
        }
        let (name, arity) = (*compound.choose(&mut self.rng).unwrap()).clone();
        let args = (0..arity).map(|_| self.term(depth - 1)).collect();
        Term::app(name, args)
    }

    pub fn atom(&mut self) -> Formula {
        if self.rng.gen_bool(0.08) {
            return Formula::falsum();
        }
        if self.with_eq && (self.predicates.is_empty() || self.rng.gen_bool(0.25)) {
            return Formula::eq(self.term(1), self.term(1));
        }
        let (name, arity) = self.predicates.choose(&mut self.rng).unwrap().clone();
        let args = (0..arity).map(|_| self.term(2)).collect();
        Formula::atom(name, args)
    }

    pub fn formula(&mut self, depth: usize) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.3) {
            return self.atom();
        }
        if self.rng.gen_bool(0.55) {
            Formula::implies(self.formula(depth - 1), self.formula(depth - 1))
        } else {
            Formula::forall(self.formula(depth - 1))
        }
    }

    pub fn substitution(&mut self) -> Substitution {
        let len = self.rng.gen_range(0..=4);
        let prefix = (0..len).map(|_| self.term(2)).collect();
        let low = -(len.min(2) as isize);
        Substitution::new(prefix, self.rng.gen_range(low..=2)).unwrap()
    }

    pub fn structure(&mut self, sig: &Signature, size: usize) -> Structure {
        let mut s = Structure::with_size(sig, size).unwrap();
        for (name, arity) in self.functions.clone() {
            for k in 0..size.pow(arity as u32) {
                let tuple = tuple(k, arity, size);
                s.set_function(&name, &tuple, self.rng.gen_range(0..size)).unwrap();
            }
        }
        for (name, arity) in self.predicates.clone() {
            for k in 0..size.pow(arity as u32) {
                let tuple = tuple(k, arity, size);
                s.set_predicate(&name, &tuple, self.rng.gen_bool(0.5)).unwrap();
            }
        }
        s
    }

    pub fn env(&mut self, size: usize, len: usize) -> Env {
        Env::new((0..len).map(|_| self.rng.gen_range(0..size)).collect())
    }

    /// A random instance of A1-A8 (A7 and A8 only with equality), closed by
    /// zero to two outer quantifiers.
    pub fn axiom_witness(&mut self) -> AxiomWitness {
        let top = if self.with_eq { 8 } else { 6 };
        match self.rng.gen_range(1..=top) {
            1 => AxiomWitness::A1 { a: self.formula(2), b: self.formula(2) },
            2 => AxiomWitness::A2 { a: self.formula(2), b: self.formula(2), c: self.formula(2) },
            3 => AxiomWitness::A3 { a: self.formula(2) },
            4 => AxiomWitness::A4 { a: self.formula(2), b: self.formula(2) },
            5 => AxiomWitness::A5 { a: self.formula(2), t: self.term(2) },
            6 => AxiomWitness::A6 { a: self.formula(2) },
            7 => AxiomWitness::A7 { x: self.var() },
            _ => AxiomWitness::A8 { x: self.var(), y: self.var(), a: self.formula(2) },
        }
    }

    pub fn axiom_instance(&mut self) -> Formula {
        let w = self.axiom_witness();
        let closures = self.rng.gen_range(0..=2);
        forall_n(&w.instantiate(), closures)
    }
}

/// Tuple number `k` of a table, first argument most significant.
pub fn tuple(mut k: usize, arity: usize, size: usize) -> Vec<Element> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = k % size;
        k /= size;
    }
    out
}

/// Every structure over `sig` with domain size `size`.
pub fn all_structures(sig: &Signature, size: usize) -> Vec<Structure> {
    // one digit per function entry (radix size) and per predicate tuple (radix 2)
    let mut slots: Vec<(bool, String, Vec<Element>, usize)> = Vec::new();
    for (name, arity) in sig.functions() {
        for k in 0..size.pow(arity as u32) {
            slots.push((true, name.to_string(), tuple(k, arity, size), size));
        }
    }
    for (name, arity) in sig.predicates().filter(|(n, _)| *n != FALSE && *n != EQ) {
        for k in 0..size.pow(arity as u32) {
            slots.push((false, name.to_string(), tuple(k, arity, size), 2));
        }
    }
    let total: usize = slots.iter().map(|s| s.3).product();
    let mut out = Vec::with_capacity(total);
    for mut code in 0..total {
        let mut s = Structure::with_size(sig, size).unwrap();
        for (is_fn, name, args, radix) in &slots {
            let digit = code % radix;
            code /= radix;
            if *is_fn {
                s.set_function(name, args, digit).unwrap();
            } else {
                s.set_predicate(name, args, digit == 1).unwrap();
            }
        }
        out.push(s);
    }
    out
}

/// Every environment of length `len` over a domain of `size` elements.
pub fn all_envs(size: usize, len: usize) -> Vec<Env> {
    (0..size.pow(len as u32)).map(|k| Env::new(tuple(k, len, size))).collect()
}

/// Proptest strategies over the symbols of [`clone_sig`] (and `eq` when
/// asked for).
pub mod arb {
    use super::*;

    pub fn term(max_var: usize) -> impl Strategy<Value = Term> {
        let leaf = prop_oneof![
            3 => (1..=max_var).prop_map(Term::var),
            1 => Just(Term::constant("c")),
        ];
        leaf.prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|t| Term::app("f", vec![t])),
                (inner.clone(), inner).prop_map(|(a, b)| Term::app("g", vec![a, b])),
            ]
        })
    }

    fn atom(max_var: usize, with_eq: bool) -> BoxedStrategy<Formula> {
        let mut choices = vec![
            Just(Formula::falsum()).boxed(),
            Just(Formula::atom("R", vec![])).boxed(),
            term(max_var).prop_map(|t| Formula::atom("P", vec![t])).boxed(),
            (term(max_var), term(max_var)).prop_map(|(a, b)| Formula::atom("Q", vec![a, b])).boxed(),
        ];
        if with_eq {
            choices.push((term(max_var), term(max_var)).prop_map(|(a, b)| Formula::eq(a, b)).boxed());
        }
        proptest::strategy::Union::new(choices).boxed()
    }

    pub fn formula_with(max_var: usize, with_eq: bool) -> impl Strategy<Value = Formula> {
        atom(max_var, with_eq).prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
                inner.prop_map(Formula::forall),
            ]
        })
    }

    pub fn formula(max_var: usize) -> impl Strategy<Value = Formula> {
        formula_with(max_var, false)
    }

    pub fn substitution(max_var: usize) -> impl Strategy<Value = Substitution> {
        (prop::collection::vec(term(max_var), 0..=4), 0..=4isize).prop_map(|(prefix, k)| {
            let offset = k - (prefix.len().min(2) as isize);
            Substitution::new(prefix, offset).unwrap()
        })
    }

    /// A random structure over [`eq_sig`] with a domain of one to three
    /// elements, and an environment of length `env_len`.
    pub fn model(env_len: usize) -> impl Strategy<Value = (Structure, Env)> {
        (any::<u64>(), 1..=3usize).prop_map(move |(seed, size)| {
            let sig = eq_sig();
            let mut g = Gen::new(seed, &sig, 1);
            let s = g.structure(&sig, size);
            let e = g.env(size, env_len);
            (s, e)
        })
    }
}
