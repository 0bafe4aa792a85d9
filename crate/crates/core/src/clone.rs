//! Simultaneous substitution on terms and formulas.
//!
//! A substitution is an infinite sequence `[t1, t2, ...]` acting on every
//! variable slot at once. Sequences are stored as a finite prefix followed by
//! an affine tail `ti = x(i + d)`, which covers the identity, both shifts,
//! single-slot substitutions, the front swaps used by the derived quantifier,
//! and is closed under composition and lifting under a binder.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::syntax::{Formula, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("tail offset {offset} is below -{len}; tail entries would name x0 or lower")]
pub struct SubstitutionError {
    pub offset: isize,
    pub len: usize,
}

/// An infinite sequence of terms that can be pushed under a binder.
pub trait Sequence: Sized {
    /// The `i`-th entry, `i >= 1`.
    fn entry(&self, i: usize) -> Term;
    /// The sequence seen under one `forall`: slot 1 is kept and every other
    /// entry is shifted up.
    fn lift(&self) -> Self;
}

/// Terms and formulas: the things a sequence acts on.
pub trait Substitutable: Clone + PartialEq {
    fn apply<S: Sequence>(&self, seq: &S) -> Self;

    /// Indices of the free variables.
    fn free_vars(&self) -> BTreeSet<usize>;

    /// The largest free index, or 0.
    fn max_free(&self) -> usize;
}

impl Substitutable for Term {
    fn apply<S: Sequence>(&self, seq: &S) -> Term {
        match self {
            Term::Var(i) => seq.entry(*i),
            Term::Param(_) => self.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.apply(seq)).collect()),
        }
    }

    fn free_vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        collect_term_vars(self, 0, &mut out);
        out
    }

    fn max_free(&self) -> usize {
        term_max_free(self, 0)
    }
}

impl Substitutable for Formula {
    fn apply<S: Sequence>(&self, seq: &S) -> Formula {
        match self {
            Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(|a| a.apply(seq)).collect()),
            Formula::Implies(a, b) => Formula::implies(a.apply(seq), b.apply(seq)),
            Formula::Forall(b) => Formula::forall(b.apply(&seq.lift())),
        }
    }

    fn free_vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        collect_formula_vars(self, 0, &mut out);
        out
    }

    fn max_free(&self) -> usize {
        formula_max_free(self, 0)
    }
}

fn collect_term_vars(t: &Term, depth: usize, out: &mut BTreeSet<usize>) {
    match t {
        Term::Var(i) if *i > depth => {
            out.insert(i - depth);
        }
        Term::Var(_) | Term::Param(_) => {}
        Term::App(_, args) => args.iter().for_each(|a| collect_term_vars(a, depth, out)),
    }
}

fn term_max_free(t: &Term, depth: usize) -> usize {
    match t {
        Term::Var(i) => i.saturating_sub(depth),
        Term::Param(_) => 0,
        Term::App(_, args) => args.iter().map(|a| term_max_free(a, depth)).max().unwrap_or(0),
    }
}

fn formula_max_free(a: &Formula, depth: usize) -> usize {
    match a {
        Formula::Atom(_, args) => args.iter().map(|t| term_max_free(t, depth)).max().unwrap_or(0),
        Formula::Implies(l, r) => formula_max_free(l, depth).max(formula_max_free(r, depth)),
        Formula::Forall(b) => formula_max_free(b, depth + 1),
    }
}

fn collect_formula_vars(a: &Formula, depth: usize, out: &mut BTreeSet<usize>) {
    match a {
        Formula::Atom(_, args) => args.iter().for_each(|t| collect_term_vars(t, depth, out)),
        Formula::Implies(l, r) => {
            collect_formula_vars(l, depth, out);
            collect_formula_vars(r, depth, out);
        }
        Formula::Forall(b) => collect_formula_vars(b, depth + 1, out),
    }
}

/// A sequence with a finite prefix and affine tail: `ti = prefix[i]` for
/// `i <= n`, `ti = x(i + offset)` beyond.
///
/// Always stored trimmed, so equal sequences have equal representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Substitution {
    prefix: Vec<Term>,
    offset: isize,
}

impl Substitution {
    pub fn new(prefix: Vec<Term>, offset: isize) -> Result<Self, SubstitutionError> {
        if offset < -(prefix.len() as isize) {
            return Err(SubstitutionError { offset, len: prefix.len() });
        }
        Ok(Substitution { prefix, offset }.trimmed())
    }

    fn trimmed(mut self) -> Self {
        while let Some(last) = self.prefix.last() {
            let tail_index = self.prefix.len() as isize + self.offset;
            if tail_index >= 1 && *last == Term::Var(tail_index as usize) {
                self.prefix.pop();
            } else {
                break;
            }
        }
        self
    }

    pub fn prefix(&self) -> &[Term] {
        &self.prefix
    }

    pub fn offset(&self) -> isize {
        self.offset
    }

    /// `[x1, x2, ...]`
    pub fn identity() -> Self {
        Substitution { prefix: Vec::new(), offset: 0 }
    }

    /// `[x2, x3, ...]`
    pub fn shift_up() -> Self {
        Substitution { prefix: Vec::new(), offset: 1 }
    }

    /// `[x1, x1, x2, ...]`
    pub fn shift_down() -> Self {
        Substitution { prefix: vec![Term::Var(1)], offset: -1 }
    }

    /// `[x1, ..., x(i-1), t, x(i+1), ...]`
    pub fn single(t: Term, i: usize) -> Self {
        assert!(i >= 1);
        let mut prefix: Vec<Term> = (1..i).map(Term::Var).collect();
        prefix.push(t);
        Substitution { prefix, offset: 0 }.trimmed()
    }

    /// `[x2, ..., xi, x1, x(i+2), ...]`, the renaming behind `(forall xi)`.
    pub fn swap_front(i: usize) -> Self {
        assert!(i >= 1);
        let mut prefix: Vec<Term> = (2..=i).map(Term::Var).collect();
        prefix.push(Term::Var(1));
        Substitution { prefix, offset: 1 }.trimmed()
    }

    /// `[t, x1, x2, ...]`, instantiating the slot bound by an outer `forall`.
    pub fn instantiate_front(t: Term) -> Self {
        Substitution { prefix: vec![t], offset: -1 }.trimmed()
    }

    pub fn get(&self, i: usize) -> Term {
        assert!(i >= 1);
        match self.prefix.get(i - 1) {
            Some(t) => t.clone(),
            None => Term::Var((i as isize + self.offset) as usize),
        }
    }

    /// The same sequence with entry `i` replaced by `t`.
    pub fn with_entry(&self, i: usize, t: Term) -> Self {
        assert!(i >= 1);
        let len = self.prefix.len().max(i);
        let mut prefix: Vec<Term> = (1..=len).map(|k| self.get(k)).collect();
        prefix[i - 1] = t;
        Substitution { prefix, offset: self.offset }.trimmed()
    }

    /// The sequence `self ∘ other` with `(self ∘ other)i = self_i[other]`, so
    /// that `D[self][other] = D[self ∘ other]`.
    pub fn compose(&self, other: &Substitution) -> Substitution {
        let reach = other.prefix.len() as isize - self.offset;
        let len = self.prefix.len().max(reach.max(0) as usize);
        let prefix = (1..=len).map(|i| self.get(i).apply(other)).collect();
        Substitution { prefix, offset: self.offset + other.offset }.trimmed()
    }
}

impl Sequence for Substitution {
    fn entry(&self, i: usize) -> Term {
        self.get(i)
    }

    fn lift(&self) -> Self {
        let up = Substitution::shift_up();
        let mut prefix = Vec::with_capacity(self.prefix.len() + 1);
        prefix.push(Term::Var(1));
        prefix.extend(self.prefix.iter().map(|t| t.apply(&up)));
        Substitution { prefix, offset: self.offset }.trimmed()
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, t) in self.prefix.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "; {:+}]", self.offset)
    }
}

/// A sequence with a finite prefix and a constant tail, used to state rank
/// literally: `D` has rank `n` iff `D = D[x1, ..., x(n-1), xn, xn, ...]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Saturating {
    prefix: Vec<Term>,
    tail: Term,
}

impl Saturating {
    /// `[x1, ..., x(n-1), xn, xn, ...]` for `n >= 1`.
    pub fn collapse(n: usize) -> Self {
        assert!(n >= 1);
        Saturating { prefix: (1..n).map(Term::Var).collect(), tail: Term::Var(n) }
    }

    /// The constant sequence `[t, t, ...]`.
    pub fn constant(t: Term) -> Self {
        Saturating { prefix: Vec::new(), tail: t }
    }
}

impl Sequence for Saturating {
    fn entry(&self, i: usize) -> Term {
        self.prefix.get(i - 1).unwrap_or(&self.tail).clone()
    }

    fn lift(&self) -> Self {
        let up = Substitution::shift_up();
        let mut prefix = Vec::with_capacity(self.prefix.len() + 1);
        prefix.push(Term::Var(1));
        prefix.extend(self.prefix.iter().map(|t| t.apply(&up)));
        Saturating { prefix, tail: self.tail.apply(&up) }
    }
}

pub fn subst_term(t: &Term, sigma: &Substitution) -> Term {
    t.apply(sigma)
}

pub fn subst_formula(a: &Formula, sigma: &Substitution) -> Formula {
    a.apply(sigma)
}

pub fn compose(sigma: &Substitution, tau: &Substitution) -> Substitution {
    sigma.compose(tau)
}

/// `D+ = D[x2, x3, ...]`
pub fn shift_up<D: Substitutable>(d: &D) -> D {
    d.apply(&Substitution::shift_up())
}

/// `D- = D[x1, x1, x2, ...]`
pub fn shift_down<D: Substitutable>(d: &D) -> D {
    d.apply(&Substitution::shift_down())
}

/// `D[t/xi]`
pub fn single_subst<D: Substitutable>(d: &D, t: Term, i: usize) -> D {
    d.apply(&Substitution::single(t, i))
}

pub fn free_vars<D: Substitutable>(d: &D) -> BTreeSet<usize> {
    d.free_vars()
}

/// `D = D[x(i+1)/xi]`, checked by substituting.
pub fn is_independent<D: Substitutable>(d: &D, i: usize) -> bool {
    *d == single_subst(d, Term::Var(i + 1), i)
}

/// Least `n` such that `D` has rank `n`: the largest free index, or 0.
pub fn min_rank<D: Substitutable>(d: &D) -> usize {
    d.max_free()
}

/// Whether `D` has rank `n`, by applying the collapsing sequence.
///
/// Rank 0 has no collapsing sequence of its own; it is taken to mean that
/// `D` is fixed by both constant sequences `[x1, x1, ...]` and
/// `[x2, x2, ...]`, which holds exactly when nothing is free.
pub fn has_rank<D: Substitutable>(d: &D, n: usize) -> bool {
    if n == 0 {
        *d == d.apply(&Saturating::constant(Term::Var(1))) && *d == d.apply(&Saturating::constant(Term::Var(2)))
    } else {
        *d == d.apply(&Saturating::collapse(n))
    }
}

/// `has_rank` via the free-variable set.
pub fn has_rank_by_index<D: Substitutable>(d: &D, n: usize) -> bool {
    min_rank(d) <= n
}

/// The derived quantifier `(forall xi)A = forall(A[x2, ..., xi, x1, x(i+2), ...])`.
pub fn forall_var(a: &Formula, i: usize) -> Formula {
    Formula::forall(a.apply(&Substitution::swap_front(i)))
}

/// `n` nested primitive quantifiers.
pub fn forall_n(a: &Formula, n: usize) -> Formula {
    (0..n).fold(a.clone(), |acc, _| Formula::forall(acc))
}

/// `~A = (A -> false)`
pub fn neg(a: &Formula) -> Formula {
    Formula::implies(a.clone(), Formula::falsum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> Term {
        Term::var(i)
    }
    fn p(args: Vec<Term>) -> Formula {
        Formula::atom("P", args)
    }
    fn zero() -> Term {
        Term::constant("zero")
    }

    #[test]
    fn term_rules() {
        let t = Term::app("succ", vec![v(2)]);
        assert_eq!(subst_term(&v(1), &Substitution::single(t.clone(), 1)), t);
        let c = Term::param("c");
        assert_eq!(subst_term(&c, &Substitution::swap_front(3)), c);
        let sum = Term::app("plus", vec![v(1), v(3)]);
        assert_eq!(subst_term(&sum, &Substitution::shift_up()), Term::app("plus", vec![v(2), v(4)]));
    }

    #[test]
    fn formula_rules() {
        let a = Formula::forall(p(vec![v(1), v(2)]));
        let g = Term::app("g", vec![v(1)]);
        assert_eq!(
            subst_formula(&a, &Substitution::single(g, 1)),
            Formula::forall(p(vec![v(1), Term::app("g", vec![v(2)])]))
        );
        let f = Formula::falsum();
        assert_eq!(subst_formula(&f, &Substitution::shift_down()), f);
        assert_eq!(subst_formula(&a, &Substitution::identity()), a);
    }

    #[test]
    fn named_constructors_trim() {
        assert_eq!(Substitution::single(v(1), 1), Substitution::identity());
        assert_eq!(Substitution::new(vec![v(1), v(2)], 0).unwrap(), Substitution::identity());
        assert_eq!(Substitution::new(vec![v(2)], 1).unwrap(), Substitution::shift_up());
        assert_eq!(Substitution::swap_front(1).prefix(), &[v(1)]);
        assert_eq!(Substitution::swap_front(3).prefix(), &[v(2), v(3), v(1)]);
        assert!(Substitution::new(vec![], -1).is_err());
        assert_eq!(Substitution::identity().lift(), Substitution::identity());
    }

    #[test]
    fn compose_examples() {
        assert_eq!(compose(&Substitution::shift_up(), &Substitution::shift_down()), Substitution::identity());
        let tau = Substitution::swap_front(3);
        assert_eq!(compose(&Substitution::identity(), &tau), tau);
        let t = Term::app("f", vec![v(1)]);
        let expected = Substitution::new(vec![Term::app("f", vec![v(2)])], 1).unwrap();
        assert_eq!(compose(&Substitution::single(t, 1), &Substitution::shift_up()), expected);
    }

    #[test]
    fn shifts() {
        assert_eq!(shift_up(&p(vec![v(1)])), p(vec![v(2)]));
        let closed = Formula::forall(p(vec![v(1)]));
        assert_eq!(shift_up(&closed), closed);
        let d = Formula::forall(p(vec![v(3), v(1)]));
        assert_eq!(shift_down(&shift_up(&d)), d);
    }

    #[test]
    fn single_subst_examples() {
        assert_eq!(single_subst(&p(vec![v(2)]), zero(), 2), p(vec![zero()]));
        assert_eq!(single_subst(&p(vec![v(1)]), v(1), 1), p(vec![v(1)]));
        assert_eq!(single_subst(&Formula::forall(p(vec![v(2)])), zero(), 1), Formula::forall(p(vec![zero()])));
    }

    #[test]
    fn free_vars_and_independence() {
        let sum = Term::app("plus", vec![v(1), v(3)]);
        assert_eq!(free_vars(&sum), BTreeSet::from([1, 3]));
        assert!(free_vars(&Formula::forall(p(vec![v(1)]))).is_empty());
        assert_eq!(free_vars(&Formula::forall(p(vec![v(1), v(3)]))), BTreeSet::from([2]));
        assert!(is_independent(&p(vec![v(1)]), 2));
        assert!(!is_independent(&p(vec![v(1)]), 1));
        assert!(!is_independent(&Formula::forall(p(vec![v(2)])), 1));
    }

    #[test]
    fn ranks() {
        let a = p(vec![v(1), v(3)]);
        let literal_min = (0..).find(|&n| has_rank(&a, n)).unwrap();
        assert_eq!(literal_min, 3);
        assert_eq!(min_rank(&a), 3);
        assert_eq!(min_rank(&Formula::forall(p(vec![v(1)]))), 0);
        assert!(has_rank(&Formula::forall(p(vec![v(1)])), 0));
        assert!(!has_rank(&p(vec![v(2)]), 1));
        assert!(!has_rank(&p(vec![v(1)]), 0));
        assert!(!has_rank(&p(vec![v(2)]), 0));
    }

    #[test]
    fn derived_quantifier() {
        assert_eq!(forall_var(&p(vec![v(1)]), 1), Formula::forall(p(vec![v(1)])));
        assert_eq!(forall_var(&p(vec![v(1), v(2)]), 2), Formula::forall(p(vec![v(2), v(1)])));
        for i in 1..5 {
            assert_eq!(forall_var(&Formula::falsum(), i), Formula::forall(Formula::falsum()));
        }
    }

    #[test]
    fn iterated_quantifier_and_negation() {
        let a = p(vec![v(1)]);
        assert_eq!(forall_n(&a, 0), a);
        assert_eq!(forall_n(&a, 1), Formula::forall(a.clone()));
        assert_eq!(min_rank(&forall_n(&p(vec![v(3), v(1)]), 3)), 0);
        let f = Formula::falsum();
        assert_eq!(neg(&f), Formula::implies(f.clone(), f.clone()));
        assert_eq!(neg(&neg(&a)), Formula::implies(Formula::implies(a, f.clone()), f));
    }

    #[test]
    fn display_form() {
        let s = Substitution::new(vec![Term::app("succ", vec![v(2)]), v(1)], 1).unwrap();
        assert_eq!(s.to_string(), "[succ(x2), x1; +1]");
        assert_eq!(Substitution::identity().to_string(), "[; +0]");
        assert_eq!(Substitution::shift_down().to_string(), "[x1; -1]");
    }
}
