//! The arithmetic theory: six sentences about `zero`, `succ`, `plus` and
//! `times`, plus the induction schema.

use thiserror::Error;

use super::check::Theory;
use crate::clone::{forall_var, min_rank, neg, single_subst};
use crate::syntax::{Formula, Signature, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InductionError {
    #[error("induction needs a formula with a free variable; this one is a sentence")]
    Sentence,
    #[error("induction variable x{index} is outside x1..x{rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("induction formulas may not mention parameters")]
    HasParameters,
}

/// `with-equality`, `zero/0`, `succ/1`, `plus/2`, `times/2`.
pub fn arith_signature() -> Signature {
    let mut sig = Signature::new(true);
    for (name, arity) in [("zero", 0), ("succ", 1), ("plus", 2), ("times", 2)] {
        sig.add_function(name, arity).expect("fresh arithmetic symbols");
    }
    sig
}

fn zero() -> Term {
    Term::constant("zero")
}

fn succ(t: Term) -> Term {
    Term::app("succ", vec![t])
}

fn plus(a: Term, b: Term) -> Term {
    Term::app("plus", vec![a, b])
}

fn times(a: Term, b: Term) -> Term {
    Term::app("times", vec![a, b])
}

/// `(forall x1)(forall x2) body`
fn forall_xy(body: Formula) -> Formula {
    forall_var(&forall_var(&body, 2), 1)
}

/// Sentences S1-S6, with `x = x1` and `y = x2`.
pub fn ta_base() -> Theory {
    let x = || Term::var(1);
    let y = || Term::var(2);
    let sentences = [
        ("S1", forall_var(&neg(&Formula::eq(zero(), succ(x()))), 1)),
        ("S2", forall_xy(Formula::implies(Formula::eq(succ(x()), succ(y())), Formula::eq(x(), y())))),
        ("S3", forall_var(&Formula::eq(plus(x(), zero()), x()), 1)),
        ("S4", forall_xy(Formula::eq(plus(x(), succ(y())), succ(plus(x(), y()))))),
        ("S5", forall_var(&Formula::eq(times(x(), zero()), zero()), 1)),
        ("S6", forall_xy(Formula::eq(times(x(), succ(y())), plus(times(x(), y()), x())))),
    ];
    let mut theory = Theory::new("Ta");
    for (name, sentence) in sentences {
        theory.add(name, sentence).expect("arithmetic sentences are closed");
    }
    theory
}

/// S1-S6 together with every instance of the induction schema.
pub fn ta_theory() -> Theory {
    ta_base().with_induction()
}

/// The induction sentence for `a` on the variable `x{index}`:
/// `(forall xn)...(forall x1)(A[zero/x] -> ((forall x)(A -> A[succ(x)/x]) -> (forall x)A))`
/// where `n` is the least rank of `a`.
pub fn ta_induction(a: &Formula, index: usize) -> Result<Formula, InductionError> {
    let rank = min_rank(a);
    if rank == 0 {
        return Err(InductionError::Sentence);
    }
    if index == 0 || index > rank {
        return Err(InductionError::IndexOutOfRange { index, rank });
    }
    if !a.is_param_free() {
        return Err(InductionError::HasParameters);
    }
    let base = single_subst(a, zero(), index);
    let step = forall_var(&Formula::implies(a.clone(), single_subst(a, succ(Term::var(index)), index)), index);
    let body = Formula::implies(base, Formula::implies(step, forall_var(a, index)));
    Ok((1..=rank).fold(body, |acc, k| forall_var(&acc, k)))
}
