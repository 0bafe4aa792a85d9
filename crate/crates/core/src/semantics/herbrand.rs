//! Perfect valuations generated by atomic valuations over a finite Herbrand
//! universe (a language whose only function symbols are constants).

use std::collections::BTreeSet;

use thiserror::Error;

use crate::clone::{min_rank, Substitutable, Substitution};
use crate::syntax::{Formula, Signature, Term, WellFormedError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HerbrandError {
    #[error("`false` cannot belong to an atomic valuation")]
    ContainsFalse,
    #[error("`{0}` is not a ground atomic formula")]
    NotGroundAtom(String),
    #[error("the Herbrand universe is infinite: `{0}` is not a constant")]
    NonConstantFunction(String),
    #[error("languages with equality are not generated by atomic valuations")]
    Equality,
    #[error("formula has free variables")]
    NotClosed,
    #[error("formula mentions parameters")]
    Parameters,
    #[error("a quantifier needs a nonempty universe, but there are no constants")]
    EmptyUniverse,
    #[error(transparent)]
    IllFormed(#[from] WellFormedError),
}

/// A set of ground atoms not containing `false`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AtomicValuation {
    atoms: BTreeSet<Formula>,
}

impl AtomicValuation {
    pub fn new(atoms: impl IntoIterator<Item = Formula>) -> Result<Self, HerbrandError> {
        let mut set = BTreeSet::new();
        for a in atoms {
            if a.is_falsum() {
                return Err(HerbrandError::ContainsFalse);
            }
            let ground = matches!(a, Formula::Atom(..)) && a.free_vars().is_empty() && a.is_param_free();
            if !ground {
                return Err(HerbrandError::NotGroundAtom(a.to_string()));
            }
            set.insert(a);
        }
        Ok(AtomicValuation { atoms: set })
    }

    pub fn contains(&self, atom: &Formula) -> bool {
        self.atoms.contains(atom)
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Formula> {
        self.atoms.iter()
    }
}

/// Whether the sentence `a` belongs to the perfect valuation generated by
/// `e`: atoms by membership, implication materially, and `forall B` iff
/// every ground instance `B[c, x1, x2, ...]` does.
pub fn herbrand_eval(e: &AtomicValuation, a: &Formula, sig: &Signature) -> Result<bool, HerbrandError> {
    if sig.with_equality() {
        return Err(HerbrandError::Equality);
    }
    if let Some((name, _)) = sig.functions().find(|(_, arity)| *arity > 0) {
        return Err(HerbrandError::NonConstantFunction(name.to_string()));
    }
    sig.check_formula(a)?;
    if !a.is_param_free() {
        return Err(HerbrandError::Parameters);
    }
    if min_rank(a) > 0 {
        return Err(HerbrandError::NotClosed);
    }
    let universe: Vec<Term> = sig.functions().map(|(name, _)| Term::constant(name)).collect();
    ground_eval(e, a, &universe)
}

fn ground_eval(e: &AtomicValuation, a: &Formula, universe: &[Term]) -> Result<bool, HerbrandError> {
    match a {
        Formula::Atom(..) => Ok(e.contains(a)),
        Formula::Implies(l, r) => Ok(!ground_eval(e, l, universe)? || ground_eval(e, r, universe)?),
        Formula::Forall(body) => {
            if universe.is_empty() {
                return Err(HerbrandError::EmptyUniverse);
            }
            for c in universe {
                let instance = body.apply(&Substitution::instantiate_front(c.clone()));
                if !ground_eval(e, &instance, universe)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn pc() -> Formula {
        Formula::atom("P", vec![Term::constant("c")])
    }

    #[test]
    fn single_constant() {
        let sig = Signature::parse("fn c 0\npred P 1").unwrap();
        let e = AtomicValuation::new([pc()]).unwrap();
        let all = parse_formula("(forall P(x1))", &sig).unwrap();
        assert_eq!(herbrand_eval(&e, &all, &sig), Ok(true));
    }

    #[test]
    fn missing_instance() {
        let sig = Signature::parse("fn c 0\nfn d 0\npred P 1").unwrap();
        let e = AtomicValuation::new([pc()]).unwrap();
        let all = parse_formula("(forall P(x1))", &sig).unwrap();
        assert_eq!(herbrand_eval(&e, &all, &sig), Ok(false));
        let some = parse_formula("~(forall ~P(x1))", &sig).unwrap();
        assert_eq!(herbrand_eval(&e, &some, &sig), Ok(true));
    }

    #[test]
    fn construction_rules() {
        assert_eq!(AtomicValuation::new([Formula::falsum()]), Err(HerbrandError::ContainsFalse));
        let open = Formula::atom("P", vec![Term::var(1)]);
        assert!(matches!(AtomicValuation::new([open]), Err(HerbrandError::NotGroundAtom(_))));
        let imp = Formula::implies(pc(), pc());
        assert!(matches!(AtomicValuation::new([imp]), Err(HerbrandError::NotGroundAtom(_))));
    }

    #[test]
    fn rejected_languages_and_formulas() {
        let e = AtomicValuation::default();
        let f = Signature::parse("fn c 0\nfn s 1\npred P 1").unwrap();
        let p = parse_formula("P(c())", &f).unwrap();
        assert_eq!(herbrand_eval(&e, &p, &f), Err(HerbrandError::NonConstantFunction("s".into())));
        let eq = Signature::parse("with-equality\nfn c 0").unwrap();
        let q = parse_formula("c() = c()", &eq).unwrap();
        assert_eq!(herbrand_eval(&e, &q, &eq), Err(HerbrandError::Equality));
        let empty = Signature::parse("pred P 1").unwrap();
        let all = parse_formula("(forall P(x1))", &empty).unwrap();
        assert_eq!(herbrand_eval(&e, &all, &empty), Err(HerbrandError::EmptyUniverse));
        let open = parse_formula("P(x1)", &empty).unwrap();
        assert_eq!(herbrand_eval(&e, &open, &empty), Err(HerbrandError::NotClosed));
        // no quantifier, no universe needed
        let closed = parse_formula("false -> false", &empty).unwrap();
        assert_eq!(herbrand_eval(&e, &closed, &empty), Ok(true));
    }
}
