use std::ops::Range;

use thiserror::Error;

use super::structure::{Element, Env, Structure};
use crate::clone::{min_rank, Substitutable};
use crate::syntax::{Formula, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("environment has {len} values but x{needed} is free")]
    EnvTooShort { needed: usize, len: usize },
    #[error("parameter `${0}` is not a domain element")]
    UnknownParameter(String),
    #[error("symbol `{0}` is not interpreted by the structure")]
    UnknownSymbol(String),
}

/// How formulas are evaluated in a structure.
///
/// The standard evaluator lets `forall` range over the whole domain; with
/// the domain taken as the parameter set every term denotes an element, so
/// this agrees with quantifying over all terms. The range is a hook so that
/// audits can be run against altered evaluators.
pub trait Evaluator: Send + Sync {
    fn name(&self) -> &'static str;

    /// Elements a universal quantifier ranges over.
    fn quantifier_range(&self, s: &Structure) -> Range<Element> {
        0..s.size()
    }

    fn eval_formula(&self, a: &Formula, s: &Structure, env: &Env) -> Result<bool, EvalError> {
        check_env(a, env)?;
        let range = self.quantifier_range(s);
        Frame { s, env: env.values(), range, binders: Vec::new() }.formula(a)
    }
}

/// Quantifiers range over the full domain.
#[derive(Debug, Clone, Copy, Default)]
pub struct Standard;

impl Evaluator for Standard {
    fn name(&self) -> &'static str {
        "standard"
    }
}

fn check_env<D: Substitutable>(d: &D, env: &Env) -> Result<(), EvalError> {
    let needed = min_rank(d);
    if needed > env.len() {
        return Err(EvalError::EnvTooShort { needed, len: env.len() });
    }
    Ok(())
}

struct Frame<'a> {
    s: &'a Structure,
    env: &'a [Element],
    range: Range<Element>,
    /// Innermost binder last.
    binders: Vec<Element>,
}

impl Frame<'_> {
    fn var(&self, i: usize) -> Result<Element, EvalError> {
        let depth = self.binders.len();
        if i <= depth {
            return Ok(self.binders[depth - i]);
        }
        let k = i - depth;
        self.env.get(k - 1).copied().ok_or(EvalError::EnvTooShort { needed: k, len: self.env.len() })
    }

    /// Evaluates `args` and hands the values to `k`, on the stack for small
    /// arities.
    fn with_values<R>(&self, args: &[Term], k: impl FnOnce(&[Element]) -> R) -> Result<R, EvalError> {
        const INLINE: usize = 8;
        if args.len() <= INLINE {
            let mut buf = [0; INLINE];
            for (slot, a) in buf.iter_mut().zip(args) {
                *slot = self.term(a)?;
            }
            Ok(k(&buf[..args.len()]))
        } else {
            let vals = args.iter().map(|a| self.term(a)).collect::<Result<Vec<_>, _>>()?;
            Ok(k(&vals))
        }
    }

    fn term(&self, t: &Term) -> Result<Element, EvalError> {
        match t {
            Term::Var(i) => self.var(*i),
            Term::Param(p) => self.s.element(p).ok_or_else(|| EvalError::UnknownParameter(p.to_string())),
            Term::App(f, args) => self
                .with_values(args, |vals| self.s.apply(f, vals))?
                .ok_or_else(|| EvalError::UnknownSymbol(f.to_string())),
        }
    }

    fn formula(&mut self, a: &Formula) -> Result<bool, EvalError> {
        match a {
            Formula::Atom(p, args) => self
                .with_values(args, |vals| self.s.holds(p, vals))?
                .ok_or_else(|| EvalError::UnknownSymbol(p.to_string())),
            Formula::Implies(l, r) => {
                let l = self.formula(l)?;
                let r = self.formula(r)?;
                Ok(!l || r)
            }
            Formula::Forall(body) => {
                for m in self.range.clone() {
                    self.binders.push(m);
                    let v = self.formula(body);
                    self.binders.pop();
                    if !v? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }
}

/// Value of `t` with `xi` read from `env`; parameters name domain elements.
pub fn eval_term(t: &Term, s: &Structure, env: &Env) -> Result<Element, EvalError> {
    check_env(t, env)?;
    Frame { s, env: env.values(), range: 0..s.size(), binders: Vec::new() }.term(t)
}

/// Truth of `a` under `env`, with the standard evaluator.
pub fn eval_formula(a: &Formula, s: &Structure, env: &Env) -> Result<bool, EvalError> {
    Standard.eval_formula(a, s, env)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_term, Signature};

    fn sig() -> Signature {
        Signature::parse("with-equality\nfn plus 2\npred P 1\npred R 2").unwrap()
    }

    fn mod2() -> Structure {
        let mut s = Structure::with_size(&sig(), 2).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                s.set_function("plus", &[a, b], (a + b) % 2).unwrap();
            }
        }
        s.set_predicate("P", &[0], true).unwrap();
        s
    }

    #[test]
    fn terms() {
        let s = mod2();
        let t = parse_term("plus(x1, x2)", &sig()).unwrap();
        assert_eq!(eval_term(&t, &s, &Env::new(vec![1, 1])), Ok(0));
        assert_eq!(eval_term(&Term::param("1"), &s, &Env::empty()), Ok(1));
        assert_eq!(eval_term(&Term::var(1), &s, &Env::empty()), Err(EvalError::EnvTooShort { needed: 1, len: 0 }));
        assert_eq!(eval_term(&Term::param("7"), &s, &Env::empty()), Err(EvalError::UnknownParameter("7".into())));
    }

    #[test]
    fn quantifier() {
        let mut s = mod2();
        let all_p = parse_formula("(forall P(x1))", &sig()).unwrap();
        assert_eq!(eval_formula(&all_p, &s, &Env::empty()), Ok(false));
        s.set_predicate("P", &[1], true).unwrap();
        assert_eq!(eval_formula(&all_p, &s, &Env::empty()), Ok(true));
        assert_eq!(eval_formula(&Formula::falsum(), &s, &Env::empty()), Ok(false));
    }

    #[test]
    fn binders_and_outer_variables() {
        let mut s = mod2();
        s.set_predicate("R", &[0, 1], true).unwrap();
        // inside the binder x1 is the bound element and x2 is the outer x1
        let f = parse_formula("(forall (R(x2, x1) -> x1 = plus(x2, x2)))", &sig()).unwrap();
        assert_eq!(eval_formula(&f, &s, &Env::new(vec![0])), Ok(false));
        assert_eq!(eval_formula(&f, &s, &Env::new(vec![1])), Ok(true));
        assert!(matches!(eval_formula(&f, &s, &Env::empty()), Err(EvalError::EnvTooShort { .. })));
    }

    #[test]
    fn unknown_symbols() {
        let s = mod2();
        let f = Formula::atom("Q", vec![]);
        assert_eq!(eval_formula(&f, &s, &Env::empty()), Err(EvalError::UnknownSymbol("Q".into())));
    }
}
