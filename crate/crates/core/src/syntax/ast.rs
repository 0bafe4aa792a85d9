use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// Name of the always-present 0-ary predicate interpreted as falsity.
pub const FALSE: &str = "false";
/// Name of the binary equality predicate, present in languages with equality.
pub const EQ: &str = "eq";

/// An element of the free clone of terms.
///
/// Variables are positive indices: `Var(i)` is the variable `xi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(usize),
    Param(Arc<str>),
    App(Arc<str>, Vec<Term>),
}

impl Term {
    pub fn var(index: usize) -> Term {
        assert!(index >= 1, "variable indices start at 1");
        Term::Var(index)
    }

    pub fn param(name: impl Into<Arc<str>>) -> Term {
        Term::Param(name.into())
    }

    pub fn app(symbol: impl Into<Arc<str>>, args: Vec<Term>) -> Term {
        Term::App(symbol.into(), args)
    }

    pub fn constant(symbol: impl Into<Arc<str>>) -> Term {
        Term::App(symbol.into(), Vec::new())
    }

    /// Largest variable index occurring in the term, 0 when there is none.
    pub fn max_var(&self) -> usize {
        match self {
            Term::Var(i) => *i,
            Term::Param(_) => 0,
            Term::App(_, args) => args.iter().map(Term::max_var).max().unwrap_or(0),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Param(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn is_param_free(&self) -> bool {
        match self {
            Term::Var(_) => true,
            Term::Param(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_param_free),
        }
    }

    pub(crate) fn collect_params(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Term::Var(_) => {}
            Term::Param(p) => {
                out.insert(p.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_params(out)),
        }
    }
}

/// An element of the free algebra of formulas generated by atoms under
/// implication and the index-shifting universal quantifier.
///
/// `Forall(body)` binds `x1` of `body`; every other `x(i+1)` of the body is
/// the outer `xi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Arc<str>, Vec<Term>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(Box<Formula>),
}

impl Formula {
    pub fn atom(symbol: impl Into<Arc<str>>, args: Vec<Term>) -> Formula {
        Formula::Atom(symbol.into(), args)
    }

    pub fn falsum() -> Formula {
        Formula::Atom(FALSE.into(), Vec::new())
    }

    pub fn eq(lhs: Term, rhs: Term) -> Formula {
        Formula::Atom(EQ.into(), vec![lhs, rhs])
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Implies(Box::new(lhs), Box::new(rhs))
    }

    pub fn forall(body: Formula) -> Formula {
        Formula::Forall(Box::new(body))
    }

    pub fn is_falsum(&self) -> bool {
        matches!(self, Formula::Atom(p, args) if &**p == FALSE && args.is_empty())
    }

    /// Splits `A -> B` into its two sides.
    pub fn as_implies(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Implies(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_forall(&self) -> Option<&Formula> {
        match self {
            Formula::Forall(b) => Some(b),
            _ => None,
        }
    }

    /// Largest variable index written anywhere in the formula, bound or free.
    pub fn max_var(&self) -> usize {
        match self {
            Formula::Atom(_, args) => args.iter().map(Term::max_var).max().unwrap_or(0),
            Formula::Implies(a, b) => a.max_var().max(b.max_var()),
            Formula::Forall(b) => b.max_var(),
        }
    }

    /// Number of `->` and `forall` constructors.
    pub fn connectives(&self) -> usize {
        match self {
            Formula::Atom(..) => 0,
            Formula::Implies(a, b) => 1 + a.connectives() + b.connectives(),
            Formula::Forall(b) => 1 + b.connectives(),
        }
    }

    pub fn is_param_free(&self) -> bool {
        match self {
            Formula::Atom(_, args) => args.iter().all(Term::is_param_free),
            Formula::Implies(a, b) => a.is_param_free() && b.is_param_free(),
            Formula::Forall(b) => b.is_param_free(),
        }
    }

    pub fn params(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_params(&mut out);
        out
    }

    fn collect_params(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Formula::Atom(_, args) => args.iter().for_each(|a| a.collect_params(out)),
            Formula::Implies(a, b) => {
                a.collect_params(out);
                b.collect_params(out);
            }
            Formula::Forall(b) => b.collect_params(out),
        }
    }

    /// All subformulas in pre-order, the formula itself first.
    pub fn subformulas(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            out.push(f);
            match f {
                Formula::Atom(..) => {}
                Formula::Implies(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
                Formula::Forall(b) => stack.push(b),
            }
        }
        out
    }
}

fn write_args(f: &mut fmt::Formatter<'_>, args: &[Term]) -> fmt::Result {
    f.write_str("(")?;
    for (k, a) in args.iter().enumerate() {
        if k > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::Param(p) => write!(f, "${p}"),
            Term::App(sym, args) => {
                f.write_str(sym)?;
                write_args(f, args)
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(p, args) if args.is_empty() && &**p == FALSE => f.write_str(FALSE),
            Formula::Atom(p, args) => {
                f.write_str(p)?;
                write_args(f, args)
            }
            Formula::Implies(a, b) => write!(f, "({a} -> {b})"),
            Formula::Forall(b) => write!(f, "(forall {b})"),
        }
    }
}
