//! Axiom schemas A1-A8.
//!
//! Each schema is a recognizer behind [`AxiomSchema`]; a [`SchemaRegistry`]
//! holds them by name and tries them in registration order. An axiom may be
//! wrapped in any number of outer `forall`s, which are stripped before
//! matching and counted in the resulting tag.

use std::fmt;
use std::sync::OnceLock;

use crate::clone::{neg, shift_up, single_subst, Substitutable, Substitution};
use crate::syntax::{Formula, Signature, Term, EQ};

/// Data that pins down one instance of a schema.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomWitness {
    /// `A -> (B -> A)`
    A1 { a: Formula, b: Formula },
    /// `(A -> (B -> C)) -> ((A -> B) -> (A -> C))`
    A2 { a: Formula, b: Formula, c: Formula },
    /// `~~A -> A`
    A3 { a: Formula },
    /// `forall(A -> B) -> (forall A -> forall B)`
    A4 { a: Formula, b: Formula },
    /// `forall A -> A[t, x1, x2, ...]`
    A5 { a: Formula, t: Term },
    /// `A -> forall(A+)`
    A6 { a: Formula },
    /// `xi = xi`
    A7 { x: usize },
    /// `x = y -> (A -> A[y/x])`
    A8 { x: usize, y: usize, a: Formula },
}

impl AxiomWitness {
    pub fn name(&self) -> &'static str {
        match self {
            AxiomWitness::A1 { .. } => "A1",
            AxiomWitness::A2 { .. } => "A2",
            AxiomWitness::A3 { .. } => "A3",
            AxiomWitness::A4 { .. } => "A4",
            AxiomWitness::A5 { .. } => "A5",
            AxiomWitness::A6 { .. } => "A6",
            AxiomWitness::A7 { .. } => "A7",
            AxiomWitness::A8 { .. } => "A8",
        }
    }

    /// The schema instance these witnesses describe.
    pub fn instantiate(&self) -> Formula {
        use Formula as F;
        match self {
            AxiomWitness::A1 { a, b } => F::implies(a.clone(), F::implies(b.clone(), a.clone())),
            AxiomWitness::A2 { a, b, c } => F::implies(
                F::implies(a.clone(), F::implies(b.clone(), c.clone())),
                F::implies(F::implies(a.clone(), b.clone()), F::implies(a.clone(), c.clone())),
            ),
            AxiomWitness::A3 { a } => F::implies(neg(&neg(a)), a.clone()),
            AxiomWitness::A4 { a, b } => F::implies(
                F::forall(F::implies(a.clone(), b.clone())),
                F::implies(F::forall(a.clone()), F::forall(b.clone())),
            ),
            AxiomWitness::A5 { a, t } => {
                F::implies(F::forall(a.clone()), a.apply(&Substitution::instantiate_front(t.clone())))
            }
            AxiomWitness::A6 { a } => F::implies(a.clone(), F::forall(shift_up(a))),
            AxiomWitness::A7 { x } => F::eq(Term::Var(*x), Term::Var(*x)),
            AxiomWitness::A8 { x, y, a } => F::implies(
                F::eq(Term::Var(*x), Term::Var(*y)),
                F::implies(a.clone(), single_subst(a, Term::Var(*y), *x)),
            ),
        }
    }
}

/// A recognized axiom: the schema instance plus how many `forall`s close it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomTag {
    pub witness: AxiomWitness,
    pub closures: usize,
}

impl AxiomTag {
    pub fn name(&self) -> &'static str {
        self.witness.name()
    }

    pub fn reconstruct(&self) -> Formula {
        crate::clone::forall_n(&self.witness.instantiate(), self.closures)
    }
}

impl fmt::Display for AxiomTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} closures={}", self.name(), self.closures)?;
        match &self.witness {
            AxiomWitness::A5 { t, .. } => write!(f, " t={t}"),
            AxiomWitness::A7 { x } => write!(f, " x=x{x}"),
            AxiomWitness::A8 { x, y, .. } => write!(f, " x=x{x} y=x{y}"),
            _ => Ok(()),
        }
    }
}

/// One axiom schema.
pub trait AxiomSchema: Send + Sync {
    fn name(&self) -> &'static str;

    /// Schemas that only exist in languages with equality.
    fn requires_equality(&self) -> bool {
        false
    }

    /// Recognizes an instance with no outer closure.
    fn recognize(&self, body: &Formula) -> Option<AxiomWitness>;
}

fn imp(f: &Formula) -> Option<(&Formula, &Formula)> {
    f.as_implies()
}

pub struct A1;
pub struct A2;
pub struct A3;
pub struct A4;
pub struct A5;
pub struct A6;
pub struct A7;
pub struct A8;

impl AxiomSchema for A1 {
    fn name(&self) -> &'static str {
        "A1"
    }
    fn recognize(&self, body: &Formula) -> Option<AxiomWitness> {
        let (a, rest) = imp(body)?;
        let (b, a2) = imp(rest)?;
        (a == a2).then(|| AxiomWitness::A1 { a: a.clone(), b: b.clone() })
    }
}

impl AxiomSchema for A2 {
    fn name(&self) -> &'static str {
        "A2"
    }
    fn recognize(&self, body: &Formula) -> Option<AxiomWitness> {
        let (lhs, rhs) = imp(body)?;
        let (a, bc) = imp(lhs)?;
        let (b, c) = imp(bc)?;
        let (ab, ac) = imp(rhs)?;
        let ok = ab == &Formula::implies(a.clone(), b.clone()) && ac == &Formula::implies(a.clone(), c.clone());
        ok.then(|| AxiomWitness::A2 { a: a.clone(), b: b.clone(), c: c.clone() })
    }
}

impl AxiomSchema for A3 {
    fn name(&self) -> &'static str {
        "A3"
    }
    fn recognize(&self, body: &Formula) -> Option<AxiomWitness> {
        let (nna, a) = imp(body)?;
        (nna == &neg(&neg(a))).then(|| AxiomWitness::A3 { a: a.clone() })
    }
}

impl AxiomSchema for A4 {
    fn name(&self) -> &'static str {
        "A4"
    }
    fn recognize(&self, body: &Formula) -> Option<AxiomWitness> {
        let (lhs, rhs) = imp(body)?;
        let (a, b) = imp(lhs.as_forall()?)?;
        let (fa, fb) = imp(rhs)?;
        let ok = fa.as_forall()? == a && fb.as_forall()? == b;
        ok.then(|| AxiomWitness::A4 { a: a.clone(), b: b.clone() })
    }
}

impl AxiomSchema for A5 {
    fn name(&self) -> &'static str {
        "A5"
    }
    fn recognize(&self, body: &Formula) -> Option<AxiomWitness> {
        let t = match_a5(body)?;
        let (lhs, _) = imp(body)?;
        Some(AxiomWitness::A5 { a: lhs.as_forall()?.clone(), t })
    }
}

impl AxiomSchema for A6 {
    fn name(&self) -> &'static str {
        "A6"
    }
    fn recognize(&self, body: &Formula) -> Option<AxiomWitness> {
        let (a, rhs) = imp(body)?;
        (rhs.as_forall()? == &shift_up(a)).then(|| AxiomWitness::A6 { a: a.clone() })
    }
}

impl AxiomSchema for A7 {
    fn name(&self) -> &'static str {
        "A7"
    }
    fn requires_equality(&self) -> bool {
        true
    }
    fn recognize(&self, body: &Formula) -> Option<AxiomWitness> {
        match body {
            Formula::Atom(p, args) if &**p == EQ => match args.as_slice() {
                [Term::Var(x), Term::Var(y)] if x == y => Some(AxiomWitness::A7 { x: *x }),
                _ => None,
            },
            _ => None,
        }
    }
}

impl AxiomSchema for A8 {
    fn name(&self) -> &'static str {
        "A8"
    }
    fn requires_equality(&self) -> bool {
        true
    }
    fn recognize(&self, body: &Formula) -> Option<AxiomWitness> {
        let (eq, rest) = imp(body)?;
        let (x, y) = match eq {
            Formula::Atom(p, args) if &**p == EQ => match args.as_slice() {
                [Term::Var(x), Term::Var(y)] => (*x, *y),
                _ => return None,
            },
            _ => return None,
        };
        let (a, b) = imp(rest)?;
        (*b == single_subst(a, Term::Var(y), x)).then(|| AxiomWitness::A8 { x, y, a: a.clone() })
    }
}

/// Recovers `t` from `forall A -> A[t, x1, x2, ...]`.
///
/// Walks `A` and the consequent in lockstep. Under `k` binders the slot being
/// instantiated is `x(k+1)`, which must line up with `t` shifted up `k`
/// times; slots at or below `k` stay put and slots above `k+1` move down one.
/// When `A` does not use the slot, `x1` is returned.
pub fn match_a5(f: &Formula) -> Option<Term> {
    let (lhs, rhs) = f.as_implies()?;
    let a = lhs.as_forall()?;
    let mut witness = None;
    a5_formula(a, rhs, 0, &mut witness).then(|| witness.unwrap_or(Term::Var(1)))
}

fn a5_formula(a: &Formula, b: &Formula, depth: usize, witness: &mut Option<Term>) -> bool {
    match (a, b) {
        (Formula::Atom(p, xs), Formula::Atom(q, ys)) => {
            p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| a5_term(x, y, depth, witness))
        }
        (Formula::Implies(a1, a2), Formula::Implies(b1, b2)) => {
            a5_formula(a1, b1, depth, witness) && a5_formula(a2, b2, depth, witness)
        }
        (Formula::Forall(a1), Formula::Forall(b1)) => a5_formula(a1, b1, depth + 1, witness),
        _ => false,
    }
}

fn a5_term(a: &Term, b: &Term, depth: usize, witness: &mut Option<Term>) -> bool {
    match a {
        Term::Var(j) if *j <= depth => a == b,
        Term::Var(j) if *j == depth + 1 => {
            let Some(t) = unshift(b, depth) else {
                return false;
            };
            match witness {
                Some(w) => *w == t,
                None => {
                    *witness = Some(t);
                    true
                }
            }
        }
        Term::Var(j) => *b == Term::Var(j - 1),
        Term::Param(_) => a == b,
        Term::App(f, xs) => match b {
            Term::App(g, ys) => {
                f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| a5_term(x, y, depth, witness))
            }
            _ => false,
        },
    }
}

/// Inverse of shifting up `k` times; fails if some variable index is `<= k`.
fn unshift(t: &Term, k: usize) -> Option<Term> {
    match t {
        Term::Var(i) if *i > k => Some(Term::Var(i - k)),
        Term::Var(_) => None,
        Term::Param(_) => Some(t.clone()),
        Term::App(f, args) => {
            Some(Term::App(f.clone(), args.iter().map(|a| unshift(a, k)).collect::<Option<Vec<_>>>()?))
        }
    }
}

/// Named schemas, tried in order; the first match wins.
pub struct SchemaRegistry {
    schemas: Vec<Box<dyn AxiomSchema>>,
}

impl SchemaRegistry {
    pub fn empty() -> Self {
        SchemaRegistry { schemas: Vec::new() }
    }

    /// A1 through A8.
    pub fn standard() -> Self {
        let mut reg = SchemaRegistry::empty();
        reg.register(Box::new(A1));
        reg.register(Box::new(A2));
        reg.register(Box::new(A3));
        reg.register(Box::new(A4));
        reg.register(Box::new(A5));
        reg.register(Box::new(A6));
        reg.register(Box::new(A7));
        reg.register(Box::new(A8));
        reg
    }

    /// Adds a schema, replacing any schema already registered under its name.
    pub fn register(&mut self, schema: Box<dyn AxiomSchema>) {
        match self.schemas.iter().position(|s| s.name() == schema.name()) {
            Some(k) => self.schemas[k] = schema,
            None => self.schemas.push(schema),
        }
    }

    pub fn get(&self, name: &str) -> Option<&dyn AxiomSchema> {
        self.schemas.iter().find(|s| s.name() == name).map(|s| s.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.schemas.iter().map(|s| s.name()).collect()
    }

    pub fn recognize(&self, f: &Formula, sig: &Signature) -> Option<AxiomTag> {
        if !f.is_param_free() {
            return None;
        }
        let mut body = f;
        let mut closures = 0;
        while let Formula::Forall(inner) = body {
            body = inner;
            closures += 1;
        }
        self.schemas
            .iter()
            .filter(|s| sig.with_equality() || !s.requires_equality())
            .find_map(|s| s.recognize(body))
            .map(|witness| AxiomTag { witness, closures })
    }
}

pub fn standard_schemas() -> &'static SchemaRegistry {
    static REGISTRY: OnceLock<SchemaRegistry> = OnceLock::new();
    REGISTRY.get_or_init(SchemaRegistry::standard)
}

/// Recognizes `f` as a (possibly closed) instance of A1-A8.
pub fn is_axiom(f: &Formula, sig: &Signature) -> Option<AxiomTag> {
    standard_schemas().recognize(f, sig)
}
