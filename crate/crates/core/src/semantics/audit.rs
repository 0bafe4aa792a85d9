//! Audits the set `U = {A : A holds in S under e}` against the conditions of
//! a perfect valuation, on a finite sample of formulas.
//!
//! 1. `false` is not in `U`.
//! 2. `A -> B` is in `U` iff `A` is not in `U` or `B` is.
//! 3. `forall A` is in `U` iff `A[t, x1, x2, ...]` is in `U` for every term
//!    `t`; here `t` ranges over the supplied terms and every domain element
//!    used as a parameter.
//! 4. With equality: `forall^n(x = x)` is in `U`.
//! 5. With equality: `forall^n(x = y -> (A -> A[y/x]))` is in `U`.
//!
//! Conditions 2 and 3 are checked on every subformula of the samples that the
//! environment is long enough to evaluate; 4 and 5 for `n` up to one past
//! the largest sample rank, with `x` and `y` drawn from the same
//! range so that the fully closed instances are included.

use std::collections::BTreeSet;
use std::fmt;

use super::eval::{EvalError, Evaluator, Standard};
use super::structure::{Env, Structure};
use crate::clone::{forall_n, min_rank, single_subst, Substitutable, Substitution};
use crate::syntax::{Formula, Term, EQ};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub condition: u8,
    pub checked: usize,
    /// Instances the environment was too short to evaluate.
    pub skipped: usize,
    pub counterexamples: Vec<String>,
}

impl ConditionReport {
    fn new(condition: u8) -> Self {
        ConditionReport { condition, checked: 0, skipped: 0, counterexamples: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "condition {}: {verdict} checked={} skipped={}", self.condition, self.checked, self.skipped)?;
        if let Some(first) = self.counterexamples.first() {
            write!(f, " counterexample={first}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub conditions: Vec<ConditionReport>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(ConditionReport::passed)
    }

    pub fn condition(&self, n: u8) -> Option<&ConditionReport> {
        self.conditions.iter().find(|c| c.condition == n)
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.conditions {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

struct Valuation<'a> {
    ev: &'a dyn Evaluator,
    s: &'a Structure,
    env: &'a Env,
}

impl Valuation<'_> {
    /// `Ok(None)` when the environment does not cover the formula.
    fn member(&self, a: &Formula) -> Result<Option<bool>, EvalError> {
        match self.ev.eval_formula(a, self.s, self.env) {
            Ok(v) => Ok(Some(v)),
            Err(EvalError::EnvTooShort { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }
}

/// Audits the valuation induced by `s` and `env` with the standard evaluator.
pub fn induced_valuation_check(s: &Structure, env: &Env, samples: &[Formula], terms: &[Term]) -> AuditReport {
    induced_valuation_check_with(&Standard, s, env, samples, terms)
}

pub fn induced_valuation_check_with(
    ev: &dyn Evaluator,
    s: &Structure,
    env: &Env,
    samples: &[Formula],
    terms: &[Term],
) -> AuditReport {
    let u = Valuation { ev, s, env };
    let closure: BTreeSet<&Formula> = samples.iter().flat_map(|a| a.subformulas()).collect();
    let mut instances: Vec<Term> = terms.to_vec();
    instances.extend(s.domain().iter().map(|m| Term::param(m.as_str())));

    let mut reports = vec![falsity(&u), implications(&u, &closure), universals(&u, &closure, &instances)];
    if s.holds(EQ, &[0, 0]).is_some() {
        let rank = samples.iter().map(min_rank).max().unwrap_or(0);
        reports.push(reflexivity(&u, rank));
        reports.push(substitutivity(&u, samples, rank));
    }
    AuditReport { conditions: reports }
}

fn record(report: &mut ConditionReport, outcome: Result<Option<bool>, EvalError>, describe: impl FnOnce() -> String) {
    match outcome {
        Ok(Some(true)) => report.checked += 1,
        Ok(Some(false)) => {
            report.checked += 1;
            report.counterexamples.push(describe());
        }
        Ok(None) => report.skipped += 1,
        Err(e) => report.counterexamples.push(format!("{} ({e})", describe())),
    }
}

fn falsity(u: &Valuation) -> ConditionReport {
    let mut r = ConditionReport::new(1);
    let outcome = u.member(&Formula::falsum()).map(|v| v.map(|holds| !holds));
    record(&mut r, outcome, || "false is in U".into());
    r
}

fn implications(u: &Valuation, closure: &BTreeSet<&Formula>) -> ConditionReport {
    let mut r = ConditionReport::new(2);
    for f in closure {
        let Some((a, b)) = f.as_implies() else { continue };
        let outcome = (|| {
            let (Some(whole), Some(a), Some(b)) = (u.member(f)?, u.member(a)?, u.member(b)?) else {
                return Ok(None);
            };
            Ok(Some(whole == (!a || b)))
        })();
        record(&mut r, outcome, || format!("{f}"));
    }
    r
}

fn universals(u: &Valuation, closure: &BTreeSet<&Formula>, instances: &[Term]) -> ConditionReport {
    let mut r = ConditionReport::new(3);
    for f in closure {
        let Some(body) = f.as_forall() else { continue };
        let mut witness = None;
        let outcome = (|| {
            let Some(whole) = u.member(f)? else { return Ok(None) };
            let mut all = true;
            for t in instances {
                let inst = body.apply(&Substitution::instantiate_front(t.clone()));
                if let Some(v) = u.member(&inst)? {
                    if !v && all {
                        all = false;
                        witness = Some(t.clone());
                    }
                }
            }
            Ok(Some(whole == all))
        })();
        record(&mut r, outcome, || match &witness {
            Some(t) => format!("{f} with t={t}"),
            None => format!("{f}"),
        });
    }
    r
}

fn reflexivity(u: &Valuation, rank: usize) -> ConditionReport {
    let mut r = ConditionReport::new(4);
    for n in 0..=rank + 1 {
        for i in 1..=rank + 1 {
            let f = forall_n(&Formula::eq(Term::var(i), Term::var(i)), n);
            record(&mut r, u.member(&f), || format!("{f}"));
        }
    }
    r
}

fn substitutivity(u: &Valuation, samples: &[Formula], rank: usize) -> ConditionReport {
    let mut r = ConditionReport::new(5);
    for a in samples {
        for x in 1..=rank + 1 {
            for y in 1..=rank + 1 {
                let body = Formula::implies(
                    Formula::eq(Term::var(x), Term::var(y)),
                    Formula::implies(a.clone(), single_subst(a, Term::var(y), x)),
                );
                for n in 0..=rank + 1 {
                    let f = forall_n(&body, n);
                    record(&mut r, u.member(&f), || format!("{f}"));
                }
            }
        }
    }
    r
}
