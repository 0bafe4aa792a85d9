//! Bounded countermodel search.
//!
//! Candidates are enumerated by domain size, ascending. Within one size a
//! candidate is a digit string, most significant first: one bit per tuple of
//! each free predicate (predicates by name, tuples lexicographic), then one
//! element per entry of each function table (same order), then the
//! environment `x1, x2, ...`. `false` and `eq` have fixed interpretations and
//! take no digits. Every strategy must report the least matching candidate.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use super::eval::{eval_formula, EvalError};
use super::structure::{Env, Structure};
use crate::clone::min_rank;
use crate::proof::Theory;
use crate::syntax::{Formula, Signature, WellFormedError, EQ, FALSE};

pub const DEFAULT_CEILING: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search space has {count} candidates, above the ceiling of {ceiling}")]
    TooLarge { count: String, ceiling: u64 },
    #[error("max size must be at least 1")]
    ZeroSize,
    #[error("the goal may not mention parameters")]
    Parameters,
    #[error("formula is not over the signature: {0}")]
    IllFormed(#[from] WellFormedError),
    #[error("unknown search strategy `{0}`")]
    UnknownStrategy(String),
}

/// Finds the least index in `0..count` satisfying a predicate.
pub trait SearchStrategy: Send + Sync {
    fn name(&self) -> &'static str;

    fn find_first(&self, count: u64, hit: &(dyn Fn(u64) -> bool + Sync)) -> Option<u64>;
}

/// Walks the candidates in order on the calling thread.
pub struct Sequential;

impl SearchStrategy for Sequential {
    fn name(&self) -> &'static str {
        "sequential"
    }

    fn find_first(&self, count: u64, hit: &(dyn Fn(u64) -> bool + Sync)) -> Option<u64> {
        (0..count).find(|&k| hit(k))
    }
}

/// Splits the candidates across the rayon pool; still returns the least hit.
pub struct Parallel;

impl SearchStrategy for Parallel {
    fn name(&self) -> &'static str {
        "parallel"
    }

    fn find_first(&self, count: u64, hit: &(dyn Fn(u64) -> bool + Sync)) -> Option<u64> {
        (0..count).into_par_iter().find_first(|&k| hit(k))
    }
}

/// Search strategies by name.
pub struct StrategyRegistry {
    entries: Vec<Arc<dyn SearchStrategy>>,
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        StrategyRegistry { entries: Vec::new() }
    }

    pub fn standard() -> Self {
        let mut reg = StrategyRegistry::empty();
        reg.register(Arc::new(Sequential));
        reg.register(Arc::new(Parallel));
        reg
    }

    pub fn register(&mut self, strategy: Arc<dyn SearchStrategy>) {
        self.entries.retain(|s| s.name() != strategy.name());
        self.entries.push(strategy);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn SearchStrategy>, SearchError> {
        self.entries
            .iter()
            .find(|s| s.name() == name)
            .cloned()
            .ok_or_else(|| SearchError::UnknownStrategy(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|s| s.name()).collect()
    }
}

pub struct SearchOptions {
    pub max_size: usize,
    /// Refuse searches with more candidates than this, over all sizes.
    pub ceiling: u64,
    pub strategy: Arc<dyn SearchStrategy>,
}

impl SearchOptions {
    pub fn new(max_size: usize) -> Self {
        SearchOptions { max_size, ceiling: DEFAULT_CEILING, strategy: Arc::new(Sequential) }
    }
}

/// A structure and environment satisfying a theory but not a goal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Countermodel {
    pub structure: Structure,
    pub env: Env,
}

impl fmt::Display for Countermodel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.structure)?;
        writeln!(f, "{}", self.env.display(&self.structure))
    }
}

/// The candidates of one domain size.
struct Space {
    template: Structure,
    /// (name, table length), predicates first.
    preds: Vec<(Arc<str>, usize)>,
    fns: Vec<(Arc<str>, usize)>,
    env_len: usize,
    count: u128,
}

/// Candidates of one size, computed from arities alone.
fn candidate_count(sig: &Signature, size: usize, env_len: usize) -> u128 {
    let size = size as u128;
    let table = |arity: usize| size.checked_pow(arity as u32);
    let mut bits = 0u128;
    for (name, arity) in sig.predicates() {
        if name != FALSE && name != EQ {
            bits = table(arity).and_then(|t| bits.checked_add(t)).unwrap_or(u128::MAX);
        }
    }
    let mut elems = env_len as u128;
    for (_, arity) in sig.functions() {
        elems = table(arity).and_then(|t| elems.checked_add(t)).unwrap_or(u128::MAX);
    }
    let pow = |base: u128, exp: u128| u32::try_from(exp).ok().and_then(|e| base.checked_pow(e));
    pow(2, bits).and_then(|p| pow(size, elems).and_then(|q| p.checked_mul(q))).unwrap_or(u128::MAX)
}

impl Space {
    fn new(sig: &Signature, size: usize, env_len: usize) -> Self {
        let template = Structure::with_size(sig, size).expect("size is positive");
        let preds: Vec<(Arc<str>, usize)> = template
            .predicates
            .iter()
            .filter(|(name, _)| &***name != FALSE && &***name != EQ)
            .map(|(name, t)| (name.clone(), t.members.len()))
            .collect();
        let fns: Vec<(Arc<str>, usize)> =
            template.functions.iter().map(|(name, t)| (name.clone(), t.values.len())).collect();
        let count = candidate_count(sig, size, env_len);
        Space { template, preds, fns, env_len, count }
    }

    fn decode(&self, mut k: u64) -> (Structure, Env) {
        let size = self.template.size() as u64;
        let mut s = self.template.clone();
        let mut env = vec![0; self.env_len];
        for slot in env.iter_mut().rev() {
            *slot = (k % size) as usize;
            k /= size;
        }
        for (name, len) in self.fns.iter().rev() {
            let table = s.functions.get_mut(name).expect("template symbol");
            for slot in table.values[..*len].iter_mut().rev() {
                *slot = (k % size) as usize;
                k /= size;
            }
        }
        for (name, len) in self.preds.iter().rev() {
            let table = s.predicates.get_mut(name).expect("template symbol");
            for slot in table.members[..*len].iter_mut().rev() {
                *slot = k % 2 == 1;
                k /= 2;
            }
        }
        (s, Env::new(env))
    }
}

fn holds(a: &Formula, s: &Structure, env: &Env) -> bool {
    // well-formedness is checked before the search starts
    eval_formula(a, s, env).unwrap_or_else(|e: EvalError| panic!("evaluation failed during search: {e}"))
}

/// Looks for a structure of size at most `max_size` in which every sentence
/// of `theory` holds and `goal` fails under some environment. Only the listed
/// sentences are used; schemas attached to the theory are not enumerated.
pub fn find_countermodel(
    theory: &Theory,
    goal: &Formula,
    sig: &Signature,
    max_size: usize,
) -> Result<Option<Countermodel>, SearchError> {
    find_countermodel_with(theory, goal, sig, &SearchOptions::new(max_size))
}

pub fn find_countermodel_with(
    theory: &Theory,
    goal: &Formula,
    sig: &Signature,
    opts: &SearchOptions,
) -> Result<Option<Countermodel>, SearchError> {
    if opts.max_size == 0 {
        return Err(SearchError::ZeroSize);
    }
    if !goal.is_param_free() {
        return Err(SearchError::Parameters);
    }
    sig.check_formula(goal)?;
    for (_, sentence) in theory.sentences() {
        sig.check_formula(sentence)?;
    }
    let env_len = min_rank(goal);
    let total = total_candidates(sig, env_len, opts.max_size, opts.ceiling as u128);
    if total > opts.ceiling as u128 {
        let count = if total == u128::MAX { "more than 2^128".to_string() } else { total.to_string() };
        return Err(SearchError::TooLarge { count, ceiling: opts.ceiling });
    }
    let empty = Env::empty();
    for size in 1..=opts.max_size {
        let space = Space::new(sig, size, env_len);
        let hit = |k: u64| {
            let (s, env) = space.decode(k);
            theory.sentences().iter().all(|(_, t)| holds(t, &s, &empty)) && !holds(goal, &s, &env)
        };
        if let Some(k) = opts.strategy.find_first(space.count as u64, &hit) {
            let (structure, env) = space.decode(k);
            return Ok(Some(Countermodel { structure, env }));
        }
    }
    Ok(None)
}

/// Number of candidates a search up to `max_size` would visit.
pub fn search_space_size(sig: &Signature, goal: &Formula, max_size: usize) -> u128 {
    total_candidates(sig, min_rank(goal), max_size, u128::MAX - 1)
}

/// Sum of candidate counts over sizes `1..=max_size`, stopping once it
/// passes `stop_above`.
fn total_candidates(sig: &Signature, env_len: usize, max_size: usize, stop_above: u128) -> u128 {
    let mut total = 0u128;
    for size in 1..=max_size {
        total = total.saturating_add(candidate_count(sig, size, env_len));
        if total > stop_above {
            break;
        }
    }
    total
}
