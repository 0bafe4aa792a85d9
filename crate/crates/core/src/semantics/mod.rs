//! Finite structures and what holds in them.

mod audit;
mod eval;
mod herbrand;
mod model_file;
mod search;
mod structure;

pub use audit::{induced_valuation_check, induced_valuation_check_with, AuditReport, ConditionReport};
pub use eval::{eval_formula, eval_term, EvalError, Evaluator, Standard};
pub use herbrand::{herbrand_eval, AtomicValuation, HerbrandError};
pub use model_file::{parse_model, Model, ModelError};
pub use search::{
    find_countermodel, find_countermodel_with, search_space_size, Countermodel, Parallel, SearchError, SearchOptions,
    SearchStrategy, Sequential, StrategyRegistry, DEFAULT_CEILING,
};
pub use structure::{Element, Env, Structure, StructureError};
