//! The `clonelogic` command line.
//!
//! Exit codes: 0 on success, 1 on a negative verdict (proof rejected,
//! countermodel found, not an axiom, audit failure), 2 on usage or input
//! errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::clone::{free_vars, min_rank, Substitutable};
use crate::proof::{check_proof, is_axiom, parse_proof, parse_theory, Theory};
use crate::semantics::{
    eval_formula, find_countermodel_with, induced_valuation_check, parse_model, Env, Model, SearchOptions,
    StrategyRegistry, DEFAULT_CEILING,
};
use crate::syntax::{parse_formula, parse_substitution, parse_term, Formula, Signature, Term};

#[derive(Debug, Parser)]
#[command(name = "clonelogic", version, about = "First-order logic with index variables")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Signature file
    #[arg(long, global = true, value_name = "PATH")]
    sig: Option<PathBuf>,
    /// Theory file
    #[arg(long, global = true, value_name = "PATH")]
    theory: Option<PathBuf>,
    /// Model file
    #[arg(long, global = true, value_name = "PATH")]
    model: Option<PathBuf>,
    /// Environment as space-separated element names
    #[arg(long, global = true, value_name = "ELEMENTS", allow_hyphen_values = true)]
    env: Option<String>,
    /// Largest domain size for countermodel search
    #[arg(long, global = true, value_name = "N", default_value_t = 3)]
    max_size: usize,
    /// Largest number of candidates countermodel search may visit
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_CEILING)]
    ceiling: u64,
    /// Countermodel search strategy
    #[arg(long, global = true, value_name = "NAME", default_value = "sequential")]
    strategy: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the canonical form of a formula or term
    Parse {
        /// Read the input as a term
        #[arg(long)]
        term: bool,
        input: String,
    },
    /// Apply a substitution `[t1, ..., tn; +d]` to a formula or term
    Subst { input: String, substitution: String },
    /// Least n such that the input has rank n
    Rank { input: String },
    /// Indices of the free variables
    Freevars { input: String },
    /// Name the axiom schema a formula instantiates
    Axiom { input: String },
    /// Check a proof file
    Check { proof: String },
    /// Evaluate a formula in a model
    Eval { input: String },
    /// Search for a finite countermodel
    Countermodel { input: String },
    /// Audit the valuation induced by a model on sample formulas and terms
    Audit { samples: String },
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: impl Into<String>) -> Self {
        Outcome { code: 0, stdout: stdout.into(), stderr: String::new() }
    }

    fn negative(stdout: impl Into<String>) -> Self {
        Outcome { code: 1, stdout: stdout.into(), stderr: String::new() }
    }

    fn usage(message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome { code: 2, stdout: String::new(), stderr }
    }
}

/// Runs one invocation. `argv` includes the program name; `stdin` is read
/// when a positional argument is `-`.
pub fn run<I, T>(argv: I, stdin: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Outcome::usage(text) } else { Outcome::ok(text) };
        }
    };
    dispatch(cli, stdin).unwrap_or_else(Outcome::usage)
}

struct Context<'a> {
    common: Common,
    sig: Signature,
    stdin: Option<&'a str>,
}

enum Object {
    Formula(Formula),
    Term(Term),
}

impl Context<'_> {
    fn positional(&self, arg: &str) -> Result<String, String> {
        if arg == "-" {
            self.stdin.map(|s| s.trim().to_string()).ok_or_else(|| "no standard input available".to_string())
        } else {
            Ok(arg.to_string())
        }
    }

    fn file_or_stdin(&self, arg: &str) -> Result<String, String> {
        if arg == "-" {
            self.stdin.map(str::to_string).ok_or_else(|| "no standard input available".to_string())
        } else {
            read(Path::new(arg))
        }
    }

    fn formula(&self, arg: &str) -> Result<Formula, String> {
        parse_formula(&self.positional(arg)?, &self.sig).map_err(|e| format!("formula: {e}"))
    }

    /// Formula if it parses as one, else term.
    fn object(&self, arg: &str) -> Result<Object, String> {
        let text = self.positional(arg)?;
        match parse_formula(&text, &self.sig) {
            Ok(f) => Ok(Object::Formula(f)),
            Err(fe) => parse_term(&text, &self.sig)
                .map(Object::Term)
                .map_err(|_| format!("neither a formula nor a term: {fe}")),
        }
    }

    fn theory(&self) -> Result<Theory, String> {
        match &self.common.theory {
            None => Ok(Theory::new("empty")),
            Some(path) => parse_theory(&read(path)?, &self.sig).map_err(|e| format!("{}: {e}", path.display())),
        }
    }

    fn model(&self) -> Result<(Model, Env), String> {
        let path = self.common.model.as_ref().ok_or("this command needs --model")?;
        let model = parse_model(&read(path)?, &self.sig).map_err(|e| format!("{}: {e}", path.display()))?;
        let env = match &self.common.env {
            Some(text) => Env::parse(text, &model.structure).map_err(|e| format!("--env: {e}"))?,
            None => model.env.clone().unwrap_or_default(),
        };
        Ok((model, env))
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn dispatch(cli: Cli, stdin: Option<&str>) -> Result<Outcome, String> {
    let sig_path = cli.common.sig.as_ref().ok_or("the --sig flag is required")?;
    let sig = Signature::parse(&read(sig_path)?).map_err(|e| format!("{}: {e}", sig_path.display()))?;
    let cx = Context { common: cli.common, sig, stdin };

    match &cli.command {
        Command::Parse { term, input } => {
            let printed = if *term {
                parse_term(&cx.positional(input)?, &cx.sig).map_err(|e| format!("term: {e}"))?.to_string()
            } else {
                cx.formula(input)?.to_string()
            };
            Ok(Outcome::ok(format!("{printed}\n")))
        }
        Command::Subst { input, substitution } => {
            let sigma = parse_substitution(substitution, &cx.sig).map_err(|e| format!("substitution: {e}"))?;
            let printed = match cx.object(input)? {
                Object::Formula(f) => f.apply(&sigma).to_string(),
                Object::Term(t) => t.apply(&sigma).to_string(),
            };
            Ok(Outcome::ok(format!("{printed}\n")))
        }
        Command::Rank { input } => {
            let rank = match cx.object(input)? {
                Object::Formula(f) => min_rank(&f),
                Object::Term(t) => min_rank(&t),
            };
            Ok(Outcome::ok(format!("{rank}\n")))
        }
        Command::Freevars { input } => {
            let vars = match cx.object(input)? {
                Object::Formula(f) => free_vars(&f),
                Object::Term(t) => free_vars(&t),
            };
            let list: Vec<String> = vars.iter().map(usize::to_string).collect();
            Ok(Outcome::ok(format!("{}\n", list.join(" "))))
        }
        Command::Axiom { input } => {
            let f = cx.formula(input)?;
            Ok(match is_axiom(&f, &cx.sig) {
                Some(tag) => Outcome::ok(format!("{tag}\n")),
                None => Outcome::negative("NOT-AXIOM\n"),
            })
        }
        Command::Check { proof } => {
            let theory = cx.theory()?;
            let proof = parse_proof(&cx.file_or_stdin(proof)?, &cx.sig).map_err(|e| format!("proof: {e}"))?;
            let verdict = check_proof(&proof, &theory, &cx.sig);
            let text = format!("{verdict}\n");
            Ok(if verdict.is_accept() { Outcome::ok(text) } else { Outcome::negative(text) })
        }
        Command::Eval { input } => {
            let f = cx.formula(input)?;
            let (model, env) = cx.model()?;
            let value = eval_formula(&f, &model.structure, &env).map_err(|e| format!("eval: {e}"))?;
            Ok(Outcome::ok(if value { "TRUE\n" } else { "FALSE\n" }))
        }
        Command::Countermodel { input } => {
            let goal = cx.formula(input)?;
            let theory = cx.theory()?;
            let strategy = StrategyRegistry::standard().get(&cx.common.strategy).map_err(|e| e.to_string())?;
            let opts = SearchOptions { max_size: cx.common.max_size, ceiling: cx.common.ceiling, strategy };
            match find_countermodel_with(&theory, &goal, &cx.sig, &opts).map_err(|e| e.to_string())? {
                Some(found) => Ok(Outcome::negative(found.to_string())),
                None => Ok(Outcome::ok(format!("NONE size<={}\n", opts.max_size))),
            }
        }
        Command::Audit { samples } => {
            let (formulas, terms) = parse_samples(&cx.file_or_stdin(samples)?, &cx.sig)?;
            let (model, env) = cx.model()?;
            let report = induced_valuation_check(&model.structure, &env, &formulas, &terms);
            let text = report.to_string();
            Ok(if report.passed() { Outcome::ok(text) } else { Outcome::negative(text) })
        }
    }
}

/// One formula per line, or `term T` for an instantiation term.
fn parse_samples(text: &str, sig: &Signature) -> Result<(Vec<Formula>, Vec<Term>), String> {
    let mut formulas = Vec::new();
    let mut terms = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut err = String::new();
        if let Some(t) = line.strip_prefix("term ") {
            match parse_term(t, sig) {
                Ok(t) => terms.push(t),
                Err(e) => write!(err, "samples line {}: {e}", k + 1).unwrap(),
            }
        } else {
            match parse_formula(line, sig) {
                Ok(f) => formulas.push(f),
                Err(e) => write!(err, "samples line {}: {e}", k + 1).unwrap(),
            }
        }
        if !err.is_empty() {
            return Err(err);
        }
    }
    Ok((formulas, terms))
}
