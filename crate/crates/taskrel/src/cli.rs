//! The `taskrel` command line. Every command prints one JSON document on
//! stdout; `--pretty` adds tables on stderr. Exit codes: 0 pass, 1 semantic
//! negative, 2 usage, parse or internal error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use taskrel_core::coarse::{self, coarse_grain};
use taskrel_core::lawcheck::{self, EnumerationBudget, LawReport, Semantics, Standard};
use taskrel_core::relcore::{self, Task};
use taskrel_core::substrate::{
    is_possible_with, search_constructor, ConstructorCandidate, SearchBounds,
};

use crate::dsl::{self, task_named, DslError, QueryOutcome, Workspace};
use crate::json::*;
use crate::runner::{run_ordered, thread_count, Job};

#[derive(Debug, Parser)]
#[command(
    name = "taskrel",
    version,
    about = "Finite tasks as relations: evaluation, law checks, possibility and coarse-graining"
)]
pub struct Cli {
    /// Also print human-readable tables on stderr.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Emit JSON on stdout. Always on; accepted for explicitness.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Smc,
    Dagger,
    Copy,
}

/// Deliberate corruptions used to show the law suites catch bugs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mutation {
    /// Sequential composition loses its first maplet.
    SeqDropMaplet,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the tasks and queries of a file, or one named task.
    Eval {
        file: PathBuf,
        #[arg(long)]
        task: Option<String>,
    },
    /// Check the relational law suites exhaustively.
    CheckLaws {
        /// `default`, or comma-separated `atom-size=N`, `factors=N`, `relations=N`.
        #[arg(long, default_value = "default", value_parser = parse_budget)]
        budget: EnumerationBudget,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, value_enum, hide = true)]
        mutate: Option<Mutation>,
    },
    /// Decide whether a candidate constructor makes a task possible.
    VerifyPossible {
        file: PathBuf,
        #[arg(long)]
        task: String,
        /// A declared candidate, or `constructor C states P via F` inline.
        #[arg(long)]
        candidate: String,
    },
    /// Search the file's theory for a constructor within bounds.
    SearchConstructor {
        file: PathBuf,
        #[arg(long)]
        task: String,
        #[arg(long, default_value_t = SearchBounds::default().max_factors)]
        max_factors: usize,
        #[arg(long, default_value_t = SearchBounds::default().max_depth)]
        max_depth: usize,
    },
    /// Coarse-grain a task over antichains of its boundary.
    CoarseGrain {
        file: PathBuf,
        #[arg(long)]
        task: String,
        /// A declared antichain or a literal such as `{{a}, {b, c}}`.
        #[arg(long)]
        dom: String,
        #[arg(long)]
        cod: String,
    },
    /// Check the coarse-grained law suites exhaustively.
    CheckCoarseLaws {
        #[arg(long, default_value = "default", value_parser = parse_budget)]
        budget: EnumerationBudget,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::CheckLaws { .. } => "check-laws",
            Command::VerifyPossible { .. } => "verify-possible",
            Command::SearchConstructor { .. } => "search-constructor",
            Command::CoarseGrain { .. } => "coarse-grain",
            Command::CheckCoarseLaws { .. } => "check-coarse-laws",
        }
    }
}

pub fn parse_budget(text: &str) -> Result<EnumerationBudget, String> {
    let mut b = EnumerationBudget::default();
    if text.trim() == "default" {
        return Ok(b);
    }
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got {part:?}"))?;
        let n: u64 = value
            .trim()
            .parse()
            .map_err(|_| format!("{key}: not a non-negative integer: {value:?}"))?;
        match key.trim() {
            "atom-size" | "size" => b.max_atom_size = n as usize,
            "factors" => b.max_factors = n as usize,
            "relations" => b.max_relations = n,
            other => {
                return Err(format!(
                    "unknown budget key {other:?} (atom-size, factors, relations)"
                ))
            }
        }
    }
    Ok(b)
}

struct DropFirstMaplet;

impl Semantics for DropFirstMaplet {
    fn seq(&self, a: &Task, b: &Task) -> taskrel_core::Result<Task> {
        let t = relcore::seq_compose(a, b)?;
        let first = t.pairs().next();
        Ok(match first {
            Some((x, y)) => t.without(x, y),
            None => t,
        })
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// its JSON to `out`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = write!(err, "{e}");
            let msg = e.to_string();
            let first = msg
                .lines()
                .next()
                .unwrap_or_default()
                .trim_start_matches("error: ");
            let outcome =
                CommandOutcome::error("taskrel", vec![Diagnostic::error("UsageError", first)]);
            let _ = writeln!(out, "{}", outcome.to_json());
            return 2;
        }
    };
    let outcome = execute(&cli.command, cli.pretty, err);
    if cli.pretty {
        for d in &outcome.diagnostics {
            let at = d
                .span
                .as_ref()
                .map(|s| format!("{s}: "))
                .unwrap_or_default();
            let _ = writeln!(err, "{at}error[{}]: {}", d.code, d.message);
        }
    }
    let _ = writeln!(out, "{}", outcome.to_json());
    outcome.exit_code()
}

/// Early exits carry the finished error outcome.
type Step<T> = Result<T, Box<CommandOutcome>>;

fn core_error(command: &str, e: &taskrel_core::Error) -> CommandOutcome {
    CommandOutcome::error(command, vec![e.into()])
}

fn dsl_errors(command: &str, es: &[DslError]) -> CommandOutcome {
    CommandOutcome::error(command, es.iter().map(Diagnostic::from).collect())
}

fn load(command: &str, path: &Path) -> Step<(String, Workspace)> {
    let source = std::fs::read_to_string(path).map_err(|e| {
        CommandOutcome::error(
            command,
            vec![Diagnostic::error(
                "IoError",
                format!("{}: {e}", path.display()),
            )],
        )
    })?;
    let file = path.display().to_string();
    let ws = dsl::load(&file, &source).map_err(|es| dsl_errors(command, &es))?;
    Ok((source, ws))
}

fn task(command: &str, ws: &Workspace, name: &str) -> Step<Task> {
    match task_named(ws, name) {
        None => Err(CommandOutcome::error(
            command,
            vec![Diagnostic::error(
                "UnknownIdentifier",
                format!("no task `{name}` in {}", ws.file()),
            )],
        )
        .into()),
        Some(r) => r.map_err(|e| core_error(command, &e).into()),
    }
}

fn execute(cmd: &Command, pretty: bool, err: &mut dyn Write) -> CommandOutcome {
    let name = cmd.name();
    let result = match cmd {
        Command::Eval { file, task } => eval(name, file, task.as_deref(), pretty, err),
        Command::CheckLaws {
            budget,
            suite,
            mutate,
        } => check_laws(name, budget, *suite, *mutate, pretty, err),
        Command::VerifyPossible {
            file,
            task,
            candidate,
        } => verify(name, file, task, candidate, pretty, err),
        Command::SearchConstructor {
            file,
            task,
            max_factors,
            max_depth,
        } => search(
            name,
            file,
            task,
            SearchBounds {
                max_factors: *max_factors,
                max_depth: *max_depth,
            },
            pretty,
            err,
        ),
        Command::CoarseGrain {
            file,
            task,
            dom,
            cod,
        } => coarse_cmd(name, file, task, dom, cod, pretty, err),
        Command::CheckCoarseLaws { budget } => check_coarse(name, budget, pretty, err),
    };
    result.unwrap_or_else(|o| *o)
}

#[derive(Serialize)]
struct EvalPayload {
    tasks: Vec<NamedTaskJson>,
    queries: Vec<serde_json::Value>,
}

#[derive(Serialize)]
struct PossiblePayload {
    task: String,
    candidate: String,
    constructor: CandidateJson,
    #[serde(flatten)]
    verdict: VerdictJson,
}

fn query_json(q: &QueryOutcome) -> serde_json::Value {
    match q {
        QueryOutcome::Possible {
            task,
            candidate_name,
            candidate,
            verdict,
            ..
        } => {
            let mut v = serde_json::to_value(PossiblePayload {
                task: task.clone(),
                candidate: candidate_name.clone(),
                constructor: candidate.into(),
                verdict: VerdictJson::new(verdict, candidate),
            })
            .expect("plain data");
            v.as_object_mut()
                .expect("object")
                .insert("query".into(), "possible".into());
            v
        }
        QueryOutcome::Coarse { task, result, .. } => {
            let mut v = serde_json::to_value(CoarseJson::new(task, result)).expect("plain data");
            v.as_object_mut()
                .expect("object")
                .insert("query".into(), "coarse".into());
            v
        }
    }
}

fn eval(
    name: &str,
    file: &Path,
    only: Option<&str>,
    pretty: bool,
    err: &mut dyn Write,
) -> Step<CommandOutcome> {
    let (_, ws) = load(name, file)?;
    let names: Vec<String> = match only {
        Some(t) => vec![t.to_string()],
        None => ws.task_names().into_iter().map(String::from).collect(),
    };
    let queries = if only.is_some() {
        Vec::new()
    } else {
        dsl::run_queries(&ws).map_err(|e| core_error(name, &e))?
    };
    if names.is_empty() && queries.is_empty() {
        return Err(CommandOutcome::error(
            name,
            vec![Diagnostic::error(
                "NothingToEvaluate",
                format!("{} declares no tasks or queries", file.display()),
            )],
        )
        .into());
    }
    let mut tasks = Vec::with_capacity(names.len());
    for n in &names {
        let t = task(name, &ws, n)?;
        if pretty {
            let _ = writeln!(err, "{}", t.to_text(n));
        }
        tasks.push(NamedTaskJson::new(n, &t));
    }
    let mut status = Status::Pass;
    for q in &queries {
        match q {
            QueryOutcome::Possible {
                task,
                candidate_name,
                verdict,
                ..
            } => {
                if !verdict.overall {
                    status = Status::Fail;
                }
                if pretty {
                    let _ = writeln!(
                        err,
                        "check possible {task} with {candidate_name}: {}",
                        verdict.overall
                    );
                }
            }
            QueryOutcome::Coarse {
                task,
                dom,
                cod,
                result,
                ..
            } => {
                if pretty {
                    let _ = writeln!(err, "coarse {task} via {dom}, {cod} = {result}");
                }
            }
        }
    }
    let queries = queries.iter().map(query_json).collect();
    Ok(CommandOutcome::new(
        name,
        status,
        EvalPayload { tasks, queries },
    ))
}

fn threads(name: &str) -> Step<usize> {
    thread_count().map_err(|m| {
        CommandOutcome::error(name, vec![Diagnostic::error("InvalidEnvironment", m)]).into()
    })
}

fn report_outcome(
    name: &str,
    reports: Vec<taskrel_core::Result<Vec<LawReport>>>,
    pretty: bool,
    err: &mut dyn Write,
) -> Step<CommandOutcome> {
    let mut all = Vec::new();
    for r in reports {
        all.extend(r.map_err(|e| core_error(name, &e))?);
    }
    if pretty {
        let width = all.iter().map(|r| r.law.len()).max().unwrap_or(0);
        let _ = writeln!(err, "{:<width$}  {:>12}  result", "law", "instances");
        for r in &all {
            let verdict = if r.passed() { "pass" } else { "FAIL" };
            let _ = writeln!(err, "{:<width$}  {:>12}  {verdict}", r.law, r.instances);
        }
    }
    let status = if all.iter().all(LawReport::passed) {
        Status::Pass
    } else {
        Status::Fail
    };
    let json: Vec<LawReportJson> = all.iter().map(LawReportJson::from).collect();
    Ok(CommandOutcome::new(name, status, json))
}

fn check_laws(
    name: &str,
    budget: &EnumerationBudget,
    suite: Suite,
    mutate: Option<Mutation>,
    pretty: bool,
    err: &mut dyn Write,
) -> Step<CommandOutcome> {
    budget.validate().map_err(|e| core_error(name, &e))?;
    let laws = match suite {
        Suite::All => lawcheck::all_relational_laws(),
        Suite::Smc => lawcheck::smc_laws(),
        Suite::Dagger => lawcheck::dagger_laws(),
        Suite::Copy => lawcheck::copy_laws(),
    };
    let sem: &(dyn Semantics + Sync) = match mutate {
        None => &Standard,
        Some(Mutation::SeqDropMaplet) => &DropFirstMaplet,
    };
    let jobs: Vec<Job<'_, taskrel_core::Result<Vec<LawReport>>>> = laws
        .into_iter()
        .map(|law| {
            Box::new(move || lawcheck::run_law(&law, sem, budget).map(|r| vec![r])) as Job<'_, _>
        })
        .collect();
    let reports = run_ordered(jobs, threads(name)?);
    report_outcome(name, reports, pretty, err)
}

type CoarseSuite = fn(&EnumerationBudget) -> taskrel_core::Result<LawReport>;

fn check_coarse(
    name: &str,
    budget: &EnumerationBudget,
    pretty: bool,
    err: &mut dyn Write,
) -> Step<CommandOutcome> {
    budget.validate().map_err(|e| core_error(name, &e))?;
    if budget.max_atom_size > coarse::MAX_COARSE_SET {
        let e = taskrel_core::Error::BudgetExceeded {
            what: "coarse suites set size".into(),
            required: budget.max_atom_size as u128,
            limit: coarse::MAX_COARSE_SET as u128,
        };
        return Err(core_error(name, &e).into());
    }
    let suites: [CoarseSuite; 11] = [
        coarse::well_definedness,
        coarse::restriction_preserves_coarse,
        coarse::identity_antichain,
        coarse::swap_coherence,
        coarse::seq_containment,
        coarse::par_agreement,
        coarse::singleton_seq,
        coarse::singleton_par,
        coarse::singleton_structure,
        coarse::singleton_faithful,
        coarse::task_round_trip,
    ];
    let mut jobs: Vec<Job<'_, taskrel_core::Result<Vec<LawReport>>>> = suites
        .into_iter()
        .map(|f| Box::new(move || f(budget).map(|r| vec![r])) as Job<'_, _>)
        .collect();
    jobs.push(Box::new(move || coarse::lax_structure_check(budget)));
    let reports = run_ordered(jobs, threads(name)?);
    report_outcome(name, reports, pretty, err)
}

fn candidate(
    name: &str,
    file: &Path,
    source: &str,
    ws: &Workspace,
    arg: &str,
) -> Step<(String, ConstructorCandidate)> {
    if let Some(c) = ws.candidate(arg) {
        return Ok((arg.to_string(), c.clone()));
    }
    if !arg.trim_start().starts_with("constructor") {
        return Err(CommandOutcome::error(
            name,
            vec![Diagnostic::error(
                "UnknownIdentifier",
                format!("no candidate `{arg}` in {}", ws.file()),
            )],
        )
        .into());
    }
    // An inline candidate is checked against the file's declarations by
    // appending it as a declaration of its own.
    const SLOT: &str = "__argument";
    let extended = format!("{source}\ncandidate {SLOT} = {arg}\n");
    let ws =
        dsl::load(&file.display().to_string(), &extended).map_err(|es| dsl_errors(name, &es))?;
    Ok((
        arg.trim().to_string(),
        ws.candidate(SLOT).expect("declared above").clone(),
    ))
}

fn verify(
    name: &str,
    file: &Path,
    task_name: &str,
    cand_arg: &str,
    pretty: bool,
    err: &mut dyn Write,
) -> Step<CommandOutcome> {
    let (source, ws) = load(name, file)?;
    let a = task(name, &ws, task_name)?;
    let (cand_name, cand) = candidate(name, file, &source, &ws, cand_arg)?;
    let verdict = is_possible_with(&a, &cand).map_err(|e| core_error(name, &e))?;
    if pretty {
        let _ = writeln!(
            err,
            "task-inducing {}\ncondition 1   {}\ncondition 2   {}\npossible      {}",
            verdict.task_inducing, verdict.condition1, verdict.condition2, verdict.overall
        );
    }
    let status = if verdict.overall {
        Status::Pass
    } else {
        Status::Fail
    };
    let payload = PossiblePayload {
        task: task_name.to_string(),
        candidate: cand_name,
        constructor: (&cand).into(),
        verdict: VerdictJson::new(&verdict, &cand),
    };
    Ok(CommandOutcome::new(name, status, payload))
}

fn search(
    name: &str,
    file: &Path,
    task_name: &str,
    bounds: SearchBounds,
    pretty: bool,
    err: &mut dyn Write,
) -> Step<CommandOutcome> {
    let (_, ws) = load(name, file)?;
    let a = task(name, &ws, task_name)?;
    let report = search_constructor(&a, ws.theory(), bounds).map_err(|e| core_error(name, &e))?;
    let verdict = match &report.found {
        Some(c) => Some(is_possible_with(&a, c).map_err(|e| core_error(name, &e))?),
        None => None,
    };
    if pretty {
        match &report.found {
            Some(c) => {
                let _ = writeln!(
                    err,
                    "found: constructor {} states {} via {}",
                    c.constructor(),
                    c.states().render(),
                    c.process().name()
                );
            }
            None => {
                let _ = writeln!(
                    err,
                    "none within {} factors, depth {} ({} constructors, {} candidates)",
                    bounds.max_factors,
                    bounds.max_depth,
                    report.constructors_tried,
                    report.candidates_checked
                );
            }
        }
    }
    let status = if report.found.is_some() {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(CommandOutcome::new(
        name,
        status,
        SearchJson::new(task_name, &report, verdict.as_ref()),
    ))
}

fn coarse_cmd(
    name: &str,
    file: &Path,
    task_name: &str,
    dom: &str,
    cod: &str,
    pretty: bool,
    err: &mut dyn Write,
) -> Step<CommandOutcome> {
    let (_, ws) = load(name, file)?;
    let a = task(name, &ws, task_name)?;
    let xbar = ws
        .antichain_arg(dom, a.dom())
        .map_err(|e| dsl_errors(name, &[e]))?;
    let ybar = ws
        .antichain_arg(cod, a.cod())
        .map_err(|e| dsl_errors(name, &[e]))?;
    let c = coarse_grain(&a, &xbar, &ybar).map_err(|e| core_error(name, &e))?;
    if pretty {
        let _ = writeln!(err, "{c}");
    }
    Ok(CommandOutcome::new(
        name,
        Status::Pass,
        CoarseJson::new(task_name, &c),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_specs() {
        assert_eq!(
            parse_budget("default").unwrap(),
            EnumerationBudget::default()
        );
        let b = parse_budget("atom-size=1, factors=3,relations=64").unwrap();
        assert_eq!(
            (b.max_atom_size, b.max_factors, b.max_relations),
            (1, 3, 64)
        );
        assert!(parse_budget("atoms=2").is_err());
        assert!(parse_budget("factors").is_err());
        assert!(parse_budget("factors=-1").is_err());
    }

    #[test]
    fn mutant_drops_a_maplet() {
        let x = relcore::FinObject::atom(&relcore::Atom::numbered("X", 2));
        let id = relcore::identity(&x);
        assert_eq!(DropFirstMaplet.seq(&id, &id).unwrap().len(), 1);
    }
}
