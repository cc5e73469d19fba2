//! JSON shapes of command output. Key order follows field order, so equal
//! values always serialise to identical bytes.

use serde::Serialize;
use serde_json::Value;

use taskrel_core::coarse::CoarseTask;
use taskrel_core::lawcheck::{Counterexample, LawReport};
use taskrel_core::relcore::Task;
use taskrel_core::substrate::{
    ConstructorCandidate, PossibilityCounterexample, PossibilityVerdict, SearchReport,
};

use crate::dsl::{DslError, SourceSpan};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: String,
    pub message: String,
    /// Absent for problems with no source location, such as a bad flag.
    pub span: Option<SourceSpan>,
}

impl Diagnostic {
    pub fn error(code: &str, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            code: code.into(),
            message: message.into(),
            span: None,
        }
    }
}

impl From<&DslError> for Diagnostic {
    fn from(e: &DslError) -> Self {
        Diagnostic {
            severity: Severity::Error,
            code: e.code().into(),
            message: e.to_string(),
            span: Some(e.span().clone()),
        }
    }
}

impl From<&taskrel_core::Error> for Diagnostic {
    fn from(e: &taskrel_core::Error) -> Self {
        use taskrel_core::Error as E;
        let code = match e {
            E::BoundaryMismatch { .. } => "BoundaryMismatch",
            E::SplitMismatch { .. } => "SplitMismatch",
            E::CarrierMismatch { .. } => "CarrierMismatch",
            E::BudgetExceeded { .. } => "BudgetExceeded",
            E::InvalidBudget(_) => "InvalidBudget",
            E::InvalidAtom(_) => "InvalidAtom",
            E::UnknownElement { .. } => "UnknownElement",
            E::NotAntichain { .. } => "NotAntichain",
            E::NotAFunction { .. } => "NotAFunction",
            E::UnknownSubstrate(_) => "UnknownSubstrate",
            E::Inconsistent(_) => "Inconsistent",
        };
        Diagnostic::error(code, e.to_string())
    }
}

/// The single JSON document every command prints.
#[derive(Debug, Clone, Serialize)]
pub struct CommandOutcome {
    pub command: String,
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<Diagnostic>,
}

impl CommandOutcome {
    pub fn new(command: &str, status: Status, payload: impl Serialize) -> Self {
        CommandOutcome {
            command: command.into(),
            status,
            payload: serde_json::to_value(payload).expect("payloads are plain data"),
            diagnostics: Vec::new(),
        }
    }

    pub fn error(command: &str, diagnostics: Vec<Diagnostic>) -> Self {
        CommandOutcome {
            command: command.into(),
            status: Status::Error,
            payload: Value::Null,
            diagnostics,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("outcomes are plain data")
    }
}

/// A relation as its boundary and rendered maplets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TaskJson {
    pub dom: String,
    pub cod: String,
    pub maplets: Vec<[String; 2]>,
}

impl From<&Task> for TaskJson {
    fn from(t: &Task) -> Self {
        TaskJson {
            dom: t.dom().to_string(),
            cod: t.cod().to_string(),
            maplets: t
                .pairs()
                .map(|(x, y)| [t.dom().render_elem(x), t.cod().render_elem(y)])
                .collect(),
        }
    }
}

/// A named relation with its canonical declaration text.
#[derive(Debug, Clone, Serialize)]
pub struct NamedTaskJson {
    pub name: String,
    #[serde(flatten)]
    pub task: TaskJson,
    pub text: String,
}

impl NamedTaskJson {
    pub fn new(name: &str, t: &Task) -> Self {
        NamedTaskJson {
            name: name.into(),
            task: t.into(),
            text: t.to_text(name),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleJson {
    pub objects: Vec<String>,
    pub inputs: Vec<TaskJson>,
    pub lhs: TaskJson,
    pub rhs: TaskJson,
}

impl From<&Counterexample> for CounterexampleJson {
    fn from(c: &Counterexample) -> Self {
        CounterexampleJson {
            objects: c.objects.iter().map(|o| o.to_string()).collect(),
            inputs: c.inputs.iter().map(TaskJson::from).collect(),
            lhs: (&c.lhs).into(),
            rhs: (&c.rhs).into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LawReportJson {
    pub law: String,
    pub instances: u64,
    pub passed: bool,
    pub counterexample: Option<CounterexampleJson>,
}

impl From<&LawReport> for LawReportJson {
    fn from(r: &LawReport) -> Self {
        LawReportJson {
            law: r.law.clone(),
            instances: r.instances,
            passed: r.passed(),
            counterexample: r.counterexample.as_ref().map(CounterexampleJson::from),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CandidateJson {
    pub constructor: String,
    pub states: String,
    pub process: String,
    pub input: String,
    pub output: String,
}

impl From<&ConstructorCandidate> for CandidateJson {
    fn from(c: &ConstructorCandidate) -> Self {
        CandidateJson {
            constructor: c.constructor().to_string(),
            states: c.states().render(),
            process: c.process().name(),
            input: c.input().to_string(),
            output: c.output().to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PossibilityCounterexampleJson {
    /// A maplet of the task the candidate never performs.
    Unproduced { input: String, output: String },
    /// A maplet the candidate performs that the task lacks.
    Unwanted { input: String, output: String },
    /// A constructor state in `P` that leaves `P`.
    Degraded {
        input: String,
        before: String,
        after: String,
    },
}

impl PossibilityCounterexampleJson {
    pub fn new(c: &PossibilityCounterexample, cand: &ConstructorCandidate) -> Self {
        let (h, k, s) = (
            cand.input().states(),
            cand.output().states(),
            cand.constructor().states(),
        );
        match *c {
            PossibilityCounterexample::Unproduced { input, output } => {
                PossibilityCounterexampleJson::Unproduced {
                    input: h.render_elem(input),
                    output: k.render_elem(output),
                }
            }
            PossibilityCounterexample::Unwanted { input, output } => {
                PossibilityCounterexampleJson::Unwanted {
                    input: h.render_elem(input),
                    output: k.render_elem(output),
                }
            }
            PossibilityCounterexample::Degraded {
                input,
                before,
                after,
            } => PossibilityCounterexampleJson::Degraded {
                input: h.render_elem(input),
                before: s.render_elem(before),
                after: s.render_elem(after),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictJson {
    pub task_inducing: bool,
    pub condition1: bool,
    pub condition2: bool,
    pub overall: bool,
    pub counterexample: Option<PossibilityCounterexampleJson>,
}

impl VerdictJson {
    pub fn new(v: &PossibilityVerdict, cand: &ConstructorCandidate) -> Self {
        VerdictJson {
            task_inducing: v.task_inducing,
            condition1: v.condition1,
            condition2: v.condition2,
            overall: v.overall,
            counterexample: v
                .counterexample
                .as_ref()
                .map(|c| PossibilityCounterexampleJson::new(c, cand)),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundsJson {
    pub max_factors: usize,
    pub max_depth: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchJson {
    pub task: String,
    pub found: bool,
    pub candidate: Option<CandidateJson>,
    pub verdict: Option<VerdictJson>,
    pub constructors_tried: usize,
    pub candidates_checked: u64,
    pub bounds: BoundsJson,
    /// The bounds searched in full without success; null when found.
    pub exhausted_bounds: Option<BoundsJson>,
}

impl SearchJson {
    pub fn new(task: &str, report: &SearchReport, verdict: Option<&PossibilityVerdict>) -> Self {
        let bounds = BoundsJson {
            max_factors: report.bounds.max_factors,
            max_depth: report.bounds.max_depth,
        };
        let found = report.found.as_ref();
        SearchJson {
            task: task.into(),
            found: found.is_some(),
            candidate: found.map(CandidateJson::from),
            verdict: found.zip(verdict).map(|(c, v)| VerdictJson::new(v, c)),
            constructors_tried: report.constructors_tried,
            candidates_checked: report.candidates_checked,
            bounds,
            exhausted_bounds: found.is_none().then_some(bounds),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CoarseJson {
    pub task: String,
    pub dom: String,
    pub cod: String,
    pub maplets: Vec<[String; 2]>,
}

impl CoarseJson {
    pub fn new(task: &str, c: &CoarseTask) -> Self {
        CoarseJson {
            task: task.into(),
            dom: c.dom().to_string(),
            cod: c.cod().to_string(),
            maplets: c
                .rendered_pairs()
                .into_iter()
                .map(|(s, t)| [s, t])
                .collect(),
        }
    }
}
