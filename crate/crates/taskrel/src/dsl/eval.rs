use taskrel_core::coarse::{coarse_grain, CoarseTask};
use taskrel_core::relcore::{self, Task};
use taskrel_core::substrate::{is_possible_with, ConstructorCandidate, PossibilityVerdict};
use taskrel_core::Result;

use crate::dsl::check::{Query, TaskDef, Typed, TypedNode, Workspace};
use crate::dsl::span::SourceSpan;

/// Evaluates a typed term by structural recursion into relcore.
pub fn evaluate(t: &Typed, ws: &Workspace) -> Result<Task> {
    Ok(match &t.node {
        TypedNode::Ref(name) => {
            return task_named(ws, name).expect("typechecked reference");
        }
        TypedNode::Id(x) => relcore::identity(x),
        TypedNode::Swap(x, y) => relcore::swap(x, y),
        TypedNode::Copy(x) => relcore::copy(x),
        TypedNode::Discard(x) => relcore::discard(x),
        TypedNode::Match(x) => relcore::match_map(x),
        TypedNode::Unit(x) => relcore::transpose(&relcore::discard(x)),
        TypedNode::State(s) => s.as_state(),
        TypedNode::Test(s) => s.as_test(),
        TypedNode::Seq(a, b) => relcore::seq_compose(&evaluate(a, ws)?, &evaluate(b, ws)?)?,
        TypedNode::Par(a, b) => relcore::par_compose(&evaluate(a, ws)?, &evaluate(b, ws)?),
        TypedNode::Transpose(a) => relcore::transpose(&evaluate(a, ws)?),
    })
}

/// The value of a declared `rel` or `task`, or `None` if no such name.
pub fn task_named(ws: &Workspace, name: &str) -> Option<Result<Task>> {
    Some(match ws.task_def(name)? {
        TaskDef::Rel(t) => Ok(t.clone()),
        TaskDef::Term(t) => evaluate(t, ws),
    })
}

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum QueryOutcome {
    Possible {
        task: String,
        candidate_name: String,
        candidate: ConstructorCandidate,
        verdict: PossibilityVerdict,
        span: SourceSpan,
    },
    Coarse {
        task: String,
        dom: String,
        cod: String,
        result: CoarseTask,
        span: SourceSpan,
    },
}

/// Answers every `check possible` and `coarse` query, in source order.
pub fn run_queries(ws: &Workspace) -> Result<Vec<QueryOutcome>> {
    ws.queries()
        .iter()
        .map(|q| {
            Ok(match q {
                Query::Possible {
                    task,
                    candidate,
                    value,
                    span,
                } => {
                    let a = task_named(ws, task).expect("typechecked")?;
                    QueryOutcome::Possible {
                        task: task.clone(),
                        candidate_name: candidate.clone(),
                        candidate: value.clone(),
                        verdict: is_possible_with(&a, value)?,
                        span: span.clone(),
                    }
                }
                Query::Coarse {
                    task,
                    dom,
                    cod,
                    dom_name,
                    cod_name,
                    span,
                } => {
                    let a = task_named(ws, task).expect("typechecked")?;
                    QueryOutcome::Coarse {
                        task: task.clone(),
                        dom: dom_name.clone(),
                        cod: cod_name.clone(),
                        result: coarse_grain(&a, dom, cod)?,
                        span: span.clone(),
                    }
                }
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::load;

    fn eval(src: &str, name: &str) -> Task {
        let ws = load("t.ct", src).unwrap();
        task_named(&ws, name).unwrap().unwrap()
    }

    const X: &str = "set X = {a, b, c}\nset Y = {u, v}\n";

    #[test]
    fn copy_then_discard_is_identity() {
        let t = eval(&format!("{X}task T = copy(X) ; (id(X) * discard(X))"), "T");
        assert_eq!(t, relcore::identity(&t.dom().clone()));
    }

    #[test]
    fn swap_twice_is_identity() {
        let t = eval(&format!("{X}task T = swap(X, Y) ; swap(Y, X)"), "T");
        assert_eq!(t.dom().to_string(), "X * Y");
        assert_eq!(t, relcore::identity(t.dom()));
    }

    #[test]
    fn double_transpose() {
        let src = format!("{X}rel F : X -> Y = {{ a |-> u, c |-> u, c |-> v }}\ntask T = F^T^T");
        assert_eq!(eval(&src, "T"), eval(&src, "F"));
    }

    #[test]
    fn copy_then_match_is_identity() {
        let t = eval(&format!("{X}task T = copy(X) ; match(X)"), "T");
        assert_eq!(t, relcore::identity(t.dom()));
    }

    #[test]
    fn states_tests_and_units() {
        let src = format!(
            "{X}attr S on X = {{a, b}}\ntask P = state(S) ; test(S)\ntask U = unit(X) ; discard(X)"
        );
        let one = relcore::identity(&taskrel_core::relcore::FinObject::unit());
        assert_eq!(eval(&src, "P"), one);
        assert_eq!(eval(&src, "U"), one);
    }

    #[test]
    fn queries_answer_in_order() {
        let src = "set Bit = {0, 1}\nsubstrate bit states Bit\n\
                   process NOT : bit -> bit = { 0 |-> 1, 1 |-> 0 }\n\
                   rel Flip : Bit -> Bit = { 0 |-> 1, 1 |-> 0 }\n\
                   rel Keep : Bit -> Bit = { 0 |-> 0, 1 |-> 1 }\n\
                   antichain All on Bit = {{0, 1}}\n\
                   check possible Flip with constructor I states {*} via NOT\n\
                   check possible Keep with constructor I states {*} via NOT\n\
                   coarse Flip via All, All";
        let ws = load("t.ct", src).unwrap();
        let out = run_queries(&ws).unwrap();
        let overall: Vec<Option<bool>> = out
            .iter()
            .map(|o| match o {
                QueryOutcome::Possible { verdict, .. } => Some(verdict.overall),
                QueryOutcome::Coarse { .. } => None,
            })
            .collect();
        assert_eq!(overall, [Some(true), Some(false), None]);
        let QueryOutcome::Coarse { result, .. } = &out[2] else {
            panic!()
        };
        assert_eq!(result.len(), 1);
    }
}
