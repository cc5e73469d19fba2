//! The `.ct` task language: lexer, parser, canonical printer, typechecker
//! and evaluator.
//!
//! A file is a flat list of declarations. Names are resolved in two passes,
//! so declarations may appear in any order. Element labels live in their own
//! namespace; every other declared name shares one.

pub mod ast;
pub mod check;
pub mod eval;
pub mod lexer;
pub mod parser;
pub mod print;
pub mod span;

pub use check::{typecheck, Query, TaskDef, Typed, TypedNode, Workspace};
pub use eval::{evaluate, run_queries, task_named, QueryOutcome};
pub use parser::{parse, parse_term};
pub use span::{SourceSpan, Spanned};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{message}")]
    Lex { message: String, span: SourceSpan },
    #[error("expected {}, found {found}", expected.join(" or "))]
    Parse {
        expected: Vec<String>,
        found: String,
        span: SourceSpan,
    },
    #[error("unknown {expected} `{name}`")]
    UnknownIdentifier {
        name: String,
        expected: &'static str,
        span: SourceSpan,
    },
    #[error("`{name}` is a {found}, expected a {expected}")]
    WrongKind {
        name: String,
        expected: &'static str,
        found: &'static str,
        span: SourceSpan,
    },
    #[error("`{name}` is already declared at {previous}")]
    Duplicate {
        name: String,
        previous: SourceSpan,
        span: SourceSpan,
    },
    #[error("`{name}` depends on itself")]
    Cycle { name: String, span: SourceSpan },
    #[error("boundary mismatch: {left} vs {right}")]
    BoundaryMismatch {
        left: String,
        right: String,
        span: SourceSpan,
    },
    #[error("antichain `{name}` is not an antichain: {nested} is nested in {within}")]
    NonAntichainDeclaration {
        name: String,
        nested: String,
        within: String,
        span: SourceSpan,
    },
    /// A failure reported by the core library while building a value.
    #[error("{message}")]
    Semantic { message: String, span: SourceSpan },
}

impl DslError {
    pub fn span(&self) -> &SourceSpan {
        match self {
            DslError::Lex { span, .. }
            | DslError::Parse { span, .. }
            | DslError::UnknownIdentifier { span, .. }
            | DslError::WrongKind { span, .. }
            | DslError::Duplicate { span, .. }
            | DslError::Cycle { span, .. }
            | DslError::BoundaryMismatch { span, .. }
            | DslError::NonAntichainDeclaration { span, .. }
            | DslError::Semantic { span, .. } => span,
        }
    }

    /// Short machine-readable name of the error class.
    pub fn code(&self) -> &'static str {
        match self {
            DslError::Lex { .. } => "LexError",
            DslError::Parse { .. } => "ParseError",
            DslError::UnknownIdentifier { .. } => "UnknownIdentifier",
            DslError::WrongKind { .. } => "WrongKind",
            DslError::Duplicate { .. } => "DuplicateDeclaration",
            DslError::Cycle { .. } => "CyclicDeclaration",
            DslError::BoundaryMismatch { .. } => "BoundaryMismatch",
            DslError::NonAntichainDeclaration { .. } => "NonAntichainDeclaration",
            DslError::Semantic { .. } => "SemanticError",
        }
    }

    pub(crate) fn from_core(e: taskrel_core::Error, span: &SourceSpan) -> DslError {
        match e {
            taskrel_core::Error::BoundaryMismatch { left, right } => DslError::BoundaryMismatch {
                left,
                right,
                span: span.clone(),
            },
            other => DslError::Semantic {
                message: other.to_string(),
                span: span.clone(),
            },
        }
    }
}

/// Parses and typechecks a source file.
pub fn load(file: &str, source: &str) -> Result<Workspace, Vec<DslError>> {
    let module = parse(file, source).map_err(|e| vec![e])?;
    typecheck(file, module)
}
