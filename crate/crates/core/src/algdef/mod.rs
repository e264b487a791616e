//! Text format for Hopf algebra presentations: parsing, serialization and
//! evaluation into a normal-ordering engine.

mod ast;
mod bundled;
mod eval;
mod lexer;
mod parser;
mod presentation;
mod restrict;

use thiserror::Error;

pub use ast::{Expr, Span};
pub use bundled::{bundled_names, bundled_source, load_bundled, PI13, PI23, POINCARE_GENERATORS, SPLUS};
pub(crate) use eval::parse_expression;
pub use eval::{Instance, StructureMap, Value};
pub use presentation::{BracketDef, Definition, HopfPresentation, Identification, RawDefinition};
pub use restrict::{project, restrict, ClosureFailure, ClosureWitness, RestrictError, WitnessSite};

use crate::engine::EngineError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("undeclared symbol '{0}'")]
    UndeclaredSymbol(String),
    #[error("nonlinear function argument: {0}")]
    NonlinearArgument(String),
    #[error("duplicate bracket [{0}, {1}]")]
    DuplicateBracket(String, String),
    #[error("duplicate definition of '{0}'")]
    DuplicateDefinition(String),
    #[error("{section} has no entry for '{generator}'")]
    MissingDefinition { section: String, generator: String },
    #[error("evaluation failed: {0}")]
    Eval(String),
    #[error("unknown presentation '{0}'")]
    UnknownPresentation(String),
}

/// A failure located in a definition file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {kind}")]
pub struct AlgdefError {
    pub kind: ErrorKind,
    pub span: Span,
}

impl AlgdefError {
    pub fn new(kind: ErrorKind, span: Span) -> Self {
        Self { kind, span }
    }

    pub(crate) fn eval(msg: impl Into<String>, span: Span) -> Self {
        Self::new(ErrorKind::Eval(msg.into()), span)
    }

    pub(crate) fn engine(e: EngineError, span: Span) -> Self {
        Self::eval(e.to_string(), span)
    }
}
