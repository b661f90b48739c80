//! The `.frob` spec format: declarations of matrices, algebras, functors,
//! dual situations, bases and transformations, followed by directives that
//! run checks and build derived objects.
//!
//! ```text
//! frobalg R = zmod(2)
//! functor F = tensor_left(R)
//! dual D = cupcap(2)
//! check frobenius F grid 1..3
//! transport D via F as FD
//! check triangles FD
//! ```
//!
//! [`parse_spec`] resolves every name and builds every declared value, so
//! shape and type problems surface with a position before anything runs.
//! Generated fixtures (`zmod`, `cupcap`, `regular`, …) are checked against
//! their own axioms when bound. [`run_checks`] then executes the directives
//! in order.

mod ast;
mod bind;
mod lexer;
mod parser;
mod run;

use std::collections::BTreeMap;
use std::fmt;

pub use ast::{matrix_literal, Arg, ArgValue, Call, Grid, Ident, ObjRef, Options, Override, Pos, Sort, Statement};
pub use bind::{Ty, Value};
pub use parser::parse_statements;
pub use run::{run_checks, RunOptions};

/// A diagnostic tied to a position in the spec text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl SpecError {
    pub(crate) fn at(pos: Pos, message: impl Into<String>) -> Self {
        Self {
            line: pos.line,
            col: pos.col,
            message: message.into(),
        }
    }
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for SpecError {}

/// A parsed and bound spec.
///
/// Equality compares the statements only; the bound values are a function
/// of them.
#[derive(Debug, Clone)]
pub struct SpecModel {
    pub statements: Vec<Statement>,
    /// Values of the declarations, by name.
    pub bindings: BTreeMap<String, Value>,
}

impl PartialEq for SpecModel {
    fn eq(&self, other: &Self) -> bool {
        self.statements == other.statements
    }
}

impl SpecModel {
    /// The directives, in execution order.
    pub fn directives(&self) -> impl Iterator<Item = &Statement> {
        self.statements.iter().filter(|s| s.is_directive())
    }
}

pub fn parse_spec(text: &str) -> Result<SpecModel, SpecError> {
    let statements = parse_statements(text)?;
    let bindings = bind::bind(&statements)?;
    Ok(SpecModel { statements, bindings })
}

/// Canonical text of a model, one statement per line. Parsing the output
/// gives back an equal model.
pub fn serialize_spec(model: &SpecModel) -> String {
    model.statements.iter().map(|s| format!("{s}\n")).collect()
}
