//! Lexing, parsing, and semantic analysis of MiniC source.

pub mod ast;
pub mod hir;
mod lexer;
mod parser;
pub mod printer;
mod sema;

use crate::diag::{Diagnostic, DiagnosticKind, Span};
use crate::stdlib;

pub use parser::parse_source;
pub use sema::{common_type, const_eval, lower_type_operator};

/// File name under which the libc prelude is reported.
pub const PRELUDE_FILE: &str = "<prelude>";

/// A front-end error before its span is resolved against a file table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontError {
    pub kind: DiagnosticKind,
    pub span: Span,
    pub message: String,
}

impl FrontError {
    pub fn new(kind: DiagnosticKind, span: Span, message: impl Into<String>) -> Self {
        FrontError {
            kind,
            span,
            message: message.into(),
        }
    }

    pub fn into_diagnostic(self, files: &[String]) -> Diagnostic {
        Diagnostic::new(self.kind, self.span.resolve(files), self.message)
    }
}

/// Parses one user source file (reported as file 1).
pub fn parse(source: &str, file_name: &str) -> Result<ast::TranslationUnit, Diagnostic> {
    let files = vec![PRELUDE_FILE.to_string(), file_name.to_string()];
    parse_source(source, 1).map_err(|e| e.into_diagnostic(&files))
}

/// Parses and analyzes a user program together with the prelude.
pub fn compile(source: &str, file_name: &str) -> Result<hir::Program, Diagnostic> {
    let files = vec![PRELUDE_FILE.to_string(), file_name.to_string()];
    let resolve = |e: FrontError| e.into_diagnostic(&files);
    let prelude = parse_source(stdlib::PRELUDE_SOURCE, 0).map_err(resolve)?;
    let user = parse_source(source, 1).map_err(resolve)?;
    sema::Analyzer::new()
        .analyze(&[(&prelude, true), (&user, false)], files.clone())
        .map_err(resolve)
}
