//! Structured diagnostics shared by every stage of the pipeline.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A 1-based source position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceSpan {
    pub file: String,
    pub line: u32,
    pub column: u32,
}

impl SourceSpan {
    pub fn new(file: impl Into<String>, line: u32, column: u32) -> Self {
        SourceSpan {
            file: file.into(),
            line: line.max(1),
            column: column.max(1),
        }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}

/// Compact position stored on AST nodes; resolved to a [`SourceSpan`]
/// through the program's file table when a diagnostic is produced.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub file: u16,
    pub line: u32,
    pub column: u32,
}

impl Span {
    pub fn new(file: u16, line: u32, column: u32) -> Self {
        Span { file, line, column }
    }

    pub fn resolve(self, files: &[String]) -> SourceSpan {
        let name = files
            .get(self.file as usize)
            .map(String::as_str)
            .unwrap_or("<unknown>");
        SourceSpan::new(name, self.line, self.column)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DiagnosticKind {
    ParseError,
    SemaError,
    OutOfBounds,
    UseAfterFree,
    InvalidFree,
    TypeViolation,
    VarargViolation,
    NullDereference,
    ArithmeticError,
    InternalLimit,
}

impl DiagnosticKind {
    pub const ALL: [DiagnosticKind; 10] = [
        DiagnosticKind::ParseError,
        DiagnosticKind::SemaError,
        DiagnosticKind::OutOfBounds,
        DiagnosticKind::UseAfterFree,
        DiagnosticKind::InvalidFree,
        DiagnosticKind::TypeViolation,
        DiagnosticKind::VarargViolation,
        DiagnosticKind::NullDereference,
        DiagnosticKind::ArithmeticError,
        DiagnosticKind::InternalLimit,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticKind::ParseError => "ParseError",
            DiagnosticKind::SemaError => "SemaError",
            DiagnosticKind::OutOfBounds => "OutOfBounds",
            DiagnosticKind::UseAfterFree => "UseAfterFree",
            DiagnosticKind::InvalidFree => "InvalidFree",
            DiagnosticKind::TypeViolation => "TypeViolation",
            DiagnosticKind::VarargViolation => "VarargViolation",
            DiagnosticKind::NullDereference => "NullDereference",
            DiagnosticKind::ArithmeticError => "ArithmeticError",
            DiagnosticKind::InternalLimit => "InternalLimit",
        }
    }

    /// Front-end kinds are reported before any guest code runs.
    pub fn is_frontend(self) -> bool {
        matches!(self, DiagnosticKind::ParseError | DiagnosticKind::SemaError)
    }
}

impl fmt::Display for DiagnosticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for DiagnosticKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DiagnosticKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown diagnostic kind `{s}`"))
    }
}

/// A violation or front-end error, with the guest call stack (innermost
/// function first) at the point it was raised.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[error("{kind} at {span}: {message}")]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub span: SourceSpan,
    pub message: String,
    pub stack: Vec<String>,
}

impl Diagnostic {
    pub fn new(kind: DiagnosticKind, span: SourceSpan, message: impl Into<String>) -> Self {
        Diagnostic {
            kind,
            span,
            message: message.into(),
            stack: Vec::new(),
        }
    }

    /// One-object JSON rendering used by `minic run --json`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": self.kind.as_str(),
            "file": self.span.file,
            "line": self.span.line,
            "column": self.span.column,
            "message": self.message,
            "stack": self.stack,
        })
    }

    /// Human-readable multi-line rendering.
    pub fn render(&self) -> String {
        let mut out = format!(
            "error[{}]: {}\n  --> {}\n",
            self.kind, self.message, self.span
        );
        if !self.stack.is_empty() {
            out.push_str("  stack: ");
            out.push_str(&self.stack.join(" <- "));
            out.push('\n');
        }
        out
    }
}
