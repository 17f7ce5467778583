//! A batch interpreter for MiniC, a C subset in which every object carries
//! its own metadata.
//!
//! Programs are checked by [`frontend::compile`] and run by
//! [`interp::run_program`]. The runtime answers the introspection queries
//! (`_size_right`, `location`, `try_cast`, the vararg accessors) that the
//! MiniC prelude in [`stdlib`] uses to stay robust against bad arguments.

pub mod diag;
pub mod frontend;
pub mod harness;
pub mod interp;
pub mod introspection;
pub mod runtime;
pub mod stdlib;
pub mod types;

pub use diag::{Diagnostic, DiagnosticKind, SourceSpan, Span};
pub use frontend::{compile, parse};
pub use interp::{run_program, run_source, ExecConfig, ExecOutcome, Limits, Termination};
pub use runtime::{GuestPointer, LocationKind, Value};
pub use types::{GuestType, TypeExpr, TypeKind};
