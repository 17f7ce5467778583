//! Expectation files and the corpus runner behind `minic check`.
//!
//! An `.expect` file is line oriented:
//!
//! ```text
//! outcome: exit 0            (or: outcome: abort OutOfBounds)
//! errno: 22                  (optional; EINVAL is accepted too)
//! guest-abort: yes           (optional; the program itself called abort())
//! stdin: "12\n"              (optional; JSON string or fenced block)
//! stdout:                    (JSON string or fenced block)
//! ~~~
//! hello
//! ~~~
//! ```
//!
//! A fenced block (`~~~` or three backticks) holds its lines, each followed
//! by a newline.

use std::fmt;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::diag::DiagnosticKind;
use crate::interp::{run_source, ExecConfig, ExecOutcome, Limits, Termination};

const FENCES: [&str; 2] = ["~~~", "```"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpectedOutcome {
    Exit(i32),
    Abort(DiagnosticKind),
}

impl fmt::Display for ExpectedOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpectedOutcome::Exit(s) => write!(f, "exit {s}"),
            ExpectedOutcome::Abort(k) => write!(f, "abort {k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub outcome: ExpectedOutcome,
    pub stdout: Option<String>,
    pub errno: Option<i64>,
    pub guest_abort: Option<bool>,
    pub stdin: Option<Vec<u8>>,
}

fn parse_errno(v: &str) -> Result<i64, String> {
    match v {
        "EINVAL" => Ok(22),
        "ENOMEM" => Ok(12),
        "0" | "none" => Ok(0),
        n => n.parse().map_err(|_| format!("bad errno value `{n}`")),
    }
}

impl Expectation {
    pub fn parse(text: &str) -> Result<Expectation, String> {
        let mut outcome = None;
        let (mut stdout, mut errno, mut guest_abort, mut stdin) = (None, None, None, None);
        let mut lines = text.lines().enumerate();
        while let Some((no, line)) = lines.next() {
            let line = line.trim_end();
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once(':') else {
                return Err(format!("line {}: expected `key: value`", no + 1));
            };
            let value = value.trim();
            let mut text_value = |value: &str| -> Result<String, String> {
                if value.is_empty() {
                    let Some((_, open)) = lines.next() else {
                        return Err(format!("line {}: missing fenced block", no + 1));
                    };
                    let fence = open.trim();
                    if !FENCES.contains(&fence) {
                        return Err(format!("line {}: expected a fence line", no + 2));
                    }
                    let mut body = String::new();
                    for (_, l) in lines.by_ref() {
                        if l.trim_end() == fence {
                            return Ok(body);
                        }
                        body.push_str(l);
                        body.push('\n');
                    }
                    Err(format!("line {}: unterminated fenced block", no + 1))
                } else {
                    serde_json::from_str::<String>(value)
                        .map_err(|e| format!("line {}: {e}", no + 1))
                }
            };
            match key.trim() {
                "outcome" => {
                    let mut parts = value.split_whitespace();
                    outcome = Some(match (parts.next(), parts.next(), parts.next()) {
                        (Some("exit"), Some(n), None) => ExpectedOutcome::Exit(
                            n.parse().map_err(|_| format!("bad exit status `{n}`"))?,
                        ),
                        (Some("abort"), Some(k), None) => ExpectedOutcome::Abort(k.parse()?),
                        _ => return Err(format!("line {}: bad outcome `{value}`", no + 1)),
                    });
                }
                "stdout" => stdout = Some(text_value(value)?),
                "stdin" => stdin = Some(text_value(value)?.into_bytes()),
                "errno" => errno = Some(parse_errno(value)?),
                "guest-abort" => {
                    guest_abort = Some(match value {
                        "yes" | "true" => true,
                        "no" | "false" => false,
                        v => return Err(format!("bad guest-abort value `{v}`")),
                    })
                }
                other => return Err(format!("line {}: unknown key `{other}`", no + 1)),
            }
        }
        Ok(Expectation {
            outcome: outcome.ok_or("missing `outcome:` line")?,
            stdout,
            errno,
            guest_abort,
            stdin,
        })
    }

    /// Compares a run against this expectation; the error lists every
    /// mismatch.
    pub fn check(&self, out: &ExecOutcome) -> Result<(), String> {
        let mut problems = Vec::new();
        let actual = match &out.termination {
            Termination::Exit(s) => ExpectedOutcome::Exit(*s),
            Termination::Aborted(d) => ExpectedOutcome::Abort(d.kind),
        };
        if actual != self.outcome {
            let detail = out
                .diagnostic()
                .map(|d| format!(" ({d})"))
                .unwrap_or_default();
            problems.push(format!(
                "outcome: expected {}, got {actual}{detail}",
                self.outcome
            ));
        }
        if let Some(want) = &self.stdout {
            let got = out.stdout_text();
            if &got != want {
                problems.push(format!("stdout: expected {want:?}, got {got:?}"));
            }
        }
        if let Some(e) = self.errno {
            if out.errno != e {
                problems.push(format!("errno: expected {e}, got {}", out.errno));
            }
        }
        if let Some(g) = self.guest_abort {
            if out.note.is_some() != g {
                problems.push(format!(
                    "guest-abort: expected {g}, got {}",
                    out.note.is_some()
                ));
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(problems.join("; "))
        }
    }
}

#[derive(Clone, Debug)]
pub struct CaseResult {
    pub name: String,
    pub passed: bool,
    pub message: String,
}

/// Runs one `.c` file against its sibling `.expect` file.
pub fn run_case(path: &Path, limits: &Limits) -> CaseResult {
    let name = path.file_name().map_or_else(
        || path.display().to_string(),
        |n| n.to_string_lossy().into_owned(),
    );
    let fail = |message: String| CaseResult {
        name: name.clone(),
        passed: false,
        message,
    };
    let source = match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => return fail(format!("cannot read source: {e}")),
    };
    let exp_path = path.with_extension("expect");
    let exp = match std::fs::read_to_string(&exp_path) {
        Ok(t) => match Expectation::parse(&t) {
            Ok(e) => e,
            Err(e) => return fail(format!("bad expectation file: {e}")),
        },
        Err(_) => return fail(format!("missing expectation file {}", exp_path.display())),
    };
    let config = ExecConfig {
        argv: vec![name.clone()],
        stdin: exp.stdin.clone().unwrap_or_default(),
        limits: limits.clone(),
    };
    let out = run_source(&source, &name, &config);
    match exp.check(&out) {
        Ok(()) => CaseResult {
            name,
            passed: true,
            message: String::new(),
        },
        Err(m) => fail(m),
    }
}

/// The `.c` files of a directory, sorted by name.
pub fn corpus_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "c"))
        .collect();
    files.sort();
    Ok(files)
}

/// Runs every case of a directory in parallel; results keep file order.
pub fn check_dir(dir: &Path, limits: &Limits) -> std::io::Result<Vec<CaseResult>> {
    let files = corpus_files(dir)?;
    Ok(files.par_iter().map(|p| run_case(p, limits)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fenced_and_inline_text() {
        let e = Expectation::parse(
            "outcome: exit 0\nerrno: EINVAL\nstdin: \"12\\n\"\nstdout:\n~~~\nhi\n~~~\n",
        )
        .unwrap();
        assert_eq!(e.outcome, ExpectedOutcome::Exit(0));
        assert_eq!(e.errno, Some(22));
        assert_eq!(e.stdin.as_deref(), Some(&b"12\n"[..]));
        assert_eq!(e.stdout.as_deref(), Some("hi\n"));
    }

    #[test]
    fn parses_abort_kinds() {
        let e = Expectation::parse("outcome: abort UseAfterFree").unwrap();
        assert_eq!(
            e.outcome,
            ExpectedOutcome::Abort(DiagnosticKind::UseAfterFree)
        );
        assert!(Expectation::parse("outcome: abort Nonsense").is_err());
        assert!(Expectation::parse("stdout: \"x\"").is_err());
    }
}
