use minic_core::{run_source, DiagnosticKind, ExecConfig, ExecOutcome, Limits, Termination};
use proptest::prelude::*;

fn run(src: &str) -> ExecOutcome {
    run_source(src, "t.c", &ExecConfig::default())
}

fn exit(src: &str) -> (i32, String) {
    let out = run(src);
    match &out.termination {
        Termination::Exit(s) => (*s, out.stdout_text()),
        Termination::Aborted(d) => panic!("aborted: {d}"),
    }
}

fn abort_kind(src: &str) -> DiagnosticKind {
    let out = run(src);
    let d = out
        .diagnostic()
        .unwrap_or_else(|| panic!("expected an abort, got {:?}", out.termination));
    assert_eq!(out.frames_left, 0, "frames left after abort");
    d.kind
}

#[test]
fn main_status_is_the_exit_status() {
    assert_eq!(exit("int main(void) { return 7; }").0, 7);
    assert_eq!(exit("#include <stdlib.h>\nint f(void) { exit(4); return 1; } int main(void) { f(); return 0; }").0, 4);
}

#[test]
fn main_receives_argv() {
    let src = r#"#include <stdio.h>
int main(int argc, char **argv) { printf("%d %s %s\n", argc, argv[0], argv[argc - 1]); return 0; }"#;
    let config = ExecConfig {
        argv: vec!["prog".into(), "one".into(), "two".into()],
        ..ExecConfig::default()
    };
    let out = run_source(src, "t.c", &config);
    assert_eq!(out.stdout_text(), "3 prog two\n");
}

#[test]
fn size_t_minus_one_is_size_max() {
    let src = r#"int main(void) {
  size_t n = -1;
  if (n != SIZE_MAX) return 1;
  if (!(n > 10)) return 2;
  int i = 5;
  if (!((i + 1) < n)) return 3;
  return 0;
}"#;
    assert_eq!(exit(src).0, 0);
}

#[test]
fn division_by_zero_is_an_arithmetic_error() {
    assert_eq!(
        abort_kind("int main(void) { int z = 0; return 1 / z; }"),
        DiagnosticKind::ArithmeticError
    );
    assert_eq!(
        abort_kind("int main(void) { int z = 0; return 1 % z; }"),
        DiagnosticKind::ArithmeticError
    );
}

#[test]
fn static_locals_persist_and_are_static() {
    let src = r#"#include <stdio.h>
int counter(void) { static int n; n++; return n * 10 + location(&n); }
int main(void) { counter(); counter(); printf("%d\n", counter()); return 0; }"#;
    assert_eq!(exit(src).1, "33\n");
}

#[test]
fn escaped_locals_become_invalid() {
    let src = r#"#include <stdio.h>
int *leak(void) { int c = 1; return &c; }
int main(void) { int *p = leak(); printf("%d %ld\n", location(p), size_right(p)); return 0; }"#;
    assert_eq!(exit(src).1, "0 -1\n");
    let deref = "int *leak(void) { int c = 1; return &c; } int main(void) { return *leak(); }";
    assert_eq!(abort_kind(deref), DiagnosticKind::UseAfterFree);
}

#[test]
fn block_locals_die_with_their_frame_only() {
    let src = r#"#include <stdio.h>
int main(void) {
  int *p = NULL;
  for (int i = 0; i < 3; i++) { int x = i; p = &x; }
  printf("%d\n", location(p) == AUTOMATIC);
  return 0;
}"#;
    assert_eq!(exit(src).1, "1\n");
}

#[test]
fn varargs_count_plus_fixed_is_the_argument_count() {
    let src = r#"#include <stdio.h>
int f(int a, int b, ...) { return count_varargs(); }
int main(void) { printf("%d %d %d\n", f(1, 2), f(1, 2, 3), f(1, 2, 3, 4.0, "x")); return 0; }"#;
    assert_eq!(exit(src).1, "0 1 3\n");
}

#[test]
fn va_end_resets_and_va_arg_checks() {
    let src = r#"#include <stdio.h>
#include <stdarg.h>
int twice_first(int n, ...) {
  va_list ap;
  va_start(ap, n);
  int a = va_arg(ap, int);
  va_end(ap);
  va_start(ap, n);
  int b = va_arg(ap, int);
  va_end(ap);
  return a + b;
}
int main(void) { printf("%d\n", twice_first(1, 21)); return 0; }"#;
    assert_eq!(exit(src).1, "42\n");
    let past_end = r#"#include <stdarg.h>
int f(int n, ...) { va_list ap; va_start(ap, n); int a = va_arg(ap, int); int b = va_arg(ap, int); va_end(ap); return a + b; }
int main(void) { return f(1, 2); }"#;
    assert_eq!(abort_kind(past_end), DiagnosticKind::VarargViolation);
    let wrong_type = r#"#include <stdarg.h>
int f(int n, ...) { va_list ap; va_start(ap, n); double d = va_arg(ap, double); va_end(ap); return d; }
int main(void) { return f(1, 2); }"#;
    assert_eq!(abort_kind(wrong_type), DiagnosticKind::VarargViolation);
}

#[test]
fn indirect_calls_check_the_callee() {
    let data = "int main(void) { int x = 3; int (*f)(int) = (int (*)(int)) &x; return f(1); }";
    assert_eq!(abort_kind(data), DiagnosticKind::TypeViolation);
    let null = "int main(void) { int (*f)(int) = NULL; return f(1); }";
    assert_eq!(abort_kind(null), DiagnosticKind::NullDereference);
    let ok =
        "int inc(int x) { return x + 1; } int main(void) { int (*f)(int) = inc; return f(41); }";
    assert_eq!(exit(ok).0, 42);
}

#[test]
fn runaway_programs_hit_the_limits() {
    let spin = "int main(void) { int x = 0; while (1) x++; return 0; }";
    let out = run_source(
        spin,
        "t.c",
        &ExecConfig {
            limits: Limits {
                max_steps: 10_000,
                ..Limits::default()
            },
            ..ExecConfig::default()
        },
    );
    assert_eq!(
        out.diagnostic().unwrap().kind,
        DiagnosticKind::InternalLimit
    );
    let deep = "int down(int n) { return down(n + 1) + 1; } int main(void) { return down(0); }";
    assert_eq!(abort_kind(deep), DiagnosticKind::InternalLimit);
}

#[test]
fn diagnostics_carry_position_and_stack() {
    let src = "int get(int *a, int i) {\n  return a[i];\n}\nint main(void) {\n  int a[3];\n  return get(a, 3);\n}\n";
    let out = run(src);
    let d = out.diagnostic().unwrap();
    assert_eq!(d.kind, DiagnosticKind::OutOfBounds);
    assert_eq!((d.span.file.as_str(), d.span.line), ("t.c", 2));
    assert_eq!(d.stack, vec!["get".to_string(), "main".to_string()]);
}

#[test]
fn runs_are_deterministic() {
    let src = r#"#include <stdio.h>
#include <stdlib.h>
int main(void) {
  char *p = malloc(8);
  for (int i = 0; i < 8; i++) p[i] = 'a' + i;
  printf("%s|%d\n", p, (int) strlen(p));
  free(p);
  return p[0];
}"#;
    let a = run(src);
    let b = run(src);
    assert_eq!(a.termination, b.termination);
    assert_eq!((a.stdout, a.steps, a.stats), (b.stdout, b.steps, b.stats));
}

fn c_op(op: u8) -> &'static str {
    ["+", "-", "*"][op as usize % 3]
}

fn host_op(op: u8, a: i32, b: i32) -> i32 {
    match op % 3 {
        0 => a.wrapping_add(b),
        1 => a.wrapping_sub(b),
        _ => a.wrapping_mul(b),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Signed int arithmetic wraps like two's complement on the host.
    #[test]
    fn int_arithmetic_wraps(cases in proptest::collection::vec((any::<i32>(), any::<i32>(), any::<u8>()), 1..20)) {
        let mut body = String::new();
        let mut want = String::new();
        for (a, b, op) in &cases {
            // Long literals keep INT_MIN expressible; the assignment narrows.
            body.push_str(&format!("  x = {a}L; y = {b}L; printf(\"%d\\n\", x {} y);\n", c_op(*op)));
            want.push_str(&format!("{}\n", host_op(*op, *a, *b)));
        }
        let src = format!("#include <stdio.h>\nint main(void) {{\n  int x; int y;\n{body}  return 0;\n}}\n");
        let out = run(&src);
        prop_assert_eq!(out.exit_status(), Some(0), "{:?}", out.diagnostic());
        prop_assert_eq!(out.stdout_text(), want);
    }

    #[test]
    fn long_and_unsigned_arithmetic_match_the_host(a in any::<i64>(), b in any::<i64>()) {
        let src = format!(
            "#include <stdio.h>\nint main(void) {{ long a = {a}L; long b = {b}L; size_t u = a; size_t v = b;\n  printf(\"%ld %ld %lu %d\\n\", a + b, a * b, u - v, u < v);\n  return 0; }}\n"
        );
        let out = run(&src);
        let want = format!(
            "{} {} {} {}\n",
            a.wrapping_add(b),
            a.wrapping_mul(b),
            (a as u64).wrapping_sub(b as u64),
            ((a as u64) < (b as u64)) as i32
        );
        prop_assert_eq!(out.stdout_text(), want, "{:?}", out.diagnostic());
    }
}
