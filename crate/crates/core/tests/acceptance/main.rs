//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Expected values come from oracles computed here (sorted copies,
//! brute-force scans, a size table kept independent of the runtime's),
//! never from the interpreter under test.

mod gen;

use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use minic_core::diag::DiagnosticKind;
use minic_core::harness::{run_case, Expectation};
use minic_core::interp::{Interpreter, Stop};
use minic_core::introspection as intro;
use minic_core::runtime::{Frame, Runtime};
use minic_core::types::{TypeExpr, TypeKind};
use minic_core::{
    compile, run_source, ExecConfig, ExecOutcome, GuestPointer, GuestType, Limits, LocationKind,
    Termination, Value,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn read_corpus(name: &str) -> String {
    std::fs::read_to_string(corpus().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn run_with(src: &str, stdin: &[u8], limits: Limits) -> ExecOutcome {
    let config = ExecConfig {
        argv: vec!["t.c".into()],
        stdin: stdin.to_vec(),
        limits,
    };
    run_source(src, "t.c", &config)
}

fn run(src: &str, stdin: &[u8]) -> ExecOutcome {
    run_with(src, stdin, Limits::default())
}

fn describe(out: &ExecOutcome) -> String {
    match &out.termination {
        Termination::Exit(s) => format!("exit {s}, stdout {:?}", out.stdout_text()),
        Termination::Aborted(d) => format!("aborted: {d}"),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// Sizes as the guest sees them, kept apart from the runtime's own table.
fn oracle_size(t: &GuestType) -> u64 {
    match t {
        GuestType::Char => 1,
        GuestType::Int | GuestType::UInt => 4,
        GuestType::Long | GuestType::ULong | GuestType::Double | GuestType::Pointer(_) => 8,
        other => panic!("no oracle size for {other}"),
    }
}

fn bounds_example() -> Check {
    let src = read_corpus("bounds_of_interior_pointer.c");
    let start = Instant::now();
    let out = run(&src, b"");
    let elapsed = start.elapsed();
    let int = oracle_size(&GuestType::Int);
    let want = format!("size_left={}\nsize_right={}\n", int * 4, int * 6);
    ensure(
        out.exit_status() == Some(0) && out.stdout_text() == want,
        || describe(&out),
    )?;
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("size_left=16 size_right=24 in {elapsed:.2?}"))
}

fn location_lifecycle() -> Check {
    let out = run(&read_corpus("location_lifecycle.c"), b"");
    let want = "STATIC STATIC AUTOMATIC DYNAMIC INVALID\n";
    ensure(
        out.exit_status() == Some(0) && out.stdout_text() == want,
        || describe(&out),
    )?;
    Ok(want.trim().to_string())
}

fn error_catalogue() -> Check {
    // (program, acceptable abort kinds; empty means it must exit 0)
    let table: [(&str, &[DiagnosticKind]); 10] = [
        ("read_number_overflow.c", &[DiagnosticKind::OutOfBounds]),
        ("read_number_checked.c", &[]),
        (
            "dangling_log_pointer.c",
            &[DiagnosticKind::UseAfterFree, DiagnosticKind::InvalidFree],
        ),
        ("dangling_log_pointer_guarded.c", &[]),
        (
            "format_converter_missing_argument.c",
            &[DiagnosticKind::VarargViolation],
        ),
        ("format_converter_counted.c", &[]),
        ("apply_type_confusion.c", &[DiagnosticKind::TypeViolation]),
        ("apply_type_checked.c", &[]),
        ("unterminated_copy.c", &[DiagnosticKind::OutOfBounds]),
        ("unterminated_copy_libc.c", &[]),
    ];
    let mut passed = 0;
    let mut failures = Vec::new();
    for (name, kinds) in table {
        let path = corpus().join(name);
        let case = run_case(&path, &Limits::default());
        let exp =
            Expectation::parse(&std::fs::read_to_string(path.with_extension("expect")).unwrap())
                .unwrap();
        let stdin = exp.stdin.clone().unwrap_or_default();
        let out = run(&read_corpus(name), &stdin);
        let kind_ok = match (&out.termination, kinds.is_empty()) {
            (Termination::Exit(0), true) => out.note.is_none(),
            (Termination::Aborted(d), false) => kinds.contains(&d.kind),
            _ => false,
        };
        if case.passed && kind_ok {
            passed += 1;
        } else {
            failures.push(format!("{name}: {} {}", case.message, describe(&out)));
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("{passed}/10 expectation tests"))
}

const LURKING: &str = r#"
#include <stdio.h>
#include <stdlib.h>
#include <ctype.h>

int writes = 0;
int reads = 0;
char buf[10];

void read_number(char *arr, size_t length) {
  int i = 0;
  if (length == 0) return;
  if (size_right(arr) < length) abort();
  int c = getchar();
  reads++;
  while (isdigit(c) && (i + 1) < length) {
    arr[i++] = c; writes++; c = getchar();
  }
  arr[i] = '\0';
  writes++;
}

int main(void) {
  read_number(buf, -1);
  printf("%s\n", buf);
  return 0;
}
"#;

fn lurking_flaw() -> Check {
    let prog = compile(LURKING, "t.c").map_err(|d| d.to_string())?;
    let mut interp = Interpreter::new(&prog, b"123".to_vec(), Limits::default());
    let result = interp.run_main(&["t.c".to_string()]);
    let writes = interp.read_int_global("writes");
    let reads = interp.read_int_global("reads");
    match result {
        Err(Stop::Exit {
            status: 134,
            guest_abort: true,
        }) => {}
        Err(Stop::Diag(d)) => {
            return Err(format!("runtime diagnostic instead of guest abort: {d}"))
        }
        other => return Err(format!("unexpected result {other:?}")),
    }
    ensure(writes == Some(0) && reads == Some(0), || {
        format!("writes={writes:?} reads={reads:?}")
    })?;
    ensure(interp.stdout.is_empty(), || "output before abort".into())?;

    // Without the check the same input completes: the flaw was lurking.
    let unchecked = LURKING.replace("if (size_right(arr) < length) abort();", "");
    let out = run(&unchecked, b"123");
    ensure(
        out.exit_status() == Some(0) && out.stdout_text() == "123\n",
        || describe(&out),
    )?;
    // With a long input the unchecked version is a runtime violation, not
    // a guest abort.
    let out = run(&unchecked, b"123456789012");
    ensure(
        out.diagnostic()
            .is_some_and(|d| d.kind == DiagnosticKind::OutOfBounds)
            && out.note.is_none(),
        || describe(&out),
    )?;

    // The CLI-level channel: exit 134 plus the guest-abort note.
    let out = run(&read_corpus("read_number_lurking_flaw.c"), b"123");
    ensure(
        out.exit_status() == Some(134) && out.note.is_some() && out.stdout.is_empty(),
        || describe(&out),
    )?;
    Ok("guest abort (134, note) before any read or write; unchecked run is OutOfBounds".into())
}

fn variadic_robustness() -> Check {
    let out = run(&read_corpus("average_of_varargs.c"), b"");
    ensure(
        out.exit_status() == Some(0) && out.stdout_text() == "2.0\n0.0\n0.0\n0.0\n",
        || describe(&out),
    )?;
    let exact = r#"
double avg(int count, ...) {
  if (count == 0 || count != count_varargs())
    return 0;
  int sum = 0;
  for (int i = 0; i < count; i++) {
    int *arg = get_vararg(i, type(&sum));
    if (arg == NULL) return 0;
    else             sum += *arg;
  }
  return (double) sum / count;
}
int main(void) {
  if (avg(3, 1, 2, 3) != 2.0) return 1;
  if (avg(5, 1, 2) != 0) return 2;
  if (avg(2, 1, 2.0) != 0) return 3;
  return 0;
}
"#;
    let out = run(exact, b"");
    ensure(out.exit_status() == Some(0), || describe(&out))?;
    Ok("avg(3,1,2,3)=2.0, avg(5,1,2)=0, avg with a double=0".into())
}

fn format_string_defense() -> Check {
    let src = r#"
#include <stdio.h>
#include <errno.h>
int main(void) {
  errno = 0;
  int n = printf("%s %s", "a");
  fprintf(stderr, "%d %d", n, errno);
  return 0;
}
"#;
    let out = run(src, b"");
    ensure(out.exit_status() == Some(0), || describe(&out))?;
    ensure(out.stdout.is_empty(), || {
        format!("printed {:?}", out.stdout_text())
    })?;
    let err = String::from_utf8_lossy(&out.stderr);
    ensure(err == "-1 22", || format!("return/errno were {err}"))?;
    ensure(out.errno == 22, || format!("errno {}", out.errno))?;
    ensure(
        out.stats.out_of_extent_attempts == 0
            && out.stats.extent_violations == 0
            && out.stats.dangling_attempts == 0,
        || format!("{:?}", out.stats),
    )?;
    let corpus = run_case(
        &corpus().join("printf_missing_argument.c"),
        &Limits::default(),
    );
    ensure(corpus.passed, || corpus.message.clone())?;
    Ok(format!(
        "returned -1, errno=EINVAL, 0 bytes written, {} loads with 0 out-of-extent",
        out.stats.loads
    ))
}

fn char_list(bytes: &[u8]) -> String {
    bytes
        .iter()
        .map(|b| (*b as i8).to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn unterminated_strings() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let cases: Vec<(Vec<u8>, bool)> = (0..1000)
        .map(|i| {
            let len = rng.random_range(1..=64usize);
            let mut buf: Vec<u8> = (0..len).map(|_| rng.random_range(1..=255u8)).collect();
            if i % 2 == 0 {
                let at = rng.random_range(0..len);
                buf[at] = 0;
            }
            (buf, rng.random_bool(0.5))
        })
        .collect();
    let failures: Vec<String> = cases
        .par_iter()
        .enumerate()
        .filter_map(|(i, (buf, heap))| {
            let oracle = buf.iter().position(|b| *b == 0).unwrap_or(buf.len());
            let src = if *heap {
                let mut fill = String::new();
                for (k, b) in buf.iter().enumerate() {
                    writeln!(fill, "  p[{k}] = {};", *b as i8).unwrap();
                }
                format!(
                    "#include <stdio.h>\n#include <stdlib.h>\n#include <string.h>\nint main(void) {{\n  char *p = malloc({});\n{fill}  printf(\"%d\\n\", (int) strlen(p));\n  return 0;\n}}\n",
                    buf.len()
                )
            } else {
                format!(
                    "#include <stdio.h>\n#include <string.h>\nint main(void) {{\n  char buf[{}] = {{{}}};\n  printf(\"%d\\n\", (int) strlen(buf));\n  return 0;\n}}\n",
                    buf.len(),
                    char_list(buf)
                )
            };
            let out = run(&src, b"");
            (out.exit_status() != Some(0) || out.stdout_text() != format!("{oracle}\n"))
                .then(|| format!("case {i} (len {}, oracle {oracle}): {}", buf.len(), describe(&out)))
        })
        .collect();
    ensure(failures.is_empty(), || {
        format!("{} failures, first: {}", failures.len(), failures[0])
    })?;
    Ok("1000/1000 buffers, strlen matched the scan oracle with no abort".into())
}

fn gets_family() -> Check {
    let mut notes = Vec::new();
    for name in ["gets_uses_object_bounds.c", "gets_s_rejects_size_lie.c"] {
        let r = run_case(&corpus().join(name), &Limits::default());
        ensure(r.passed, || format!("{name}: {}", r.message))?;
        notes.push(name.trim_end_matches(".c"));
    }
    // The size lie is rejected before reading: the whole line stays in stdin.
    let src = r#"
#include <stdio.h>
#include <errno.h>
int main(void) {
  char small[4];
  char big[16];
  errno = 0;
  if (gets_s(small, 10) != NULL || errno != EINVAL) return 1;
  if (gets_s(big, sizeof(big)) != big) return 2;
  printf("%s\n", big);
  return 0;
}
"#;
    let out = run(src, b"abcdefgh\n");
    ensure(
        out.exit_status() == Some(0) && out.stdout_text() == "abcdefgh\n",
        || describe(&out),
    )?;
    Ok("3 gets and 3 gets_s examples, size lie rejected before any read".into())
}

fn qsort_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let arrays: Vec<Vec<i32>> = (0..500)
        .map(|_| {
            let len = rng.random_range(1..=64usize);
            (0..len).map(|_| rng.random_range(-1000..1000)).collect()
        })
        .collect();
    let failures: Vec<String> = arrays
        .par_iter()
        .enumerate()
        .filter_map(|(i, v)| {
            let mut sorted = v.clone();
            sorted.sort();
            let list = v
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            let src = format!(
                r#"#include <stdio.h>
#include <stdlib.h>
#include <errno.h>
int cmp(const void *a, const void *b) {{
  int x = *(const int *) a;
  int y = *(const int *) b;
  return (x > y) - (x < y);
}}
long wrong(const void *a, const void *b) {{ return 0; }}
void show(int *v, int n) {{
  for (int i = 0; i < n; i++) printf("%d ", v[i]);
  printf("\n");
}}
int main(void) {{
  int v[{n}] = {{{list}}};
  errno = 0;
  qsort(v, {n}, sizeof(int), wrong);
  printf("%d\n", errno);
  show(v, {n});
  errno = 0;
  qsort(v, {n}, sizeof(int), cmp);
  printf("%d\n", errno);
  show(v, {n});
  return 0;
}}
"#,
                n = v.len()
            );
            let line = |xs: &[i32]| xs.iter().map(|x| format!("{x} ")).collect::<String>();
            let want = format!("22\n{}\n0\n{}\n", line(v), line(&sorted));
            let out = run(&src, b"");
            (out.exit_status() != Some(0) || out.stdout_text() != want)
                .then(|| format!("array {i}: {}", describe(&out)))
        })
        .collect();
    ensure(failures.is_empty(), || {
        format!("{} failures, first: {}", failures.len(), failures[0])
    })?;
    let corpus = run_case(
        &corpus().join("qsort_checks_comparator.c"),
        &Limits::default(),
    );
    ensure(corpus.passed, || corpus.message.clone())?;
    Ok(
        "500/500 arrays sorted to the oracle; wrong comparator left input unchanged with EINVAL"
            .into(),
    )
}

fn host_safety_fuzz() -> Check {
    const PROGRAMS: u64 = 10_000;
    let limits = Limits {
        max_steps: 200_000,
        ..Limits::default()
    };
    let start = Instant::now();
    let results: Vec<Result<Option<DiagnosticKind>, String>> = (0..PROGRAMS)
        .into_par_iter()
        .map(|seed| {
            let src = gen::ProgramGen::new(ChaCha8Rng::seed_from_u64(seed)).program();
            let out = catch_unwind(AssertUnwindSafe(|| run_with(&src, b"", limits.clone())))
                .map_err(|_| format!("program {seed}: host panic"))?;
            if out.stats.extent_violations != 0 {
                return Err(format!("program {seed}: payload-extent violation"));
            }
            if out.frames_left != 0 {
                return Err(format!("program {seed}: {} frames left", out.frames_left));
            }
            match out.termination {
                Termination::Exit(_) => Ok(None),
                Termination::Aborted(d) if d.kind.is_frontend() => Err(format!(
                    "program {seed}: generator produced invalid code: {d}"
                )),
                Termination::Aborted(d) => Ok(Some(d.kind)),
            }
        })
        .collect();
    let elapsed = start.elapsed();
    let errors: Vec<&String> = results.iter().filter_map(|r| r.as_ref().err()).collect();
    ensure(errors.is_empty(), || {
        format!("{} failures, first: {}", errors.len(), errors[0])
    })?;
    ensure(elapsed < Duration::from_secs(600), || {
        format!("took {elapsed:?}")
    })?;
    let aborted = results.iter().filter(|r| matches!(r, Ok(Some(_)))).count();
    let mut kinds: Vec<&str> = results
        .iter()
        .filter_map(|r| r.as_ref().ok().copied().flatten().map(|k| k.as_str()))
        .collect();
    kinds.sort();
    kinds.dedup();
    Ok(format!(
        "{PROGRAMS} programs in {elapsed:.1?}: {} exited, {aborted} aborted ({})",
        PROGRAMS as usize - aborted,
        kinds.join(", ")
    ))
}

struct Probe {
    ptr: GuestPointer,
    byte_size: u64,
    loc: LocationKind,
    offset: i64,
}

fn random_probe(rt: &mut Runtime, rng: &mut ChaCha8Rng) -> Probe {
    let elems = [
        GuestType::Char,
        GuestType::Int,
        GuestType::Long,
        GuestType::Double,
        GuestType::pointer_to(GuestType::Int),
    ];
    let locs = [
        LocationKind::Static,
        LocationKind::Automatic,
        LocationKind::Dynamic,
    ];
    let mut loc = locs[rng.random_range(0..3)];
    let (base, byte_size) = if loc == LocationKind::Dynamic && rng.random_bool(0.3) {
        let bytes = rng.random_range(0..64u64);
        let p = rt.allocate_untyped(bytes).unwrap();
        for _ in 0..rng.random_range(0..4) {
            if bytes >= 4 {
                let at = rng.random_range(0..=(bytes - 4) / 4) * 4;
                let _ = rt.store(&p.offset_by(at as i64), &GuestType::Int, Value::Int(1));
            }
        }
        (p, bytes)
    } else {
        let elem = elems[rng.random_range(0..elems.len())].clone();
        let count = rng.random_range(1..16u64);
        let p = rt.allocate(&elem, count, loc).unwrap();
        (p, oracle_size(&elem) * count)
    };
    if rng.random_bool(0.2) {
        match loc {
            LocationKind::Dynamic => rt.free_object(&base).unwrap(),
            LocationKind::Automatic => {
                let mut f = Frame::new(0, "f".into(), 0, 0);
                f.owned.push(base.pointee.clone().unwrap());
                rt.end_scope(&mut f);
            }
            _ => {}
        }
        if loc != LocationKind::Static {
            loc = LocationKind::Invalid;
        }
    }
    let offset = rng.random_range(-12..byte_size as i64 + 12);
    Probe {
        ptr: base.offset_by(offset),
        byte_size,
        loc,
        offset,
    }
}

fn type_exprs() -> Vec<TypeExpr> {
    let s = TypeExpr::scalar;
    let int = s(TypeKind::Int);
    vec![
        TypeExpr::pointer(s(TypeKind::Char)),
        TypeExpr::pointer(int.clone()),
        TypeExpr::pointer(s(TypeKind::Long)),
        TypeExpr::pointer(s(TypeKind::Double)),
        TypeExpr::pointer(TypeExpr::pointer(int.clone())),
        TypeExpr::function(int.clone(), vec![int], false),
    ]
}

fn introspection_algebra() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0011);
    let types = type_exprs();
    let mut rt = Runtime::new();
    let mut cases = 0u64;
    for i in 0..10_000 {
        let p = random_probe(&mut rt, &mut rng);
        let (l, r) = (intro::size_left(&p.ptr), intro::size_right(&p.ptr));
        let legal = p.loc != LocationKind::Invalid;
        let inside = p.offset >= 0 && p.offset as u64 <= p.byte_size;
        ensure(intro::location(&p.ptr) == p.loc, || {
            format!("case {i}: location")
        })?;
        ensure((l >= 0 && r >= 0) == (legal && inside), || {
            format!("case {i}: legality l={l} r={r}")
        })?;
        if l >= 0 && r >= 0 {
            ensure((l + r) as u64 == p.byte_size, || {
                format!("case {i}: {l}+{r} != {}", p.byte_size)
            })?;
        }
        let freeable_oracle = p.loc == LocationKind::Dynamic && p.offset == 0;
        ensure(intro::freeable(&p.ptr) == freeable_oracle, || {
            format!("case {i}: freeable")
        })?;
        let t = &types[rng.random_range(0..types.len())];
        let once = intro::try_cast(&p.ptr, t);
        ensure(once.is_null() || once == p.ptr, || {
            format!("case {i}: try_cast codomain")
        })?;
        ensure(intro::try_cast(&once, t) == once, || {
            format!("case {i}: try_cast idempotence")
        })?;
        if !legal {
            ensure(once.is_null(), || {
                format!("case {i}: cast of an illegal pointer")
            })?;
        }
        cases += 1;
    }

    // get_vararg = try_cast . _get_vararg over random argument arrays.
    let arg_types = [
        GuestType::Int,
        GuestType::Double,
        GuestType::Long,
        GuestType::char_ptr(),
    ];
    for i in 0..2_000 {
        let fixed = rng.random_range(0..3usize);
        let mut frame = Frame::new(0, "v".into(), 0, fixed);
        let n = rng.random_range(0..6usize);
        for _ in 0..fixed + n {
            let t = &arg_types[rng.random_range(0..arg_types.len())];
            let p = rt.allocate(t, 1, LocationKind::Automatic).unwrap();
            frame.arguments.push(p.pointee.unwrap());
        }
        ensure(intro::count_varargs(&frame) == n, || {
            format!("vararg case {i}: count")
        })?;
        let idx = rng.random_range(-2..n as i64 + 2);
        let t = &types[rng.random_range(0..types.len())];
        let raw = intro::get_vararg_raw(&frame, idx);
        ensure(raw.is_null() == (idx < 0 || idx >= n as i64), || {
            format!("vararg case {i}: range")
        })?;
        ensure(
            intro::get_vararg(&frame, idx, t) == intro::try_cast(&raw, t),
            || format!("vararg case {i}: composition"),
        )?;
        cases += 1;
    }

    // The prelude's MiniC composites agree with the host's.
    let guest = guest_composites(&mut rng)?;
    Ok(format!(
        "{cases} host cases and {guest} guest cases, 0 violations"
    ))
}

fn guest_composites(rng: &mut ChaCha8Rng) -> Result<u64, String> {
    let mut checked = 0;
    for round in 0..20 {
        let n = rng.random_range(1..12);
        let mut body = String::new();
        let mut want = String::new();
        for _ in 0..10 {
            let off = rng.random_range(-2..n + 3);
            let heap = rng.random_bool(0.5);
            let name = if heap { "h" } else { "a" };
            writeln!(body, "  {{ int *t = {name} + {off}; show(t); }}").unwrap();
            let bytes = 4 * n;
            let (l, r) = if (0..=n).contains(&off) {
                (4 * off, bytes - 4 * off)
            } else {
                (-1, -1)
            };
            let free_ok = heap && off == 0;
            let loc = if heap { 2 } else { 1 };
            writeln!(want, "{l} {r} {} {loc}", free_ok as i32).unwrap();
            checked += 1;
        }
        writeln!(body, "  free(h);\n  show(h);").unwrap();
        writeln!(want, "-1 -1 0 0").unwrap();
        checked += 1;
        let src = format!(
            "#include <stdio.h>\n#include <stdlib.h>\nvoid show(int *t) {{ printf(\"%ld %ld %d %d\\n\", size_left(t), size_right(t), freeable(t), location(t)); }}\nint main(void) {{\n  int a[{n}];\n  int *h = malloc(sizeof(int) * {n});\n{body}  return 0;\n}}\n"
        );
        let out = run(&src, b"");
        ensure(
            out.exit_status() == Some(0) && out.stdout_text() == want,
            || format!("guest round {round}: {} want {want:?}", describe(&out)),
        )?;
    }
    Ok(checked)
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("bounds worked example", bounds_example),
        ("location lifecycle", location_lifecycle),
        ("error catalogue", error_catalogue),
        ("lurking flaw detection", lurking_flaw),
        ("variadic robustness", variadic_robustness),
        ("format string defense", format_string_defense),
        ("unterminated strings", unterminated_strings),
        ("gets and gets_s", gets_family),
        ("qsort", qsort_suite),
        ("host safety fuzz", host_safety_fuzz),
        ("introspection algebra", introspection_algebra),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!(
        "{}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
