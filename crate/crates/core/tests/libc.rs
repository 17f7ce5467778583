use minic_core::{run_source, ExecConfig, ExecOutcome};
use proptest::prelude::*;

fn run_stdin(src: &str, stdin: &[u8]) -> ExecOutcome {
    let config = ExecConfig {
        stdin: stdin.to_vec(),
        ..ExecConfig::default()
    };
    run_source(src, "t.c", &config)
}

fn run(src: &str) -> ExecOutcome {
    run_stdin(src, b"")
}

fn stdout_of(src: &str) -> String {
    let out = run(src);
    assert_eq!(out.exit_status(), Some(0), "{:?}", out.diagnostic());
    out.stdout_text()
}

const HOSTILE_SETUP: &str = r#"#include <stdio.h>
#include <stdlib.h>
#include <string.h>
#include <errno.h>

int cmp_ok(const void *a, const void *b) {
  const char *x = a;
  const char *y = b;
  if (try_cast(x, type(x)) == NULL || try_cast(y, type(y)) == NULL) return 0;
  return *x - *y;
}
double cmp_wrong(int a) { return a; }
char *escape(void) { char local[4]; return local; }

int main(void) {
  char un[4] = {'a', 'b', 'c', 'd'};
  char ok[8] = "ok";
  char *st = "lit";
  char *h = malloc(6);
  char *dead = malloc(4);
  free(dead);
  char *esc = escape();
  int iv = 7;
  char *ivp = (char *) &iv;
  long sink = 0;
"#;

const POINTERS: [&str; 12] = [
    "NULL", "dead", "un", "ok", "st", "h", "un + 2", "un + 4", "un + 9", "un - 1", "esc", "ivp",
];
const SIZES: [&str; 7] = ["0", "1", "3", "4", "8", "100", "-1"];
const COMPARATORS: [&str; 3] = ["cmp_ok", "cmp_wrong", "NULL"];

fn call(kind: u8, p: &str, q: &str, n: &str, c: &str) -> String {
    match kind % 27 {
        0 => format!("sink += strlen({p});"),
        1 => format!("strcpy({p}, {q});"),
        2 => format!("strncpy({p}, {q}, {n});"),
        3 => format!("strcat({p}, {q});"),
        4 => format!("sink += strcmp({p}, {q});"),
        5 => format!("sink += strncmp({p}, {q}, {n});"),
        6 => format!("sink += strchr({p}, 'c') != NULL;"),
        7 => format!("memcpy({p}, {q}, {n});"),
        8 => format!("memset({p}, 'z', {n});"),
        9 => format!("sink += memcmp({p}, {q}, {n});"),
        10 => format!("sink += atoi({p}) + atol({q});"),
        11 => format!("sink += puts({p});"),
        12 => format!("sink += fputs({p}, stdout);"),
        13 => format!("sink += printf({p});"),
        14 => format!("sink += printf(\"%s|%d\\n\", {p});"),
        15 => format!("sink += sprintf({p}, \"%d\", 12345);"),
        16 => format!("sink += snprintf({p}, {n}, \"%s-%s\", {q}, {p});"),
        17 => format!("sink += sscanf({p}, \"%d %s\", &iv, {q});"),
        18 => format!("free({p});"),
        19 => format!("sink += realloc({p}, {n}) != NULL;"),
        20 => format!("sink += gets({p}) != NULL;"),
        21 => format!("sink += gets_s({p}, {n}) != NULL;"),
        22 => format!("sink += fgets({p}, {n}, stdin) != NULL;"),
        23 => format!("qsort({p}, {n}, 1, {c});"),
        24 => format!("sink += bsearch({q}, {p}, {n}, 1, {c}) != NULL;"),
        25 => format!("sink += fprintf(stderr, \"%s %d\", {p}, {n});"),
        _ => format!("sink += sprintf({p}, \"%s %s\", {q});"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    // Whatever the arguments, libc returns normally and never touches bytes
    // outside its argument objects.
    #[test]
    fn libc_never_aborts_on_hostile_arguments(
        calls in proptest::collection::vec((any::<u8>(), 0..POINTERS.len(), 0..POINTERS.len(), 0..SIZES.len(), 0..COMPARATORS.len()), 1..25),
        stdin in "[a-z0-9 \n]{0,40}",
    ) {
        let mut src = String::from(HOSTILE_SETUP);
        for (k, p, q, n, c) in &calls {
            src.push_str("  ");
            src.push_str(&call(*k, POINTERS[*p], POINTERS[*q], SIZES[*n], COMPARATORS[*c]));
            src.push('\n');
        }
        src.push_str("  return 0;\n}\n");
        let out = run_stdin(&src, stdin.as_bytes());
        prop_assert_eq!(out.exit_status(), Some(0), "{:?}\n{}", out.diagnostic(), src);
        prop_assert_eq!(out.stats.out_of_extent_attempts, 0, "{}", src);
        prop_assert_eq!(out.stats.dangling_attempts, 0, "{}", src);
        prop_assert_eq!(out.stats.extent_violations, 0);
    }

    // On well-formed inputs the string functions agree with the host.
    #[test]
    fn string_functions_match_the_host(a in "[a-z0-9]{0,12}", b in "[a-z0-9]{0,12}", n in 0usize..14, digits in "-?[0-9]{1,9}") {
        let src = format!(
            r#"#include <stdio.h>
#include <string.h>
#include <stdlib.h>
int sign(int x) {{ return (x > 0) - (x < 0); }}
int main(void) {{
  char buf[40];
  char *a = "{a}";
  char *b = "{b}";
  printf("%d %d %d %d\n", (int) strlen(a), sign(strcmp(a, b)), sign(strncmp(a, b, {n})), atoi("{digits}"));
  char *c = strchr(a, 'e');
  printf("%d\n", c == NULL ? -1 : (int) (c - a));
  strcpy(buf, a);
  strcat(buf, b);
  printf("%s %d\n", buf, sign(memcmp(a, b, {m})));
  return 0;
}}
"#,
            m = n.min(a.len()).min(b.len())
        );
        let sign = |o: std::cmp::Ordering| o as i32;
        let prefix = |s: &str| s.as_bytes()[..n.min(s.len())].to_vec();
        let m = n.min(a.len()).min(b.len());
        let want = format!(
            "{} {} {} {}\n{}\n{}{} {}\n",
            a.len(),
            sign(a.cmp(&b)),
            sign(prefix(&a).cmp(&prefix(&b))),
            digits.parse::<i32>().unwrap(),
            a.find('e').map_or(-1, |i| i as i64),
            a,
            b,
            sign(a.as_bytes()[..m].cmp(&b.as_bytes()[..m]))
        );
        prop_assert_eq!(stdout_of(&src), want);
    }

    #[test]
    fn printf_matches_the_host(x in any::<i32>(), l in any::<i64>(), w in 0usize..12, p in 0usize..7, f in -1.0e6f64..1.0e6, s in "[a-z]{0,8}", c in b'a'..=b'z') {
        let src = format!(
            "#include <stdio.h>\nint main(void) {{\n  printf(\"[%d][%{w}d][%-{w}d][%0{w}d][%x][%X][%u]\\n\", {x}, {x}, {x}, {x}, {x}, {x}, {x});\n  printf(\"[%ld][%{w}s][%-{w}s][%c][%.{p}f][%{w}.{p}f]\\n\", {l}L, \"{s}\", \"{s}\", '{ch}', {f:e}, {f:e});\n  return 0;\n}}\n",
            ch = c as char
        );
        let want = format!(
            "[{x}][{x:>w$}][{x:<w$}][{x:0w$}][{:x}][{:X}][{}]\n[{l}][{s:>w$}][{s:<w$}][{ch}][{f:.p$}][{f:>w$.p$}]\n",
            x as u32,
            x as u32,
            x as u32,
            ch = c as char
        );
        prop_assert_eq!(stdout_of(&src), want);
    }
}

#[test]
fn realloc_copies_and_refuses_non_heap_pointers() {
    let src = r#"#include <stdio.h>
#include <stdlib.h>
#include <errno.h>
int main(void) {
  int *p = malloc(sizeof(int) * 2);
  p[0] = 4; p[1] = 5;
  int *q = realloc(p, sizeof(int) * 4);
  printf("%d %d %d %d %d\n", q[0], q[1], location(p), (int) size_right(q), freeable(q));
  int local[2] = {1, 2};
  errno = 0;
  int *r = realloc(local, 16);
  printf("%d %d %d\n", r == NULL, errno == EINVAL, local[1]);
  errno = 0;
  r = realloc(q + 1, 16);
  printf("%d %d %d\n", r == NULL, errno == EINVAL, q[1]);
  return 0;
}"#;
    assert_eq!(stdout_of(src), "4 5 0 16 1\n1 1 2\n1 1 5\n");
}

#[test]
fn free_guards_itself() {
    let src = r#"#include <stdio.h>
#include <stdlib.h>
#include <errno.h>
int g;
int main(void) {
  int x;
  char *p = malloc(4);
  free(p);
  errno = 0; free(p); int a = errno;
  errno = 0; free(&x); int b = errno;
  errno = 0; free(&g); int c = errno;
  errno = 0; free(NULL); int d = errno;
  printf("%d %d %d %d\n", a, b, c, d);
  return 0;
}"#;
    assert_eq!(stdout_of(src), "22 22 22 0\n");
}

#[test]
fn calloc_zeroes_and_detects_overflow() {
    let src = r#"#include <stdio.h>
#include <stdlib.h>
int main(void) {
  long *p = calloc(4, sizeof(long));
  printf("%ld %d\n", p[0] + p[3], (int) size_right(p));
  printf("%d\n", calloc(SIZE_MAX, 2) == NULL);
  printf("%d\n", malloc(SIZE_MAX) == NULL);
  return 0;
}"#;
    assert_eq!(stdout_of(src), "0 32\n1\n1\n");
}

#[test]
fn strcpy_clamps_to_the_destination() {
    let src = r#"#include <stdio.h>
#include <string.h>
int main(void) {
  char d[3];
  strcpy(d, "abcdef");
  printf("%d %c%c%c\n", (int) strlen(d), d[0], d[1], d[2]);
  char e[8];
  strcpy(e, "abc");
  printf("%s %d\n", e, (int) strlen(e));
  return 0;
}"#;
    assert_eq!(stdout_of(src), "3 abc\nabc 3\n");
}

#[test]
fn snprintf_truncates_without_error() {
    let src = r#"#include <stdio.h>
#include <errno.h>
int main(void) {
  char b[4];
  errno = 0;
  int n = snprintf(b, sizeof(b), "%d", 12345);
  printf("%d %s %d\n", n, b, errno);
  char small[2];
  n = snprintf(small, 10, "%s", "hello");
  printf("%d %c\n", n, small[0]);
  return 0;
}"#;
    assert_eq!(stdout_of(src), "5 123 0\n5 h\n");
}

#[test]
fn sscanf_reads_ints_and_bounded_strings() {
    let src = r#"#include <stdio.h>
#include <errno.h>
int main(void) {
  int a = 0;
  char word[4];
  int n = sscanf("42 abcdef", "%d %s", &a, word);
  printf("%d %d %c%c%c\n", n, a, word[0], word[1], word[2]);
  errno = 0;
  n = sscanf("1 2", "%d %d", &a);
  printf("%d %d\n", n, errno);
  double d = 0;
  n = sscanf("3", "%d", &d);
  printf("%d %d\n", n, errno);
  return 0;
}"#;
    assert_eq!(stdout_of(src), "2 42 abc\n-1 22\n-1 22\n");
}

#[test]
fn character_io_goes_to_the_right_stream() {
    let src = r#"#include <stdio.h>
int main(void) {
  putchar('a');
  fputc('b', stdout);
  fputc('x', stderr);
  fputs("cd", stdout);
  fprintf(stderr, "%d", 5);
  int c = getchar();
  char line[8];
  fgets(line, sizeof(line), stdin);
  printf("%c|%s", c, line);
  return 0;
}"#;
    let out = run_stdin(src, b"qrest\nmore");
    assert_eq!(out.stdout_text(), "abcdq|rest\n");
    assert_eq!(out.stderr, b"x5");
}

#[test]
fn bsearch_finds_keys_in_sorted_arrays() {
    let src = r#"#include <stdio.h>
#include <stdlib.h>
int cmp(const void *a, const void *b) { return *(const int *) a - *(const int *) b; }
int main(void) {
  int v[6] = {1, 3, 5, 7, 9, 11};
  for (int k = 0; k <= 12; k++) {
    int *hit = bsearch(&k, v, 6, sizeof(int), cmp);
    printf("%d", hit == NULL ? -1 : (int) (hit - v));
  }
  printf("\n");
  return 0;
}"#;
    assert_eq!(stdout_of(src), "-10-11-12-13-14-15-1\n");
}
