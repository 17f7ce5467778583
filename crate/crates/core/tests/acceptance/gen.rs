//! Random well-typed MiniC programs that lean on indexing, freeing, and
//! variadic calls. Every generated program must pass the front end; what
//! happens at run time is up to the dice.

use std::fmt::Write;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

const HELPERS: &str = r#"#include <stdio.h>
#include <stdlib.h>
#include <string.h>
#include <stdarg.h>

int g[6];

int sum_ints(int count, ...) {
  va_list ap;
  va_start(ap, count);
  int s = 0;
  for (int i = 0; i < count; i++) s += va_arg(ap, int);
  va_end(ap);
  return s;
}

double sum_doubles(int count, ...) {
  va_list ap;
  va_start(ap, count);
  double s = 0;
  for (int i = 0; i < count; i++) s += va_arg(ap, double);
  va_end(ap);
  return s;
}

int checked_ints(int count, ...) {
  int s = 0;
  if (count != count_varargs()) return -1;
  for (int i = 0; i < count; i++) {
    int *p = get_vararg(i, type(&s));
    if (p == NULL) return -2;
    s += *p;
  }
  return s;
}

int twice(int x) { return 2 * x; }
double half(int x) { return x / 2.0; }
int depth(int n) { if (n <= 0) return 0; return 1 + depth(n - 1); }
int *escape(void) { int local = 5; return &local; }
"#;

pub struct ProgramGen {
    rng: ChaCha8Rng,
    n: i64,
    m: i64,
    k: i64,
}

impl ProgramGen {
    pub fn new(rng: ChaCha8Rng) -> Self {
        ProgramGen {
            rng,
            n: 0,
            m: 0,
            k: 0,
        }
    }

    fn idx(&mut self, len: i64) -> i64 {
        // Mostly in bounds, sometimes just outside either end.
        if self.rng.random_bool(0.85) {
            self.rng.random_range(0..len)
        } else {
            self.rng.random_range(-3..len + 3)
        }
    }

    fn expr(&mut self) -> String {
        match self.rng.random_range(0..6) {
            0 => self.rng.random_range(-50..50).to_string(),
            1 => "x".into(),
            2 => format!("a[{}]", self.idx(self.n)),
            3 => format!("x + {}", self.rng.random_range(1..9)),
            4 => format!("x * {}", self.rng.random_range(-3..4)),
            _ => format!("g[{}]", self.idx(6)),
        }
    }

    fn vararg_list(&mut self) -> (usize, String) {
        let declared = self.rng.random_range(0..4);
        let actual = if self.rng.random_bool(0.7) {
            declared
        } else {
            self.rng.random_range(0..5)
        };
        let mut s = String::new();
        for _ in 0..actual {
            if self.rng.random_bool(0.8) {
                write!(s, ", {}", self.expr()).unwrap();
            } else {
                write!(s, ", {}.5", self.rng.random_range(0..9)).unwrap();
            }
        }
        (declared, s)
    }

    fn stmt(&mut self, out: &mut String) {
        let (n, m, k) = (self.n, self.m, self.k);
        let line = match self.rng.random_range(0..26) {
            0 | 1 => format!("a[{}] = {};", self.idx(n), self.expr()),
            2 => format!("x = a[{}];", self.idx(n)),
            3 => format!("p[{}] = {};", self.idx(k), self.expr()),
            4 => format!("x = p[{}];", self.idx(k)),
            5 => "free(p);".into(),
            6 => ["free(p + 1);", "free(a);", "free(&x);", "free(NULL);"][self.rng.random_range(0..4)].into(),
            7 => {
                self.k = self.rng.random_range(1..12);
                format!("p = malloc(sizeof(int) * {});", self.k)
            }
            8 => {
                self.k = self.rng.random_range(1..12);
                format!("p = realloc(p, sizeof(int) * {});", self.k)
            }
            9 => format!("s[{}] = '{}';", self.idx(m), (b'a' + self.rng.random_range(0..26u8)) as char),
            10 => "x = strlen(s);".into(),
            11 => {
                let (c, args) = self.vararg_list();
                format!("x = sum_ints({c}{args});")
            }
            12 => {
                let (c, args) = self.vararg_list();
                format!("acc += sum_doubles({c}{args});")
            }
            13 => {
                let (c, args) = self.vararg_list();
                format!("acc += checked_ints({c}{args});")
            }
            14 => {
                let (_, args) = self.vararg_list();
                let spec = ["%d", "%d %d", "%s", "%ld", "%d %s %d", "%x"][self.rng.random_range(0..6)];
                format!("acc += printf(\"{spec}\\n\"{args});")
            }
            15 => "x = fp(x & 7);".into(),
            16 => ["fp = half;", "fp = twice;"][self.rng.random_range(0..2)].into(),
            17 => "if (try_cast(&fp, type(fp)) != NULL) x = fp(x & 7);".into(),
            18 => format!("x = depth({});", self.rng.random_range(0..40)),
            19 => {
                let l = self.rng.random_range(0..n + 3);
                format!("for (int i = 0; i < {l}; i++) a[i] = i * x;")
            }
            20 => format!("x = x / a[{}];", self.idx(n)),
            21 => format!(
                "{{ int *t = &a[{}]; acc += size_right(t) + size_left(t) + location(t) + freeable(t); }}",
                self.idx(n)
            ),
            22 => format!("memcpy(a, p, sizeof(int) * {});", self.rng.random_range(0..n + 3)),
            23 => format!("x = snprintf(s, {}, \"%d-%d\", x, a[0]);", self.rng.random_range(0..m + 3)),
            24 => match self.rng.random_range(0..20) {
                0 => "x = *escape();".into(),
                1 => "while (x >= 0) x = x + 1;".into(),
                2 => "x = depth(100000);".into(),
                _ => format!("x = *(q + {});", self.idx(k)),
            },
            _ => format!("if (x > {}) {{ x = x - a[{}]; }} else {{ g[{}] = x; }}", self.rng.random_range(-5..5), self.idx(n), self.idx(6)),
        };
        out.push_str("  ");
        out.push_str(&line);
        out.push('\n');
    }

    pub fn program(&mut self) -> String {
        self.n = self.rng.random_range(1..10);
        self.m = self.rng.random_range(1..10);
        self.k = self.rng.random_range(1..10);
        let mut out = String::from(HELPERS);
        writeln!(out, "\nint main(void) {{").unwrap();
        writeln!(out, "  int a[{}];\n  char s[{}];", self.n, self.m).unwrap();
        writeln!(
            out,
            "  int *p = malloc(sizeof(int) * {});\n  int *q = p;",
            self.k
        )
        .unwrap();
        out.push_str("  int x = 0;\n  long acc = 0;\n  int (*fp)(int) = twice;\n");
        for _ in 0..self.rng.random_range(1..25) {
            self.stmt(&mut out);
        }
        out.push_str("  printf(\"%d %ld\\n\", x, acc);\n  return x & 127;\n}\n");
        out
    }
}
