//! Guest workloads shared by the benchmarks.

/// Sorts a 256-element array through the checked `qsort`.
pub const SORT: &str = r#"
#include <stdio.h>
#include <stdlib.h>
int cmp(const void *a, const void *b) {
  int x = *(const int *) a;
  int y = *(const int *) b;
  return (x > y) - (x < y);
}
int main(void) {
  int v[256];
  for (int i = 0; i < 256; i++) v[i] = (i * 7919) % 256;
  qsort(v, 256, sizeof(int), cmp);
  return v[0];
}
"#;

/// String-heavy libc traffic: copies, lengths, and formatting.
pub const STRINGS: &str = r#"
#include <stdio.h>
#include <string.h>
int main(void) {
  char a[64];
  char b[64];
  long total = 0;
  for (int i = 0; i < 200; i++) {
    snprintf(a, sizeof(a), "item-%d-%x", i, i * 31);
    strcpy(b, a);
    total += strlen(b) + strcmp(a, b);
  }
  return total > 0 ? 0 : 1;
}
"#;

/// Plain arithmetic and indexing with no libc calls in the loop.
pub const LOOP: &str = r#"
int main(void) {
  int a[100];
  long sum = 0;
  for (int round = 0; round < 100; round++)
    for (int i = 0; i < 100; i++) {
      a[i] = i * round;
      sum += a[i];
    }
  return sum == 49500000 ? 0 : 1;
}
"#;

/// A variadic function called through `va_arg` and through `get_vararg`.
pub const VARARGS: &str = r#"
#include <stdarg.h>
int sum_va(int n, ...) {
  va_list ap;
  va_start(ap, n);
  int s = 0;
  for (int i = 0; i < n; i++) s += va_arg(ap, int);
  va_end(ap);
  return s;
}
int sum_checked(int n, ...) {
  int s = 0;
  if (n != count_varargs()) return -1;
  for (int i = 0; i < n; i++) {
    int *p = get_vararg(i, type(&s));
    if (p == NULL) return -1;
    s += *p;
  }
  return s;
}
int main(void) {
  long t = 0;
  for (int i = 0; i < 300; i++) t += sum_va(4, i, 1, 2, 3) + sum_checked(4, i, 1, 2, 3);
  return t > 0 ? 0 : 1;
}
"#;
