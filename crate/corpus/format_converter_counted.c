#include <stdio.h>
#include <string.h>

struct xbuf {
  char data[64];
  int len;
};

void ins_char(struct xbuf *xbuf, char c) {
  if (xbuf->len + 1 < 64) {
    xbuf->data[xbuf->len++] = c;
    xbuf->data[xbuf->len] = '\0';
  }
}

int count_specifiers(const char *fmt) {
  int n = 0;
  for (; *fmt; fmt++) {
    if (*fmt == '%') {
      fmt++;
      if (*fmt == 's') n++;
    }
  }
  return n;
}

// Checks the specifiers against the actual arguments before reading any.
int format(struct xbuf *xbuf, const char *fmt, ...) {
  if (count_specifiers(fmt) != count_varargs()) return -1;
  int arg = 0;
  char *probe = NULL;
  for (; *fmt; fmt++) {
    if (*fmt != '%') {
      ins_char(xbuf, *fmt);
    } else {
      fmt++;
      char **s = get_vararg(arg++, type(&probe));
      if (s == NULL) return -1;
      size_t s_len = strlen(*s);
      for (size_t i = 0; i < s_len; i++) ins_char(xbuf, (*s)[i]);
    }
  }
  return xbuf->len;
}

int main(void) {
  struct xbuf out;
  out.len = 0;
  out.data[0] = '\0';
  int n = format(&out, "[%s]\n", "one");
  printf("%d %s", n, out.data);
  out.len = 0;
  out.data[0] = '\0';
  n = format(&out, "%s %s\n", "a");
  printf("%d [%s]\n", n, out.data);
  n = format(&out, "%s\n", 42);
  printf("%d [%s]\n", n, out.data);
  return 0;
}
