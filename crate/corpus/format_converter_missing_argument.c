#include <stdio.h>
#include <string.h>
#include <stdarg.h>

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

static void xbuf_format_converter(struct xbuf *xbuf, const char *fmt, va_list ap) {
  char *s = NULL;
  size_t s_len;
  while (*fmt) {
    if (*fmt != '%') {
      ins_char(xbuf, *fmt);
    } else {
      fmt++;
      if (*fmt == 's') {
        s = va_arg(ap, char *);
        s_len = strlen(s);
        for (size_t i = 0; i < s_len; i++) ins_char(xbuf, s[i]);
      }
    }
    fmt++;
  }
}

void format(struct xbuf *xbuf, const char *fmt, ...) {
  va_list ap;
  va_start(ap, fmt);
  xbuf_format_converter(xbuf, fmt, ap);
  va_end(ap);
}

int main(void) {
  struct xbuf out;
  out.len = 0;
  out.data[0] = '\0';
  format(&out, "[%s]\n", "one");
  printf("%s", out.data);
  out.len = 0;
  format(&out, "%s %s\n", "a");
  printf("%s", out.data);
  return 0;
}
