#include <stdio.h>
#include <errno.h>

int main(void) {
  errno = 0;
  int n = printf("%s %s", "a");
  int saved = errno;
  fprintf(stderr, "%d %d\n", n, saved);
  if (n != -1 || saved != EINVAL) return 1;
  n = printf("%d\n", "not an int");
  if (n != -1) return 2;
  n = printf("%s|%5d|%-3c|%x\n", "ok", 42, 'z', 255);
  return n == 16 ? 0 : 3;
}
