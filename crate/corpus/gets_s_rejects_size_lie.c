#include <stdio.h>
#include <errno.h>

int main(void) {
  char buf[10];
  char small[4];

  char *r = gets_s(buf, 10);
  printf("%d [%s]\n", r == buf, buf);

  // The size lie is refused before anything is read.
  errno = 0;
  small[0] = 'x';
  r = gets_s(small, 10);
  printf("%d %d %c\n", r == NULL, errno == EINVAL, small[0]);

  errno = 0;
  r = gets_s(buf, 0);
  printf("%d %d\n", r == NULL, errno == EINVAL);

  r = gets_s(buf, sizeof(buf));
  printf("%d [%s]\n", r == buf, buf);
  return 0;
}
