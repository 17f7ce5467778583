#include <stdio.h>
#include <errno.h>

int main(void) {
  char buf[10];
  char small[4];

  char *r = gets(buf);
  printf("%d [%s]\n", r == buf, buf);

  errno = 0;
  r = gets(NULL);
  printf("%d %d\n", r == NULL, errno == EINVAL);

  errno = 0;
  small[0] = 'x';
  r = gets(small);
  printf("%d %d %d\n", r == NULL, errno == EINVAL, small[0]);

  r = gets(buf);
  printf("%d [%s]\n", r == buf, buf);
  return 0;
}
