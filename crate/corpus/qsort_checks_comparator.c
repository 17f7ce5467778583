#include <stdio.h>
#include <stdlib.h>
#include <errno.h>

int cmp_int(const void *a, const void *b) {
  int x = *(const int *) a;
  int y = *(const int *) b;
  return (x > y) - (x < y);
}

double cmp_wrong(int a) { return a; }

void show(int *v, int n) {
  for (int i = 0; i < n; i++) printf("%d%s", v[i], i + 1 < n ? " " : "\n");
}

int main(void) {
  int v[5] = {3, 1, 2, 5, 4};
  errno = 0;
  qsort(v, 5, sizeof(int), cmp_wrong);
  printf("%d ", errno == EINVAL);
  show(v, 5);

  errno = 0;
  qsort(v, 6, sizeof(int), cmp_int);
  printf("%d ", errno == EINVAL);
  show(v, 5);

  errno = 0;
  qsort(v, 5, sizeof(int), cmp_int);
  printf("%d ", errno);
  show(v, 5);

  int key = 4;
  int *hit = bsearch(&key, v, 5, sizeof(int), cmp_int);
  printf("%d\n", hit == &v[3]);
  return 0;
}
