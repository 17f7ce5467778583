#include <stdio.h>

int fixed(int a, int b) {
  return count_varargs() * 100 + (_get_vararg(0) == NULL);
}

int tail(int a, ...) {
  return count_varargs();
}

int main(void) {
  printf("%d %d %d %d\n", fixed(1, 2), tail(1), tail(1, 2, 3), count_varargs());
  return 0;
}
