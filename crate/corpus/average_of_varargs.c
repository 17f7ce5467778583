#include <stdio.h>

double avg(int count, ...) {
  if (count == 0 || count != count_varargs())
    return 0;
  int sum = 0;
  for (int i = 0; i < count; i++) {
    int *arg = get_vararg(i, type(&sum));
    if (arg == NULL) return 0;
    else             sum += *arg;
  }
  return (double) sum / count;
}

int main(void) {
  printf("%.1f\n", avg(3, 1, 2, 3));
  printf("%.1f\n", avg(5, 1, 2));
  printf("%.1f\n", avg(2, 1, 2.5));
  printf("%.1f\n", avg(0));
  return 0;
}
