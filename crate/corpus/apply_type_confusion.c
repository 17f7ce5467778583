#include <stdio.h>

int apply(int *arr, size_t n, int f(int arg1)) {
  if (f == NULL) return -1;
  for (size_t i = 0; i < n; i++)
    arr[i] = f(arr[i]);
  return 0;
}

double square(int a) { return a * a; }

int main(void) {
  int arr[5] = {1, 2, 3, 4, 5};
  apply(arr, 5, square);
  printf("%d\n", arr[4]);
  return 0;
}
