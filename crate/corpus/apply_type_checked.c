#include <stdio.h>

int apply(int *arr, size_t n, int f(int arg1)) {
  if (size_right(arr) < sizeof(int) * n || try_cast(&f, type(f)) == NULL)
    return -1;
  for (size_t i = 0; i < n; i++)
    arr[i] = f(arr[i]);
  return 0;
}

double square(int a) { return a * a; }
int twice(int a) { return 2 * a; }

int main(void) {
  int arr[5] = {1, 2, 3, 4, 5};
  printf("%d\n", apply(arr, 5, square));
  printf("%d\n", apply(arr, 6, twice));
  printf("%d %d %d\n", apply(arr, 5, twice), arr[0], arr[4]);
  return 0;
}
