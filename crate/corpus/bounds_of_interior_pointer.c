#include <stdio.h>
#include <stdlib.h>

int main(void) {
  int *arr = malloc(sizeof(int) * 10);
  int *ptr = &(arr[4]);
  printf("size_left=%ld\n", _size_left(ptr));
  printf("size_right=%ld\n", _size_right(ptr));
  free(arr);
  return 0;
}
