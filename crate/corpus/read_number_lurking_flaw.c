#include <stdio.h>
#include <stdlib.h>
#include <ctype.h>

// Only three digits arrive, so no write would overflow, but the size lie
// is caught before anything is read.
void read_number(char *arr, size_t length) {
  int i = 0;
  if (length == 0) return;
  if (size_right(arr) < length) abort();
  int c = getchar();
  while (isdigit(c) && (i + 1) < length) {
    arr[i++] = c; c = getchar();
  }
  arr[i] = '\0';
}

int main(void) {
  char buf[10];
  buf[0] = 'x';
  read_number(buf, -1);
  printf("%s\n", buf);
  return 0;
}
