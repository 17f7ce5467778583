#include <stdio.h>
#include <stdlib.h>

int a;

const char *location_name(int loc) {
  if (loc == STATIC) return "STATIC";
  if (loc == AUTOMATIC) return "AUTOMATIC";
  if (loc == DYNAMIC) return "DYNAMIC";
  return "INVALID";
}

void func(void) {
  static int b;
  int c;
  int *d = malloc(sizeof(int) * 10);
  printf("%s ", location_name(location(&a)));
  printf("%s ", location_name(location(&b)));
  printf("%s ", location_name(location(&c)));
  printf("%s ", location_name(location(d)));
  free(d);
  printf("%s\n", location_name(location(d)));
}

int main(void) {
  func();
  return 0;
}
