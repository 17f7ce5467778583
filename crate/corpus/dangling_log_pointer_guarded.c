#include <stdio.h>
#include <stdlib.h>


void logError(const char *message, void *ptr) {
  if (location(ptr) == INVALID)
    printf("dangling pointer passed to logError!\n");
  else {
    char *data = ptr;
    printf("error while processing %s: first byte %d\n", message, data[0]);
  }
}

int main(void) {
  int err = 1;
  int abrt = 0;
  char *ptr = (char *) malloc(16 * sizeof(char));
  ptr[0] = 'k';
  if (err) {
    abrt = 1;
    if (freeable(ptr)) free(ptr);
  }
  if (abrt) {
    logError("operation aborted", ptr);
    if (freeable(ptr)) free(ptr);
  }
  printf("done\n");
  return 0;
}
