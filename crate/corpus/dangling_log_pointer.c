#include <stdio.h>
#include <stdlib.h>


void logError(const char *message, void *ptr) {
  char *data = ptr;
  fprintf(stderr, "error while processing %s: first byte %d\n", message, data[0]);
}

int main(void) {
  int err = 1;
  int abrt = 0;
  char *ptr = (char *) malloc(16 * sizeof(char));
  ptr[0] = 'k';
  if (err) {
    abrt = 1; free(ptr);
  }
  if (abrt) {
    logError("operation aborted", ptr); free(ptr);
  }
  printf("done\n");
  return 0;
}
