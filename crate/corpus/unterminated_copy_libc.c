#include <stdio.h>
#include <string.h>

// Reads exactly MAXLEN bytes, so the buffer has no terminator.
void read_config(char *inputbuf, int maxlen) {
  for (int i = 0; i < maxlen; i++) inputbuf[i] = getchar();
}

int main(void) {
  char inputbuf[8];
  read_config(inputbuf, 8);
  char buf[8];
  strcpy(buf, inputbuf);
  puts(buf);
  printf("%d\n", (int) strlen(buf));
  return 0;
}
