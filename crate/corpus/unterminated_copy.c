#include <stdio.h>

// Reads exactly MAXLEN bytes, so the buffer has no terminator.
void read_config(char *inputbuf, int maxlen) {
  for (int i = 0; i < maxlen; i++) inputbuf[i] = getchar();
}

void copy_string(char *dst, const char *src) {
  while (*src != '\0') *dst++ = *src++;
  *dst = '\0';
}

int main(void) {
  char inputbuf[8];
  read_config(inputbuf, 8);
  char buf[8];
  copy_string(buf, inputbuf);
  puts(buf);
  return 0;
}
