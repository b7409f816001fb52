#include <stdio.h>
#include "flatvol.h"
int main(void) {
  FvEngine *e = fv_engine_new();
  char *out = NULL;
  if (fv_an(e, "5/6,5/6,5/6,5/6,-4/3", &out) != FV_STATUS_OK) return 1;
  printf("%s\n", out);
  fv_string_free(out);
  if (fv_an(e, "x", &out) != FV_STATUS_PARSE) return 2;
  printf("%s\n", fv_last_error());
  fv_engine_free(e);
  return 0;
}
