#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "bfm_workbench.h"

#define CHECK(cond)                                              \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "line %d: %s\n", __LINE__, #cond);         \
      return 1;                                                  \
    }                                                            \
  } while (0)

int main(void) {
  BfmRootDatum *su2 = NULL, *psl2 = NULL, *dual = NULL;
  CHECK(bfm_root_datum_new("A1", "simply-connected", &su2) == BFM_STATUS_OK);
  CHECK(bfm_root_datum_new("A1", "adjoint", &psl2) == BFM_STATUS_OK);
  CHECK(bfm_root_datum_dual(su2, &dual) == BFM_STATUS_OK);
  bool eq = false;
  CHECK(bfm_root_datum_equal(dual, psl2, &eq) == BFM_STATUS_OK && eq);

  size_t order = 0;
  BfmRootDatum *g2 = NULL;
  CHECK(bfm_root_datum_new("G2", "adjoint", &g2) == BFM_STATUS_OK);
  CHECK(bfm_root_datum_weyl_order(g2, &order) == BFM_STATUS_OK && order == 12);

  BfmRootDatum *bad = NULL;
  CHECK(bfm_root_datum_new("E8", "adjoint", &bad) == BFM_STATUS_UNSUPPORTED_TYPE);
  CHECK(bad == NULL);
  CHECK(bfm_last_error_message() != NULL);

  BfmComplex u = {1.0, 0.0}, q = {1.0, 0.0}, cas, cls;
  CHECK(bfm_toda_embed_rank1(u, q, &cas, &cls) == BFM_STATUS_OK);
  CHECK(cas.re == 0.0 && cls.re == 0.5);

  const char *argv[] = {"bfm-workbench", "dual", "--type", "B2"};
  char *json = NULL;
  int code = -1;
  CHECK(bfm_run(4, argv, &json, &code) == BFM_STATUS_OK);
  CHECK(code == 0 && json != NULL);
  CHECK(strstr(json, "\"schema\": \"bfm-workbench/1\"") != NULL);
  bfm_string_free(json);

  bfm_root_datum_free(su2);
  bfm_root_datum_free(psl2);
  bfm_root_datum_free(dual);
  bfm_root_datum_free(g2);
  puts("ok");
  return 0;
}
