#include <stdio.h>
#include <string.h>
#include "lhca.h"

#define CHECK(cond)                                                        \
  do {                                                                     \
    if (!(cond)) {                                                         \
      fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond,       \
              lhca_last_error());                                          \
      return 1;                                                            \
    }                                                                      \
  } while (0)

int main(void) {
  LhcaRule *rule = NULL, *big = NULL;
  LhcaPoly *cp = NULL;
  char *text;

  CHECK(lhca_rule_parse("10000", &rule) == LHCA_STATUS_OK);
  CHECK(lhca_rule_char_poly(rule, &cp) == LHCA_STATUS_OK);
  text = lhca_poly_to_string(cp);
  CHECK(strcmp(text, "x^5+x^4+x^2+x+1") == 0);
  lhca_string_free(text);

  CHECK(lhca_rule_concat(rule, 4, &big) == LHCA_STATUS_OK);
  text = lhca_rule_to_string(big);
  CHECK(strcmp(text, "10001100000000110001") == 0);
  lhca_string_free(text);

  uint8_t state[5] = {0, 0, 0, 0, 1};
  uint8_t col[62];
  size_t lc = 0, period = 0;
  LhcaPoly *mp = NULL;
  CHECK(lhca_run_column(rule, state, 5, 1, col, sizeof col) == LHCA_STATUS_OK);
  CHECK(lhca_berlekamp_massey(col, sizeof col, &lc, &mp) == LHCA_STATUS_OK);
  CHECK(lc == 5);
  CHECK(lhca_poly_equal(mp, cp));
  CHECK(lhca_minimal_period(col, sizeof col, &period) == LHCA_STATUS_OK);
  CHECK(period == 31);

  LhcaRule *bad = NULL;
  CHECK(lhca_rule_parse("10x", &bad) == LHCA_STATUS_INVALID_ARGUMENT);
  CHECK(strlen(lhca_last_error()) > 0);

  lhca_poly_free(mp);
  lhca_poly_free(cp);
  lhca_rule_free(big);
  lhca_rule_free(rule);
  puts("ok");
  return 0;
}
