/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef LHCA_H
#define LHCA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>
#include <stddef.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum LhcaStatus {
  LHCA_STATUS_OK = 0,
  LHCA_STATUS_NULL_POINTER = 1,
  /**
   * Malformed text, non-0/1 bit, bad length or index.
   */
  LHCA_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A mathematical precondition failed (e.g. polynomial not primitive).
   */
  LHCA_STATUS_DOMAIN_ERROR = 3,
  /**
   * The keystream is not a primitive-power sequence.
   */
  LHCA_STATUS_OUTSIDE_MODEL = 4,
  LHCA_STATUS_PANIC = 5,
} LhcaStatus;

/**
 * Result of `lhca_linearize`.
 */
typedef struct LhcaModel LhcaModel;

/**
 * Polynomial over GF(2).
 */
typedef struct LhcaPoly LhcaPoly;

/**
 * 90/150 rule vector.
 */
typedef struct LhcaRule LhcaRule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread; empty if none. The
 * pointer stays valid until the next failing call on this thread.
 */
const char *lhca_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 */
void lhca_string_free(char *s);

/**
 * Parses `x^5+x^4+x^2+x+1` or `0x37`.
 */
enum LhcaStatus lhca_poly_parse(const char *text, struct LhcaPoly **out);

void lhca_poly_free(struct LhcaPoly *p);

/**
 * Sparse text form; NULL if `p` is NULL.
 */
char *lhca_poly_to_string(const struct LhcaPoly *p);

/**
 * Degree, -1 for the zero polynomial or a NULL handle.
 */
int64_t lhca_poly_degree(const struct LhcaPoly *p);

bool lhca_poly_equal(const struct LhcaPoly *a, const struct LhcaPoly *b);

enum LhcaStatus lhca_poly_pow(const struct LhcaPoly *p, uint32_t exponent, struct LhcaPoly **out);

/**
 * Primitivity for degrees 1..=32.
 */
enum LhcaStatus lhca_poly_is_primitive(const struct LhcaPoly *p, bool *out);

/**
 * Parses a rule vector such as `10001100000000110001` (leftmost = cell 1).
 */
enum LhcaStatus lhca_rule_parse(const char *text, struct LhcaRule **out);

void lhca_rule_free(struct LhcaRule *r);

char *lhca_rule_to_string(const struct LhcaRule *r);

/**
 * Number of cells, 0 for NULL.
 */
uintptr_t lhca_rule_len(const struct LhcaRule *r);

enum LhcaStatus lhca_rule_char_poly(const struct LhcaRule *r, struct LhcaPoly **out);

enum LhcaStatus lhca_rule_reverse(const struct LhcaRule *r, struct LhcaRule **out);

/**
 * Concatenated automaton for multiplicity `p`: `ceil(log2 p)` doublings.
 */
enum LhcaStatus lhca_rule_concat(const struct LhcaRule *r, uint32_t p, struct LhcaRule **out);

/**
 * Writes `len` bits of cell `cell` (1-based) starting from `state`
 * (`state_len` must equal the rule length).
 */
enum LhcaStatus lhca_run_column(const struct LhcaRule *r,
                                const uint8_t *state,
                                uintptr_t state_len,
                                uintptr_t cell,
                                uint8_t *out,
                                uintptr_t len);

enum LhcaStatus lhca_synthesize(const struct LhcaPoly *p,
                                struct LhcaRule **first,
                                struct LhcaRule **second);

/**
 * Cycle census as `{"L":..,"cycles":[..]}` JSON.
 */
enum LhcaStatus lhca_cycle_census_json(const struct LhcaRule *r, uintptr_t threads, char **out);

/**
 * Linear complexity and minimal polynomial of a window.
 */
enum LhcaStatus lhca_berlekamp_massey(const uint8_t *bits,
                                      uintptr_t len,
                                      uintptr_t *lc,
                                      struct LhcaPoly **poly);

enum LhcaStatus lhca_minimal_period(const uint8_t *bits, uintptr_t len, uintptr_t *out);

/**
 * Closed-form solution of `P(E)^p a_n = 0` with coefficients given as
 * polynomial-basis words.
 */
enum LhcaStatus lhca_solution_sequence(const struct LhcaPoly *base,
                                       uint32_t multiplicity,
                                       const uint64_t *coeffs,
                                       uintptr_t n_coeffs,
                                       uint8_t *out,
                                       uintptr_t len);

/**
 * Shrinking-generator keystream of `len` bits.
 */
enum LhcaStatus lhca_shrink(const struct LhcaPoly *control_poly,
                            const uint8_t *control_seed,
                            uintptr_t control_len,
                            const struct LhcaPoly *data_poly,
                            const uint8_t *data_seed,
                            uintptr_t data_len,
                            uint8_t *out,
                            uintptr_t len);

/**
 * Builds a CA model reproducing the keystream window.
 */
enum LhcaStatus lhca_linearize(const uint8_t *bits, uintptr_t len, struct LhcaModel **out);

void lhca_model_free(struct LhcaModel *m);

/**
 * `{rule, initial_state, read_cell, verified_period}` JSON.
 */
enum LhcaStatus lhca_model_json(const struct LhcaModel *m, char **out);

/**
 * Copy of the model's automaton.
 */
enum LhcaStatus lhca_model_rule(const struct LhcaModel *m, struct LhcaRule **out);

/**
 * 1-based read cell, 0 for NULL.
 */
uintptr_t lhca_model_read_cell(const struct LhcaModel *m);

/**
 * Period of the modelled keystream, 0 for NULL.
 */
uint64_t lhca_model_period(const struct LhcaModel *m);

/**
 * Writes the first `len` output bits of the model.
 */
enum LhcaStatus lhca_model_output(const struct LhcaModel *m, uint8_t *out, uintptr_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LHCA_H */
