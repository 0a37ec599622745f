/* C interface for the gnum exact-arithmetic library. */

#ifndef GNUM_H
#define GNUM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Magnitude classes, mirroring the library taxonomy.
 */
typedef enum {
  GNUM_ZERO = 0,
  GNUM_INFINITESIMAL = 1,
  GNUM_APPRECIABLE = 2,
  GNUM_UNBOUNDED = 3,
} GnumClass;

/**
 * Status codes returned by every fallible function.
 */
typedef enum {
  GNUM_OK = 0,
  GNUM_ERR_DOMAIN = 1,
  GNUM_ERR_ARITHMETIC = 2,
  GNUM_ERR_SYNTAX = 3,
  GNUM_ERR_NULL_POINTER = 4,
  GNUM_ERR_UTF8 = 5,
} GnumStatus;

/**
 * Opaque hyperreal element.
 */
typedef struct GnumHyper GnumHyper;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent error on this thread, or null. Borrowed;
 * valid until the next failing call on the same thread.
 */
const char *gnum_last_error_message(void);

/**
 * Frees a string returned by this library. Null is a no-op.
 */
void gnum_string_free(char *s);

/**
 * Parses the hyperreal text grammar into a new handle.
 */
GnumStatus gnum_hyper_parse(const char *text, GnumHyper **out);

void gnum_hyper_free(GnumHyper *h);

GnumHyper *gnum_hyper_clone(const GnumHyper *h);

GnumStatus gnum_hyper_add(const GnumHyper *a, const GnumHyper *b, GnumHyper **out);

GnumStatus gnum_hyper_sub(const GnumHyper *a, const GnumHyper *b, GnumHyper **out);

GnumStatus gnum_hyper_mul(const GnumHyper *a, const GnumHyper *b, GnumHyper **out);

GnumStatus gnum_hyper_div(const GnumHyper *a, const GnumHyper *b, GnumHyper **out);

/**
 * Writes −1, 0, or 1 to `out` for less / equal / greater.
 */
GnumStatus gnum_hyper_compare(const GnumHyper *a, const GnumHyper *b, int *out);

GnumStatus gnum_hyper_classify(const GnumHyper *h, GnumClass *out);

/**
 * Standard part of a finite element as "p/q" text.
 */
GnumStatus gnum_hyper_std(const GnumHyper *h, char **out);

/**
 * Canonical text form, re-parseable by `gnum_hyper_parse`.
 */
GnumStatus gnum_hyper_to_string(const GnumHyper *h, char **out);

/**
 * Exact value of a sequence spec given as JSON, returned as "p/q".
 */
GnumStatus gnum_value_exact(const char *spec_json, char **out);

/**
 * Nonterminating expansion of a rational in [0, 1], returned as spec JSON.
 */
GnumStatus gnum_expand(const char *value, uint32_t base, char **out);

/**
 * Value-preserving change of basis; input and output are spec JSON.
 */
GnumStatus gnum_change_basis(const char *spec_json, uint32_t target_base, char **out);

/**
 * Bit-encodes a rational relative to [lo, hi]; all three are "p/q" text.
 */
GnumStatus gnum_encode(const char *value,
                       const char *lo,
                       const char *hi,
                       uintptr_t depth,
                       char **out);

/**
 * The chain-limit value lo + (hi − lo) · v₂(spec), as "p/q".
 */
GnumStatus gnum_dedekind_value(const char *lo, const char *hi, const char *spec_json, char **out);

/**
 * Classifies the bisection-limit set for hyperreal endpoint expressions;
 * returns the descriptor JSON.
 */
GnumStatus gnum_dedekind_classify(const char *lo_expr,
                                  const char *hi_expr,
                                  const char *spec_json,
                                  char **out);

/**
 * Exact cylinder measure of comma-separated digit strings, as "p/q".
 */
GnumStatus gnum_cylinder_measure(uint32_t base, const char *strings, char **out);

/**
 * Validates a cover JSON, optionally against a target spec JSON (nullable);
 * returns the report JSON.
 */
GnumStatus gnum_verify_cover(const char *cover_json, const char *target_json, char **out);

/**
 * Runs the statistical proxy battery on an ASCII '0'/'1' sample (whitespace
 * ignored) at the given alpha ("0.01" or "0.05"); returns the report JSON.
 */
GnumStatus gnum_battery(const char *sample, const char *alpha, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* GNUM_H */
