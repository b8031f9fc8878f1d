#ifndef SUPERKIT_H
#define SUPERKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SkPolicy {
  /**
   * Conjugation keeps the order of odd factors.
   */
  SK_POLICY_FIX = 0,
  /**
   * Conjugation reverses the order of odd factors.
   */
  SK_POLICY_NEGATE = 1,
} SkPolicy;

typedef enum SkStatus {
  SK_STATUS_OK = 0,
  SK_STATUS_NULL_ARGUMENT = 1,
  SK_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed JSON or scalar text.
   */
  SK_STATUS_PARSE = 3,
  /**
   * A mathematical precondition failed (model not maximal, zero scaling constant, …).
   */
  SK_STATUS_PRECONDITION = 4,
  /**
   * The library panicked; this is a bug.
   */
  SK_STATUS_INTERNAL = 5,
} SkStatus;

/**
 * A superfield given chart by chart.
 */
typedef struct SkField SkField;

/**
 * A split model on the projective line.
 */
typedef struct SkModel SkModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. Valid until the next library call on
 * the same thread.
 */
const char *sk_last_error(void);

/**
 * Creates the split model `O(−k1) ⊕ O(−k2)` with scaling constants given as text such as
 * `"i"`, `"-1/2"` or `"1+2i"`.
 */
enum SkStatus sk_model_new(int64_t k1,
                           int64_t k2,
                           const char *lambda1,
                           const char *lambda2,
                           struct SkModel **out);

/**
 * Sets the even nilpotent shift from a Laurent-function JSON document.
 */
enum SkStatus sk_model_set_alpha(struct SkModel *model, const char *alpha_json);

void sk_model_free(struct SkModel *model);

enum SkStatus sk_model_is_maximal(const struct SkModel *model, bool *out);

enum SkStatus sk_model_berezinian_is_one(const struct SkModel *model, bool *out);

/**
 * The `∂/∂η` coefficients of the pushforward in both gluing directions, one 2×2 JSON matrix each.
 */
enum SkStatus sk_model_cocycle_json(const struct SkModel *model,
                                    char **out);

/**
 * Parses a superfield JSON document (`{"charts": {"V": {…}}}`).
 */
enum SkStatus sk_field_from_json(const char *json, struct SkField **out);

void sk_field_free(struct SkField *field);

/**
 * Consistency report, the same document the command line prints.
 */
enum SkStatus sk_consistency_json(const struct SkModel *model,
                                  const struct SkField *field,
                                  enum SkPolicy policy,
                                  char **out);

enum SkStatus sk_goodfield_json(const struct SkModel *model,
                                const struct SkField *field,
                                enum SkPolicy policy,
                                char **out);

enum SkStatus sk_paper_check_json(enum SkPolicy policy, char **out);

void sk_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUPERKIT_H */
