#ifndef PLOTKIN_WEF_H
#define PLOTKIN_WEF_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes of the fallible entry points.
typedef enum PwStatus {
  PW_STATUS_OK = 0,
  PW_STATUS_NULL_POINTER = 1,
  PW_STATUS_INVALID_ARGUMENT = 2,
  PW_STATUS_PARSE = 3,
  PW_STATUS_LENGTH_MISMATCH = 4,
  PW_STATUS_BUDGET = 5,
  PW_STATUS_INVALID_UTF8 = 6,
  PW_STATUS_PANIC = 7,
} PwStatus;

// Opaque weight enumerator.
typedef struct PwEnumerator PwEnumerator;

// Opaque code tree.
typedef struct PwTree PwTree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread. The pointer stays
// valid until the next failing call on the same thread; do not free it.
const char *pw_last_error(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void pw_string_free(char *s);

// Parses a polynomial such as `"1 + 14x^4 + x^8"` into a length-`n` enumerator.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum PwStatus pw_enumerator_parse_poly(const char *text, size_t n, struct PwEnumerator **out);

// Parses `{"n": ..., "coeffs": {...}}`.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum PwStatus pw_enumerator_from_json(const char *json, struct PwEnumerator **out);

// # Safety
// `e` must be null or a handle from this library, not yet freed.
void pw_enumerator_free(struct PwEnumerator *e);

// Code length `n`, or 0 for a null handle.
//
// # Safety
// `e` must be null or a live handle.
size_t pw_enumerator_length(const struct PwEnumerator *e);

// Smallest positive weight with a nonzero coefficient, or -1 if there is
// none (or `e` is null).
//
// # Safety
// `e` must be null or a live handle.
int64_t pw_enumerator_min_positive_weight(const struct PwEnumerator *e);

// Coefficient of `X^w` as `"p"` or `"p/q"`.
//
// # Safety
// `e` must be a live handle and `out` a valid pointer.
enum PwStatus pw_enumerator_coefficient(const struct PwEnumerator *e, size_t w, char **out);

// Canonical polynomial text; null if `e` is null. Free with [`pw_string_free`].
//
// # Safety
// `e` must be null or a live handle.
char *pw_enumerator_to_poly(const struct PwEnumerator *e);

// JSON form; null if `e` is null. Free with [`pw_string_free`].
//
// # Safety
// `e` must be null or a live handle.
char *pw_enumerator_to_json(const struct PwEnumerator *e);

// Ensemble enumerator of `{(u + vP, v)}` with `u` from `a0` and `v` from `a1`.
//
// # Safety
// `a0`, `a1` must be live handles and `out` a valid pointer.
enum PwStatus pw_combine(const struct PwEnumerator *a0,
                         const struct PwEnumerator *a1,
                         struct PwEnumerator **out);

// Single coefficient `A_w` of [`pw_combine`], as a string.
//
// # Safety
// `a0`, `a1` must be live handles and `out` a valid pointer.
enum PwStatus pw_combine_single_weight(const struct PwEnumerator *a0,
                                       const struct PwEnumerator *a1,
                                       size_t w,
                                       char **out);

// Truncated union bound `sum_{w=1}^{W} A_w Q(sqrt(2 w R Eb/N0))`.
//
// # Safety
// `e` must be a live handle and `out` a valid pointer.
enum PwStatus pw_truncated_union_bound(const struct PwEnumerator *e,
                                       size_t truncate,
                                       double rate,
                                       double ebn0_db,
                                       double *out);

// Exhaustive permutation-average spectrum for two generator matrices in
// JSON (`{"n": 3, "rows": ["110", "011"]}`).
//
// # Safety
// `g0_json`, `g1_json` must be NUL-terminated strings and `out` a valid pointer.
enum PwStatus pw_oracle_exhaustive(const char *g0_json,
                                   const char *g1_json,
                                   struct PwEnumerator **out);

// Reed-Muller tree `RM(r, m)`.
//
// # Safety
// `out` must be a valid pointer.
enum PwStatus pw_tree_reed_muller(int64_t r, uint32_t m, struct PwTree **out);

// Depth-`m` tree with the given active leaf indices (`active` may be null
// when `len` is 0).
//
// # Safety
// `active` must point to `len` readable `size_t` values and `out` must be valid.
enum PwStatus pw_tree_from_active_set(uint32_t m,
                                      const size_t *active,
                                      size_t len,
                                      struct PwTree **out);

// Tree from `{"m": ..., "active": [...]}` or `{"rm": {"r": ..., "m": ...}}`.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum PwStatus pw_tree_from_json(const char *json, struct PwTree **out);

// # Safety
// `t` must be null or a handle from this library, not yet freed.
void pw_tree_free(struct PwTree *t);

// # Safety
// `t` must be null or a live handle.
size_t pw_tree_length(const struct PwTree *t);

// # Safety
// `t` must be null or a live handle.
size_t pw_tree_dimension(const struct PwTree *t);

// Ensemble spectrum of the tree.
//
// # Safety
// `t` must be a live handle and `out` a valid pointer.
enum PwStatus pw_tree_ensemble_wef(const struct PwTree *t, struct PwEnumerator **out);

// Identity-interleaver generator matrix as JSON; null if `t` is null.
//
// # Safety
// `t` must be null or a live handle.
char *pw_tree_generator_json(const struct PwTree *t);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PLOTKIN_WEF_H */
