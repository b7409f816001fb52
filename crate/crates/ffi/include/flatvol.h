#ifndef FLATVOL_H
#define FLATVOL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible function.
typedef enum FvStatus {
  FV_STATUS_OK = 0,
  FV_STATUS_NULL_POINTER = 1,
  FV_STATUS_INVALID_UTF8 = 2,
  FV_STATUS_PARSE = 3,
  FV_STATUS_INVALID = 4,
  FV_STATUS_UNSUPPORTED = 5,
  FV_STATUS_INTERNAL = 6,
} FvStatus;

// Opaque evaluation context holding the memo table.
typedef struct FvEngine FvEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// New engine with an empty memo. Free with `fv_engine_free`.
struct FvEngine *fv_engine_new(void);

// # Safety
// `engine` must come from `fv_engine_new` and not be used afterwards. Null is ignored.
void fv_engine_free(struct FvEngine *engine);

// Number of memo hits so far; 0 for a null engine.
//
// # Safety
// `engine` must be null or a live engine.
uint64_t fv_engine_memo_hits(const struct FvEngine *engine);

// A_n at weights "mu_1,...,mu_n".
//
// # Safety
// `weights` must be a valid C string, `out` a valid pointer, `engine` null or live.
enum FvStatus fv_an(const struct FvEngine *engine, const char *weights, char **out);

// J_n at weights "mu_1,...,mu_n".
//
// # Safety
// As for `fv_an`.
enum FvStatus fv_jn(const struct FvEngine *engine, const char *weights, char **out);

// vol1 at weights "mu_1,...,mu_n", as "c*pi^k".
//
// # Safety
// As for `fv_an`.
enum FvStatus fv_vol1(const struct FvEngine *engine, const char *weights, char **out);

// Volume-form ratio of a signature "k_1,...,k_n:d"; with `neg_orders` the
// list holds -k_i.
//
// # Safety
// `signature` must be a valid C string and `out` a valid pointer.
enum FvStatus fv_mv_ratio(const char *signature, bool neg_orders, char **out);

// Table volume (1/d) * ratio * vol1 of a signature, as "c*pi^k".
//
// # Safety
// As for `fv_mv_ratio`; `engine` null or live.
enum FvStatus fv_mv_volume(const struct FvEngine *engine,
                           const char *signature,
                           bool neg_orders,
                           char **out);

// Message for the last failure on this thread, or null. Valid until the
// next call into the library on the same thread; do not free.
const char *fv_last_error(void);

// # Safety
// `s` must be null or a string returned by this library, freed once.
void fv_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FLATVOL_H */
