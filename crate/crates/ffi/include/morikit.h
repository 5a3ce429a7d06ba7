#ifndef MORIKIT_H
#define MORIKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MorikitStatus {
  MORIKIT_STATUS_OK = 0,
  MORIKIT_STATUS_NULL_POINTER = 1,
  MORIKIT_STATUS_INVALID_ARGUMENT = 2,
  MORIKIT_STATUS_INCOMPLETE = 3,
  MORIKIT_STATUS_UNKNOWN_COMMAND = 4,
  MORIKIT_STATUS_IO = 5,
  MORIKIT_STATUS_PANIC = 6,
} MorikitStatus;

/**
 * Opaque model handle.
 */
typedef struct MorikitModel MorikitModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds `S^[n]` from a K3 Picard lattice (`pic_rank`×`pic_rank` row-major
 * Gram matrix) and a polarization in Picard coordinates. `ample` is either
 * null or `pic_rank + 2` coordinates of an ample class overriding the
 * polarization.
 *
 * # Safety
 * Pointers must be valid for the stated lengths; `out` must be writable.
 */
enum MorikitStatus morikit_model_from_k3(const int64_t *pic_gram,
                                         size_t pic_rank,
                                         const int64_t *polarization,
                                         int64_t n,
                                         const int64_t *ample,
                                         struct MorikitModel **out);

/**
 * Builds a model from a `rank`×`rank` row-major Gram matrix, a Mukai
 * vector and an ample class, both of length `rank`.
 *
 * # Safety
 * Pointers must be valid for the stated lengths; `out` must be writable.
 */
enum MorikitStatus morikit_model_from_raw(const int64_t *gram,
                                          size_t rank,
                                          const int64_t *v,
                                          const int64_t *ample,
                                          struct MorikitModel **out);

/**
 * # Safety
 * `model` must be null or a handle from this library not yet freed.
 */
void morikit_model_free(struct MorikitModel *model);

/**
 * Writes `n` to `out`; fails if it does not fit in 64 bits.
 *
 * # Safety
 * `model` must be a live handle and `out` writable.
 */
enum MorikitStatus morikit_model_n(const struct MorikitModel *model, int64_t *out);

/**
 * Rank of `Λ_alg`, or 0 for a null handle.
 *
 * # Safety
 * `model` must be null or a live handle.
 */
size_t morikit_model_rank(const struct MorikitModel *model);

/**
 * Rank of `H²_alg = v⊥`, or 0 for a null handle.
 *
 * # Safety
 * `model` must be null or a live handle.
 */
size_t morikit_model_h2_rank(const struct MorikitModel *model);

/**
 * Runs a command (`build`, `mori`, `nef`, `movable`, `check`, `slice`) on a
 * model and writes the JSON output to `out`. `height_bound` is null or a
 * rational `"p/q"`. Output carries no timestamp.
 *
 * # Safety
 * `model` must be a live handle, string arguments NUL-terminated, `out`
 * writable.
 */
enum MorikitStatus morikit_model_run(const struct MorikitModel *model,
                                     const char *command,
                                     const char *height_bound,
                                     char **out);

/**
 * Runs a command on a JSON configuration, as the command line tool does
 * with `--deterministic` when `deterministic` is true.
 *
 * # Safety
 * String arguments must be NUL-terminated; `out` writable.
 */
enum MorikitStatus morikit_run_json(const char *command,
                                    const char *config_json,
                                    bool deterministic,
                                    char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void morikit_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next call into the library on this thread.
 */
const char *morikit_last_error_message(void);

/**
 * Schema identifier of the JSON documents produced by the library.
 */
const char *morikit_schema(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MORIKIT_H */
