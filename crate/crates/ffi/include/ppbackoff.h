#ifndef PPBACKOFF_H
#define PPBACKOFF_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * `level` value for decisions made by the competitive procedure.
 */
#define PPB_LEVEL_COMPETITIVE -1

/**
 * `level` value for the evidence-free default (noun attachment).
 */
#define PPB_LEVEL_DEFAULT -2

/**
 * Result of every fallible call.
 */
typedef enum PpbStatus {
  PPB_STATUS_OK = 0,
  PPB_STATUS_NULL_POINTER = 1,
  PPB_STATUS_INVALID_UTF8 = 2,
  PPB_STATUS_IO = 3,
  PPB_STATUS_PARSE = 4,
  PPB_STATUS_INVALID_ARGUMENT = 5,
  PPB_STATUS_PANIC = 6,
} PpbStatus;

/**
 * Opaque trained model.
 */
typedef struct PpbModel PpbModel;

/**
 * An attachment decision.
 */
typedef struct PpbDecision {
  /**
   * Configuration code, 1-based within the query's kind.
   */
  uint8_t config;
  /**
   * Back-off depth (0 = full tuple), or one of the `PPB_LEVEL_*` values.
   */
  int32_t level;
  /**
   * Estimated probability of the chosen configuration.
   */
  double probability;
} PpbDecision;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Load a model file. On success `*out` receives a handle owned by the caller.
 */
enum PpbStatus ppb_model_load(const char *path, struct PpbModel **out);

/**
 * Load a model from the bytes of a model file.
 */
enum PpbStatus ppb_model_load_from_bytes(const uint8_t *data, uintptr_t len, struct PpbModel **out);

/**
 * Train a model from the bytes of a tuple file. `lowercase` selects the
 * normalization policy the words must already satisfy.
 */
enum PpbStatus ppb_model_train_from_tuples(const uint8_t *data,
                                           uintptr_t len,
                                           bool lowercase,
                                           struct PpbModel **out);

/**
 * Write the model to `path` in the model file format.
 */
enum PpbStatus ppb_model_save(const struct PpbModel *model, const char *path);

/**
 * Release a model. NULL is ignored.
 */
void ppb_model_free(struct PpbModel *model);

/**
 * Decide the attachment of a `kind`-PP query. `heads` points to
 * `2 * kind + 1` strings in the order v, n1, p1, n2, p2, n3, p3. Words are
 * normalized with the model's policy.
 */
enum PpbStatus ppb_predict(const struct PpbModel *model,
                           uint8_t kind,
                           const char *const *heads,
                           struct PpbDecision *out);

/**
 * Combine three first-PP preferences (1 = verb, 2 = noun) into a two-PP
 * configuration code.
 */
enum PpbStatus ppb_find_best_configuration(uint8_t first,
                                           uint8_t vs_n2,
                                           uint8_t vs_n1,
                                           uint64_t support_n2,
                                           uint64_t support_n1,
                                           uint8_t *out);

/**
 * Message for the last failed call on this thread, or NULL. Valid until
 * the next call into this library on the same thread.
 */
const char *ppb_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *ppb_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PPBACKOFF_H */
