#ifndef IGBOTEXT_H
#define IGBOTEXT_H

/* Generated by cbindgen from igbotext-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Metric selector for [`igbotext_similarity`].
typedef enum IgbotextMetric {
  IGBOTEXT_METRIC_EUCLIDEAN = 0,
  IGBOTEXT_METRIC_COSINE = 1,
  IGBOTEXT_METRIC_JACCARD = 2,
  IGBOTEXT_METRIC_DICE = 3,
} IgbotextMetric;

// Result codes for fallible calls.
typedef enum IgbotextStatus {
  IGBOTEXT_STATUS_OK = 0,
  // A required pointer argument was NULL.
  IGBOTEXT_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  IGBOTEXT_STATUS_INVALID_UTF8 = 2,
  // A file failed strict UTF-8 decoding.
  IGBOTEXT_STATUS_DECODE = 3,
  IGBOTEXT_STATUS_IO = 4,
  // Bad configuration, including a missing stop-word list.
  IGBOTEXT_STATUS_CONFIG = 5,
  IGBOTEXT_STATUS_PARSE = 6,
  // N-gram order below 1.
  IGBOTEXT_STATUS_INVALID_ORDER = 7,
  // The two vectors have different n-gram orders.
  IGBOTEXT_STATUS_ORDER_MISMATCH = 8,
  IGBOTEXT_STATUS_INTERNAL = 9,
} IgbotextStatus;

// Opaque handle over a pipeline configuration and its resolved stop-word
// list.
typedef struct IgbotextPipeline IgbotextPipeline;

// Opaque handle over one document's n-gram frequency vector.
typedef struct IgbotextVector IgbotextVector;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static string; do not free.
const char *igbotext_version(void);

// Creates a pipeline with default settings and the built-in stop-word
// list. Never fails.
struct IgbotextPipeline *igbotext_pipeline_new_default(void);

// Creates a pipeline from an optional `key = value` config file and an
// optional stop-word list file (overriding the config's list). Either path
// may be NULL. Returns NULL on failure with `status` (when non-NULL) set.
//
// # Safety
// `config_path` and `stopwords_path` must be NUL-terminated strings or
// NULL; `status` must be a valid pointer or NULL.
struct IgbotextPipeline *igbotext_pipeline_new(const char *config_path,
                                               const char *stopwords_path,
                                               enum IgbotextStatus *status);

// # Safety
// `pipeline` must be a pointer returned by a pipeline constructor, not yet
// freed, or NULL.
void igbotext_pipeline_free(struct IgbotextPipeline *pipeline);

// Runs the full preprocessing pipeline on `text` and returns the surviving
// tokens joined by `\n` (empty string when nothing survives). Returns NULL
// on failure. Free the result with [`igbotext_string_free`].
//
// # Safety
// `pipeline` must be a live pipeline handle; `text` a NUL-terminated
// string; `status` a valid pointer or NULL.
char *igbotext_preprocess(const struct IgbotextPipeline *pipeline,
                          const char *text,
                          enum IgbotextStatus *status);

// Preprocesses `text` and counts its n-grams at order `n`. `doc_id` may be
// NULL. Returns NULL on failure. Free with [`igbotext_vector_free`].
//
// # Safety
// `pipeline` must be a live pipeline handle; `doc_id` a NUL-terminated
// string or NULL; `text` a NUL-terminated string; `status` a valid pointer
// or NULL.
struct IgbotextVector *igbotext_vectorize(const struct IgbotextPipeline *pipeline,
                                          const char *doc_id,
                                          const char *text,
                                          size_t n,
                                          enum IgbotextStatus *status);

// # Safety
// `vector` must be a pointer returned by [`igbotext_vectorize`], not yet
// freed, or NULL.
void igbotext_vector_free(struct IgbotextVector *vector);

// Number of distinct features, or 0 for NULL.
//
// # Safety
// `vector` must be a live vector handle or NULL.
size_t igbotext_vector_num_features(const struct IgbotextVector *vector);

// Sum of all frequencies, or 0 for NULL.
//
// # Safety
// `vector` must be a live vector handle or NULL.
uint64_t igbotext_vector_total_count(const struct IgbotextVector *vector);

// Frequency of one feature (n words joined by single spaces); 0 when the
// feature is absent or an argument is NULL.
//
// # Safety
// `vector` must be a live vector handle or NULL; `feature` a
// NUL-terminated string or NULL.
uint64_t igbotext_vector_get(const struct IgbotextVector *vector, const char *feature);

// Computes `metric` between two vectors of equal order into `out_value`.
//
// # Safety
// `a` and `b` must be live vector handles; `out_value` a valid pointer.
enum IgbotextStatus igbotext_similarity(enum IgbotextMetric metric,
                                        const struct IgbotextVector *a,
                                        const struct IgbotextVector *b,
                                        double *out_value);

// Message for the most recent failure on this thread, or NULL when the
// last call succeeded. Free with [`igbotext_string_free`].
char *igbotext_last_error_message(void);

// Releases a string returned by this library. NULL is a no-op.
//
// # Safety
// `s` must be a string returned by this library, not yet freed, or NULL.
void igbotext_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IGBOTEXT_H */
