#ifndef CONEKIT_H
#define CONEKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ConekitStatus {
  CONEKIT_STATUS_OK = 0,
  CONEKIT_STATUS_NULL_POINTER = 1,
  CONEKIT_STATUS_INVALID_UTF8 = 2,
  CONEKIT_STATUS_PARSE_ERROR = 3,
  CONEKIT_STATUS_INVALID_INPUT = 4,
  CONEKIT_STATUS_INTERNAL = 5,
  CONEKIT_STATUS_PANIC = 6,
} ConekitStatus;

typedef enum ConekitQuestion {
  CONEKIT_QUESTION_NON_EXPANSIVE = 0,
  CONEKIT_QUESTION_MONOTONE = 1,
} ConekitQuestion;

typedef enum ConekitVerdict {
  CONEKIT_VERDICT_YES = 0,
  CONEKIT_VERDICT_NO = 1,
  CONEKIT_VERDICT_NO_FOR_CONES_CONTAINING_V = 2,
  CONEKIT_VERDICT_INCONCLUSIVE = 3,
} ConekitVerdict;

/**
 * Opaque parsed reaction network.
 */
typedef struct ConekitNetwork ConekitNetwork;

/**
 * Opaque analysis result.
 */
typedef struct ConekitReport ConekitReport;

/**
 * Saturation limits; obtain defaults from [`conekit_options_default`].
 */
typedef struct ConekitOptions {
  uint32_t max_iterations;
  uint64_t snap_max_denominator;
  /**
   * Snapping distance `numerator / denominator`.
   */
  int64_t snap_distance_numerator;
  int64_t snap_distance_denominator;
  uint32_t max_figure_size;
} ConekitOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failing call on this thread, or null. Valid until the next
 * failing call on this thread; do not free.
 */
const char *conekit_last_error(void);

struct ConekitOptions conekit_options_default(void);

/**
 * Parses `text` in the network grammar into `*out`.
 *
 * # Safety
 * `text` is a NUL-terminated string; `out` is writable.
 */
enum ConekitStatus conekit_network_parse(const char *text, struct ConekitNetwork **out);

/**
 * # Safety
 * `net` is null or a handle from [`conekit_network_parse`] not yet freed.
 */
void conekit_network_free(struct ConekitNetwork *net);

/**
 * Number of species, or 0 for a null handle.
 *
 * # Safety
 * `net` is null or a live handle.
 */
size_t conekit_network_species_count(const struct ConekitNetwork *net);

/**
 * Number of reactions, or 0 for a null handle.
 *
 * # Safety
 * `net` is null or a live handle.
 */
size_t conekit_network_reaction_count(const struct ConekitNetwork *net);

/**
 * Answers `question` for `net`. `options` may be null for the defaults.
 *
 * # Safety
 * `net` is a live handle; `options` is null or readable; `out` is writable.
 */
enum ConekitStatus conekit_analyze(const struct ConekitNetwork *net,
                                   enum ConekitQuestion question,
                                   const struct ConekitOptions *options,
                                   struct ConekitReport **out);

/**
 * # Safety
 * `report` is null or a handle from [`conekit_analyze`] not yet freed.
 */
void conekit_report_free(struct ConekitReport *report);

/**
 * Verdict of a report; `Inconclusive` for a null handle.
 *
 * # Safety
 * `report` is null or a live handle.
 */
enum ConekitVerdict conekit_report_verdict(const struct ConekitReport *report);

/**
 * The report as JSON in `*out`; release it with [`conekit_string_free`].
 *
 * # Safety
 * `report` is a live handle; `out` is writable.
 */
enum ConekitStatus conekit_report_json(const struct ConekitReport *report, char **out);

/**
 * Transfers a certified figure (JSON figure object) to the dual network. `*out` receives
 * `{dual, transferred}` as JSON.
 *
 * # Safety
 * `net` is a live handle; `figure_json` is a NUL-terminated string; `out` is writable.
 */
enum ConekitStatus conekit_dualize(const struct ConekitNetwork *net,
                                   const char *figure_json,
                                   char **out);

/**
 * # Safety
 * `s` is null or a string returned by this library and not yet freed.
 */
void conekit_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONEKIT_H */
