#ifndef FLOWGAME_H
#define FLOWGAME_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `FG_STATUS_OK` is zero.
 */
typedef enum FgStatus {
  FG_STATUS_OK = 0,
  FG_STATUS_NULL_POINTER = 1,
  FG_STATUS_INVALID_UTF8 = 2,
  FG_STATUS_PARSE_ERROR = 3,
  FG_STATUS_UNKNOWN_ARC = 4,
  FG_STATUS_NOT_CONVEX = 5,
  FG_STATUS_PANIC = 6,
} FgStatus;

/**
 * A parsed flow network.
 */
typedef struct FgNetwork FgNetwork;

/**
 * The outcome of [`fg_recognize`], with the network it refers to.
 */
typedef struct FgVerdict FgVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses an instance document. On success `*out` holds a new handle.
 *
 * # Safety
 * `text` is a NUL-terminated string; `out` is writable.
 */
enum FgStatus fg_network_parse(const char *text, struct FgNetwork **out);

/**
 * # Safety
 * `network` is null or a handle from [`fg_network_parse`] not yet freed.
 */
void fg_network_free(struct FgNetwork *network);

/**
 * Number of arcs, or 0 for a null handle.
 *
 * # Safety
 * `network` is null or a live handle.
 */
size_t fg_network_arc_count(const struct FgNetwork *network);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `network` is null or a live handle.
 */
size_t fg_network_vertex_count(const struct FgNetwork *network);

/**
 * Canonical instance document.
 *
 * # Safety
 * `network` is a live handle; `out` is writable.
 */
enum FgStatus fg_network_to_text(const struct FgNetwork *network, char **out);

/**
 * Decides convexity. The verdict is returned whether or not the game is
 * convex; query it with [`fg_verdict_is_convex`].
 *
 * # Safety
 * `network` is a live handle; `out` is writable.
 */
enum FgStatus fg_recognize(const struct FgNetwork *network, struct FgVerdict **out);

/**
 * # Safety
 * `verdict` is null or a handle from [`fg_recognize`] not yet freed.
 */
void fg_verdict_free(struct FgVerdict *verdict);

/**
 * # Safety
 * `verdict` is null or a live handle.
 */
bool fg_verdict_is_convex(const struct FgVerdict *verdict);

/**
 * Number of certificate paths; 0 when not convex or null.
 *
 * # Safety
 * `verdict` is null or a live handle.
 */
size_t fg_verdict_path_count(const struct FgVerdict *verdict);

/**
 * The verdict document, as printed by `flowgame check --format json`.
 *
 * # Safety
 * `verdict` is a live handle; `out` is writable.
 */
enum FgStatus fg_verdict_to_json(const struct FgVerdict *verdict, char **out);

/**
 * Value of a coalition, written as `"p/q"` or an integer. `coalition` is a
 * comma-separated list of arc labels, or `@all`.
 *
 * # Safety
 * `network` is a live handle; `coalition` is a NUL-terminated string; `out`
 * is writable.
 */
enum FgStatus fg_gamma(const struct FgNetwork *network, const char *coalition, char **out);

/**
 * Shapley value of a convex instance as a JSON object keyed by arc label.
 * Returns `FG_STATUS_NOT_CONVEX` otherwise.
 *
 * # Safety
 * `network` is a live handle; `out` is writable.
 */
enum FgStatus fg_shapley_json(const struct FgNetwork *network, char **out);

/**
 * Message for the last failed call on this thread, or an empty string. The
 * pointer stays valid until the next call into this library on the thread.
 */
const char *fg_last_error_message(void);

/**
 * # Safety
 * `s` is null or a string returned by this library, not yet freed.
 */
void fg_string_free(char *s);

/**
 * Library version, statically allocated.
 */
const char *fg_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FLOWGAME_H */
