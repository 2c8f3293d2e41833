#ifndef MCKAY_H
#define MCKAY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Zero is success.
 */
typedef enum McStatus {
  MC_STATUS_OK = 0,
  MC_STATUS_NULL_ARGUMENT = 1,
  MC_STATUS_INVALID_UTF8 = 2,
  MC_STATUS_PARSE = 3,
  MC_STATUS_VALIDATION = 4,
  MC_STATUS_DEGENERATE = 5,
  MC_STATUS_INVALID_FLIP = 6,
  MC_STATUS_PRECONDITION = 7,
  MC_STATUS_RESOURCE_LIMIT = 8,
  MC_STATUS_INVARIANT = 9,
  MC_STATUS_OUT_OF_RANGE = 10,
  MC_STATUS_BUFFER_TOO_SMALL = 11,
  MC_STATUS_PANIC = 12,
} McStatus;

typedef enum McWallType {
  MC_WALL_TYPE_ZERO = 0,
  MC_WALL_TYPE_ONE = 1,
  MC_WALL_TYPE_THREE = 3,
} McWallType;

/**
 * A GIT chamber with its moduli space and tautological bundles.
 */
typedef struct McChamber McChamber;

/**
 * A finite abelian subgroup of SL(3,C).
 */
typedef struct McGroup McGroup;

/**
 * Last error message on this thread, or null. The pointer stays valid
 * until the next `mckay_*` call on the same thread.
 */
const char *mckay_last_error(void);

/**
 * Parse a group such as `1/11(1,2,8)` or `1/6(1,1,4)+1/2(1,0,1)`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `group_out` a valid pointer.
 */
enum McStatus mckay_group_parse(const char *spec, struct McGroup **group_out);

/**
 * Order of the group.
 *
 * # Safety
 * `group` must be a live handle and `order_out` a valid pointer.
 */
enum McStatus mckay_group_order(const struct McGroup *group, size_t *order_out);

/**
 * # Safety
 * `group` must be null or a handle from [`mckay_group_parse`] not yet freed.
 */
void mckay_group_free(struct McGroup *group);

/**
 * The G-Hilb chamber.
 *
 * # Safety
 * `group` must be a live handle and `chamber_out` a valid pointer.
 */
enum McStatus mckay_chamber_ghilb(const struct McGroup *group, struct McChamber **chamber_out);

/**
 * The chamber of a state token produced by [`mckay_chamber_token`].
 *
 * # Safety
 * `group` must be a live handle, `token` a NUL-terminated string and
 * `chamber_out` a valid pointer.
 */
enum McStatus mckay_chamber_from_token(const struct McGroup *group,
                                       const char *token,
                                       struct McChamber **chamber_out);

/**
 * Number of facets.
 *
 * # Safety
 * `chamber` must be a live handle and `count_out` a valid pointer.
 */
enum McStatus mckay_chamber_facet_count(const struct McChamber *chamber, size_t *count_out);

/**
 * Reduced normal of facet `k`, written into `buf` (order − 1 entries).
 *
 * # Safety
 * `chamber` must be a live handle and `buf` must point to `len` writable
 * `int64_t`s.
 */
enum McStatus mckay_chamber_facet_normal(const struct McChamber *chamber,
                                         size_t k,
                                         int64_t *buf,
                                         size_t len);

/**
 * Wall type of facet `k`.
 *
 * # Safety
 * `chamber` must be a live handle and `type_out` a valid pointer.
 */
enum McStatus mckay_chamber_facet_type(const struct McChamber *chamber,
                                       size_t k,
                                       enum McWallType *type_out);

/**
 * Facets as text, one `label: inequality [type t]` per line.
 *
 * # Safety
 * `group` and `chamber` must be live handles and `text_out` a valid
 * pointer. Free the result with [`mckay_string_free`].
 */
enum McStatus mckay_chamber_describe(const struct McGroup *group,
                                     const struct McChamber *chamber,
                                     char **text_out);

/**
 * Cross facet `k` into the adjacent chamber.
 *
 * # Safety
 * `group` and `chamber` must be live handles and `chamber_out` a valid
 * pointer.
 */
enum McStatus mckay_chamber_cross(const struct McGroup *group,
                                  const struct McChamber *chamber,
                                  size_t k,
                                  struct McChamber **chamber_out);

/**
 * State token of a chamber, replayable with [`mckay_chamber_from_token`].
 *
 * # Safety
 * `chamber` must be a live handle and `token_out` a valid pointer. Free
 * the result with [`mckay_string_free`].
 */
enum McStatus mckay_chamber_token(const struct McChamber *chamber, char **token_out);

/**
 * # Safety
 * `chamber` must be null or a handle from this library not yet freed.
 */
void mckay_chamber_free(struct McChamber *chamber);

/**
 * JSON report of `ghilb`, `markings`, `chamber`, `enumerate` or `verify`
 * for a group spec.
 *
 * # Safety
 * `command` and `spec` must be NUL-terminated strings and `json_out` a
 * valid pointer. Free the result with [`mckay_string_free`].
 */
enum McStatus mckay_report_json(const char *command, const char *spec, char **json_out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void mckay_string_free(char *s);

#endif  /* MCKAY_H */
