#ifndef CHOW_KUNNETH_H
#define CHOW_KUNNETH_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a call.
 */
typedef enum CkStatus {
  CK_STATUS_OK = 0,
  CK_STATUS_NULL_POINTER = 1,
  CK_STATUS_INVALID_UTF8 = 2,
  /**
   * Unparseable document or invalid space description.
   */
  CK_STATUS_MALFORMED = 3,
  CK_STATUS_DEGENERATE_PAIRING = 4,
  CK_STATUS_RING_MISMATCH = 5,
  CK_STATUS_NOT_IDEMPOTENT = 6,
  CK_STATUS_PRECONDITION_VIOLATED = 7,
  /**
   * Any other engine error; see the last error message.
   */
  CK_STATUS_ENGINE = 8,
  /**
   * A panic was caught at the boundary.
   */
  CK_STATUS_INTERNAL = 9,
} CkStatus;

/**
 * Opaque projector set.
 */
typedef struct CkProjectorSet CkProjectorSet;

/**
 * Opaque cohomology ring.
 */
typedef struct CkRing CkRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *ck_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void ck_string_free(char *s);

/**
 * Builds a ring from a JSON space description.
 *
 * # Safety
 * `spec_json` must be a NUL-terminated string and `out` writable.
 */
enum CkStatus ck_ring_from_spec(const char *spec_json, struct CkRing **out);

/**
 * # Safety
 * `ring` must be null or a handle from [`ck_ring_from_spec`] not yet freed.
 */
void ck_ring_free(struct CkRing *ring);

/**
 * Number of basis elements, 0 for a null handle.
 *
 * # Safety
 * `ring` must be null or a live handle.
 */
size_t ck_ring_rank(const struct CkRing *ring);

/**
 * Copies the Betti numbers `b_0 .. b_{2d}` into `out`, which holds `len`
 * entries, and stores the count in `written`. Fails with `PreconditionViolated`
 * if `len` is too small.
 *
 * # Safety
 * `ring` must be a live handle, `out` must hold `len` entries and `written`
 * must be writable.
 */
enum CkStatus ck_ring_betti_numbers(const struct CkRing *ring,
                                    size_t *out,
                                    size_t len,
                                    size_t *written);

/**
 * The ring written out in full as JSON, or null on failure.
 *
 * # Safety
 * `ring` must be a live handle.
 */
char *ck_ring_to_json(const struct CkRing *ring);

/**
 * Constructs a complete Chow–Künneth projector set on `ring`.
 *
 * # Safety
 * `ring` must be a live handle and `out` writable.
 */
enum CkStatus ck_projectors_build(const struct CkRing *ring, struct CkProjectorSet **out);

/**
 * Parses a projector file.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum CkStatus ck_projectors_from_json(const char *json, struct CkProjectorSet **out);

/**
 * The projector file as JSON, or null for a null handle.
 *
 * # Safety
 * `set` must be a live handle.
 */
char *ck_projectors_to_json(const struct CkProjectorSet *set);

/**
 * Number of members, counting the remainder.
 *
 * # Safety
 * `set` must be null or a live handle.
 */
size_t ck_projectors_len(const struct CkProjectorSet *set);

/**
 * Verifies the set. `all_pass` receives the verdict; when `report_json`
 * is not null it receives the report, to be freed with [`ck_string_free`].
 *
 * # Safety
 * `set` must be a live handle, `all_pass` writable and `report_json` null
 * or writable.
 */
enum CkStatus ck_projectors_verify(const struct CkProjectorSet *set,
                                   bool *all_pass,
                                   char **report_json);

/**
 * # Safety
 * `set` must be null or a handle from this library not yet freed.
 */
void ck_projectors_free(struct CkProjectorSet *set);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHOW_KUNNETH_H */
