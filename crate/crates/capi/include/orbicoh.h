/* C interface to the orbicoh exact cohomology engine. */

#ifndef ORBICOH_H
#define ORBICOH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum OrbicohStatus {
  OrbicohStatus_Ok = 0,
  OrbicohStatus_NullArgument = 1,
  OrbicohStatus_InvalidArgument = 2,
  OrbicohStatus_ComputeError = 3,
  OrbicohStatus_InternalPanic = 4,
} OrbicohStatus;

/**
 * An immutable finite group handle.
 */
typedef struct OrbicohGroup OrbicohGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version string of the underlying engine; static storage.
 */
const char *orbicoh_version(void);

/**
 * Static name of a status code.
 */
const char *orbicoh_status_name(enum OrbicohStatus status);

/**
 * Copies the last error message on this thread into `buf` (NUL
 * terminated, truncated to `cap`); returns the full message length.
 *
 * # Safety
 * `buf` must point to `cap` writable bytes, or be null (query length).
 */
uintptr_t orbicoh_last_error(char *buf, uintptr_t cap);

/**
 * Builds a builtin group by name (`klein4`, `cyclic:n`, ...).
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum OrbicohStatus orbicoh_group_builtin(const char *name, struct OrbicohGroup **out);

/**
 * Builds a group from a row-major `order` × `order` Cayley table of
 * element indices.
 *
 * # Safety
 * `entries` must point to `order * order` values; `out` must be valid.
 */
enum OrbicohStatus orbicoh_group_from_cayley(uint32_t order,
                                             const uint32_t *entries,
                                             struct OrbicohGroup **out);

/**
 * Releases a group handle.
 *
 * # Safety
 * `group` must come from this library and not be freed twice.
 */
void orbicoh_group_free(struct OrbicohGroup *group);

/**
 * Order of the group; 0 on a null handle.
 *
 * # Safety
 * `group` must be a live handle or null.
 */
uint32_t orbicoh_group_order(const struct OrbicohGroup *group);

/**
 * Number of subgroups, which bounds the `S<k>` id space.
 *
 * # Safety
 * `group` and `out` must be valid pointers.
 */
enum OrbicohStatus orbicoh_subgroup_count(const struct OrbicohGroup *group, uint32_t *out);

/**
 * Relative cohomology dimensions for degrees 0..=max_deg. `out_dims` must
 * hold max_deg + 1 entries.
 *
 * # Safety
 * All pointers must be valid; strings NUL-terminated.
 */
enum OrbicohStatus orbicoh_relative_cohomology(const struct OrbicohGroup *group,
                                               const char *family,
                                               uint32_t p,
                                               const char *coeff,
                                               uint32_t max_deg,
                                               uint32_t *out_dims);

/**
 * Ext dimensions between two module specs for degrees 0..=max_deg.
 *
 * # Safety
 * All pointers must be valid; strings NUL-terminated.
 */
enum OrbicohStatus orbicoh_ext_dims(const struct OrbicohGroup *group,
                                    const char *family,
                                    uint32_t p,
                                    const char *m_spec,
                                    const char *n_spec,
                                    uint32_t max_deg,
                                    uint32_t *out_dims);

/**
 * Ordinary group cohomology of a subgroup (`"full"` or `"S<k>"`) for
 * degrees 0..=max_deg.
 *
 * # Safety
 * All pointers must be valid; strings NUL-terminated.
 */
enum OrbicohStatus orbicoh_group_cohomology(const struct OrbicohGroup *group,
                                            const char *subgroup,
                                            uint32_t p,
                                            const char *coeff,
                                            uint32_t max_deg,
                                            uint32_t *out_dims);

/**
 * E2 page dimensions: out_grid receives (max_p + 1) * (max_q + 1) values,
 * row-major in p (entry p * (max_q + 1) + q).
 *
 * # Safety
 * All pointers must be valid; strings NUL-terminated.
 */
enum OrbicohStatus orbicoh_e2_dims(const struct OrbicohGroup *group,
                                   const char *family,
                                   uint32_t p,
                                   const char *coeff,
                                   uint32_t max_p,
                                   uint32_t max_q,
                                   uint32_t *out_grid);

/**
 * Smallest verified period of a dimension sequence beyond the offset;
 * writes 0 when no period is detected in the window.
 *
 * # Safety
 * `dims` must point to `len` values; `out_period` must be valid.
 */
enum OrbicohStatus orbicoh_periodicity(const uint32_t *dims,
                                       uintptr_t len,
                                       uint32_t offset,
                                       uint32_t *out_period);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORBICOH_H */
