#ifndef BCT_H
#define BCT_H

/* Generated by cbindgen from bct-capi; regenerate with `cbindgen --config cbindgen.toml --crate bct-capi --output include/bct.h`. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a C-ABI call.
 */
typedef enum BctStatus {
  /**
   * Success; out-pointers are filled in.
   */
  BCT_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  BCT_STATUS_NULL_ARGUMENT = 1,
  /**
   * Validation failed (bad parameters, malformed data, disconnected
   * input, no witness). Matches CLI exit code 2.
   */
  BCT_STATUS_INVALID = 2,
  /**
   * The object exceeds a documented size bound. Matches CLI exit
   * code 3.
   */
  BCT_STATUS_BOUND_EXCEEDED = 3,
  /**
   * An internal panic was caught at the boundary.
   */
  BCT_STATUS_PANIC = 4,
} BctStatus;

/**
 * Opaque bi-Cayley datum handle.
 */
typedef struct BctBiCayley BctBiCayley;

/**
 * Opaque finite-group handle.
 */
typedef struct BctGroup BctGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread, valid
 * until the next failing call on the same thread. Never null; empty
 * for a null-argument failure with no message.
 */
const char *bct_last_error_message(void);

/**
 * Frees a string returned by this library. Accepts null.
 *
 * # Safety
 * `s` must be a pointer previously returned through one of this
 * library's string out-parameters, not yet freed.
 */
void bct_string_free(char *s);

/**
 * Creates the cyclic group of order `n`.
 */
enum BctStatus bct_group_cyclic(size_t n, struct BctGroup **out);

/**
 * Creates the direct product `C_d1 × C_d2`.
 */
enum BctStatus bct_group_abelian2(size_t d1, size_t d2, struct BctGroup **out);

/**
 * Creates the dihedral group of order `2n` (`n ≥ 3`).
 */
enum BctStatus bct_group_dihedral(size_t n, struct BctGroup **out);

/**
 * Creates the split metacyclic group
 * `⟨a, b | a^na = b^nb = 1, b⁻¹ab = a^r⟩`.
 */
enum BctStatus bct_group_metacyclic(size_t na, size_t nb, size_t r, struct BctGroup **out);

/**
 * Order of the group; 0 if the handle is null.
 */
size_t bct_group_order(const struct BctGroup *group);

/**
 * Releases a group handle. Accepts null.
 *
 * # Safety
 * `group` must come from a `bct_group_*` constructor and not have
 * been freed already.
 */
void bct_group_free(struct BctGroup *group);

/**
 * Validates a bi-Cayley datum `(R, L, S)` over the group: `R` and `L`
 * identity-free, inverse-closed, and of equal size; all entries are
 * element indices below the group order. Set pointers may be null
 * when the corresponding length is 0.
 *
 * # Safety
 * Non-null set pointers must reference `*_len` readable elements;
 * `group` must be a live group handle.
 */
enum BctStatus bct_bicayley_new(const struct BctGroup *group,
                                const size_t *r,
                                size_t r_len,
                                const size_t *l,
                                size_t l_len,
                                const size_t *s,
                                size_t s_len,
                                struct BctBiCayley **out);

/**
 * Releases a bi-Cayley handle. Accepts null.
 *
 * # Safety
 * `b` must come from `bct_bicayley_new` and not have been freed
 * already.
 */
void bct_bicayley_free(struct BctBiCayley *b);

/**
 * Number of vertices (twice the group order); 0 on null.
 */
size_t bct_bicayley_vertex_count(const struct BctBiCayley *b);

/**
 * Valency `|R| + |S|`; 0 on null.
 */
size_t bct_bicayley_valency(const struct BctBiCayley *b);

/**
 * 1 if the graph is connected, 0 otherwise (or on null).
 */
int32_t bct_bicayley_is_connected(const struct BctBiCayley *b);

/**
 * graph6 encoding of the graph. The string must be freed with
 * [`bct_string_free`].
 */
enum BctStatus bct_bicayley_graph6(const struct BctBiCayley *b, char **out);

/**
 * Full classification as a JSON run report (same schema as the CLI).
 * The string must be freed with [`bct_string_free`].
 */
enum BctStatus bct_bicayley_classify_json(const struct BctBiCayley *b, char **out);

/**
 * Order of the full automorphism group of the graph, as a decimal
 * string (it can exceed 64 bits). The string must be freed with
 * [`bct_string_free`].
 */
enum BctStatus bct_bicayley_aut_order(const struct BctBiCayley *b, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BCT_H */
