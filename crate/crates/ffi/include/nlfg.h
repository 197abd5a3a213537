#ifndef NLFG_H
#define NLFG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. Zero is success; every failure is negative.
 */
typedef enum NlfgStatus {
  NLFG_STATUS_OK = 0,
  NLFG_STATUS_NULL_POINTER = -1,
  NLFG_STATUS_INVALID_SPEC = -2,
  NLFG_STATUS_NOT_PRIMITIVE = -3,
  NLFG_STATUS_TOO_LARGE = -4,
  NLFG_STATUS_MISMATCH = -5,
  NLFG_STATUS_INTERNAL = -6,
  NLFG_STATUS_PANIC = -7,
} NlfgStatus;

/**
 * Full-period output counts of a generator.
 */
typedef struct nlfg_distribution_t nlfg_distribution_t;

/**
 * A generator: register state plus multiplier assembly.
 */
typedef struct nlfg_generator_t nlfg_generator_t;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *nlfg_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *nlfg_version(void);

/**
 * Builds a generator from a JSON config (`{register, pairs | m, mode}`).
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum NlfgStatus nlfg_generator_from_json(const char *json, struct nlfg_generator_t **out);

/**
 * # Safety
 * `gen` must be NULL or a handle from [`nlfg_generator_from_json`] that
 * has not been freed.
 */
void nlfg_generator_free(struct nlfg_generator_t *gen);

/**
 * Entries per output word (r), or 0 for a NULL handle.
 *
 * # Safety
 * `gen` must be NULL or a live generator handle.
 */
size_t nlfg_generator_width(const struct nlfg_generator_t *gen);

/**
 * Writes the next `count` outputs, `count * r` entries, into `out` and
 * advances the generator.
 *
 * # Safety
 * `gen` must be a live handle and `out` must have room for `out_len`
 * entries.
 */
enum NlfgStatus nlfg_generator_fill(struct nlfg_generator_t *gen,
                                    uint32_t *out,
                                    size_t out_len,
                                    size_t count);

/**
 * Counts one full period of outputs from the generator's current state.
 * `max_states` of 0 selects the default bound; `threads` of 0 means 1.
 *
 * # Safety
 * `gen` must be a live handle and `out` a valid pointer.
 */
enum NlfgStatus nlfg_measure(const struct nlfg_generator_t *gen,
                             uint64_t max_states,
                             size_t threads,
                             struct nlfg_distribution_t **out);

/**
 * # Safety
 * `dist` must be NULL or a live handle from [`nlfg_measure`].
 */
void nlfg_distribution_free(struct nlfg_distribution_t *dist);

/**
 * Number of symbols counted, or 0 for a NULL handle.
 *
 * # Safety
 * `dist` must be NULL or a live handle.
 */
uint64_t nlfg_distribution_period(const struct nlfg_distribution_t *dist);

/**
 * Occurrences of the word `value[0..r]`.
 *
 * # Safety
 * `dist` must be a live handle, `value` must point to `r` entries and
 * `out` must be valid.
 */
enum NlfgStatus nlfg_distribution_count(const struct nlfg_distribution_t *dist,
                                        const uint32_t *value,
                                        size_t r,
                                        uint64_t *out);

/**
 * Checks the table against the closed forms for its own parameters and
 * stores 1 (all classes match) or 0 in `pass`.
 *
 * # Safety
 * `dist` must be a live handle and `pass` valid.
 */
enum NlfgStatus nlfg_distribution_reconcile(const struct nlfg_distribution_t *dist, int32_t *pass);

/**
 * Per-period occurrences of a word under the field-product NLFG:
 * the zero word if `zero` is nonzero, otherwise any nonzero word.
 *
 * # Safety
 * `out` must be valid.
 */
enum NlfgStatus nlfg_oracle_n_proposed(uint64_t q,
                                       uint32_t r,
                                       uint32_t l,
                                       uint32_t m,
                                       int32_t zero,
                                       uint64_t *out);

/**
 * Per-period occurrences of a word with `kappa` nonzero entries under
 * the element-wise NLFG (`kappa` = 0 is the zero word).
 *
 * # Safety
 * `out` must be valid.
 */
enum NlfgStatus nlfg_oracle_n_elementwise(uint64_t q,
                                          uint32_t r,
                                          uint32_t l,
                                          uint32_t m,
                                          uint32_t kappa,
                                          uint64_t *out);

/**
 * Assembly inputs (out of q^(2m)) that produce zero (`zero` nonzero) or
 * a given nonzero value.
 *
 * # Safety
 * `out` must be valid.
 */
enum NlfgStatus nlfg_oracle_psi(uint32_t m, uint64_t q, int32_t zero, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NLFG_H */
