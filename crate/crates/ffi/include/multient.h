#ifndef MULTIENT_H
#define MULTIENT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum MultientStatus {
  MULTIENT_STATUS_OK = 0,
  MULTIENT_STATUS_NULL_POINTER = 1,
  MULTIENT_STATUS_INVALID_ARGUMENT = 2,
  MULTIENT_STATUS_SHAPE_MISMATCH = 3,
  MULTIENT_STATUS_NOT_NORMALIZED = 4,
  MULTIENT_STATUS_NOT_QUTRIT = 5,
  MULTIENT_STATUS_UNKNOWN_STATE = 6,
  MULTIENT_STATUS_BUFFER_TOO_SMALL = 7,
  MULTIENT_STATUS_NUMERICAL_ERROR = 8,
  MULTIENT_STATUS_PANIC = 9,
} MultientStatus;

typedef enum MultientVerdictKind {
  MULTIENT_VERDICT_KIND_NOT_LOCALLY_ISOSPECTRAL = 0,
  MULTIENT_VERDICT_KIND_INCOMMENSURATE = 1,
  MULTIENT_VERDICT_KIND_INCONCLUSIVE = 2,
} MultientVerdictKind;

typedef enum MultientWitnessQuantity {
  MULTIENT_WITNESS_QUANTITY_I2 = 0,
  MULTIENT_WITNESS_QUANTITY_I3 = 1,
  MULTIENT_WITNESS_QUANTITY_I4 = 2,
  MULTIENT_WITNESS_QUANTITY_I5 = 3,
  MULTIENT_WITNESS_QUANTITY_MIN_PARTIAL_TRANSPOSE = 4,
} MultientWitnessQuantity;

typedef enum MultientDecodePair {
  MULTIENT_DECODE_PAIR_AB = 0,
  MULTIENT_DECODE_PAIR_AC = 1,
  MULTIENT_DECODE_PAIR_BC = 2,
} MultientDecodePair;

/**
 * Opaque pure-state handle.
 */
typedef struct MultientState MultientState;

typedef struct MultientInvariants {
  double i1;
  double i2;
  double i3;
  double i4;
  double i5;
} MultientInvariants;

typedef struct MultientWitness {
  enum MultientWitnessQuantity quantity;
  /**
   * Traced party for `MinPartialTranspose`, otherwise -1.
   */
  int32_t traced;
  double first;
  double second;
} MultientWitness;

typedef struct MultientCheatRecord {
  uint8_t b;
  enum MultientDecodePair pair;
  uint8_t recovered;
  /**
   * -1 when the pair does not include the cheater.
   */
  int32_t bob_inference;
} MultientCheatRecord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *multient_version(void);

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next call into the library from the same thread.
 */
const char *multient_last_error_message(void);

/**
 * Creates a state from party dimensions and interleaved amplitudes
 * (`2 * prod(dims)` doubles). Without `normalize` the amplitudes must
 * already have unit norm.
 *
 * # Safety
 * `dims` must point to `num_parties` values and `amps` to `num_doubles`
 * doubles; `out` must be writable.
 */
enum MultientStatus multient_state_new(const size_t *dims,
                                       size_t num_parties,
                                       const double *amps,
                                       size_t num_doubles,
                                       bool normalize,
                                       struct MultientState **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `state` must come from this library and not have been freed.
 */
void multient_state_free(struct MultientState *state);

/**
 * Builds a named catalog state.
 *
 * # Safety
 * `name` must be a NUL-terminated string, `params` must point to
 * `num_params` doubles and `out` must be writable.
 */
enum MultientStatus multient_catalog_build(const char *name,
                                           const double *params,
                                           size_t num_params,
                                           struct MultientState **out);

/**
 * # Safety
 * `state` must be a live handle; the output pointers must be writable for
 * `capacity` items.
 */
enum MultientStatus multient_state_dims(const struct MultientState *state,
                                        size_t *out,
                                        size_t capacity,
                                        size_t *out_len);

/**
 * Interleaved amplitudes in lexicographic basis order.
 *
 * # Safety
 * As [`multient_state_dims`]; `capacity` counts doubles.
 */
enum MultientStatus multient_state_amplitudes(const struct MultientState *state,
                                              double *out,
                                              size_t capacity,
                                              size_t *out_len);

/**
 * `<a|b>`
 *
 * # Safety
 * `a` and `b` must be live handles; `out_re` and `out_im` writable.
 */
enum MultientStatus multient_state_overlap(const struct MultientState *a,
                                           const struct MultientState *b,
                                           double *out_re,
                                           double *out_im);

/**
 * Eigenvalues of one party's reduced density matrix, descending.
 *
 * # Safety
 * As [`multient_state_dims`].
 */
enum MultientStatus multient_local_spectrum(const struct MultientState *state,
                                            size_t party,
                                            double *out,
                                            size_t capacity,
                                            size_t *out_len);

/**
 * # Safety
 * `state` must be a live handle and `out` writable.
 */
enum MultientStatus multient_invariants(const struct MultientState *state,
                                        struct MultientInvariants *out);

/**
 * Smallest partial-transpose eigenvalue of the two-party reduction left
 * after tracing out party `traced` of a three-party state.
 *
 * # Safety
 * `state` must be a live handle and `out` writable.
 */
enum MultientStatus multient_min_pt_eigenvalue(const struct MultientState *state,
                                               size_t traced,
                                               double *out);

/**
 * Runs the incommensurability certifier. Witnesses are copied into
 * `witnesses` (at most 7 exist).
 *
 * # Safety
 * `a` and `b` must be live handles; the output pointers must be writable,
 * `witnesses` for `capacity` items.
 */
enum MultientStatus multient_certify(const struct MultientState *a,
                                     const struct MultientState *b,
                                     double tol,
                                     enum MultientVerdictKind *out_kind,
                                     double *out_max_spectral_difference,
                                     struct MultientWitness *witnesses,
                                     size_t capacity,
                                     size_t *out_len);

/**
 * Encodes the normalized qutrit secret `a|0> + b|1> + c|2>` given as six
 * interleaved doubles.
 *
 * # Safety
 * `secret` must point to 6 doubles and `out` must be writable.
 */
enum MultientStatus multient_qss_encode(const double *secret, struct MultientState **out);

/**
 * Decodes with `pair`. Writes the reconstructed secret as six interleaved
 * doubles, the weight of the factored secret register, and the index of
 * that register. `out_post_state` may be null; otherwise it receives a new
 * handle to the full post-decoding state.
 *
 * # Safety
 * `state` must be a live handle, `out_secret` must hold 6 doubles, and the
 * other non-null outputs must be writable.
 */
enum MultientStatus multient_qss_decode(const struct MultientState *state,
                                        enum MultientDecodePair pair,
                                        double *out_secret,
                                        double *out_fidelity,
                                        size_t *out_secret_register,
                                        struct MultientState **out_post_state);

/**
 * Applies the cyclic shift `|j> -> |j+1 mod 3>` to one qutrit party.
 *
 * # Safety
 * `state` must be a live handle and `out` writable.
 */
enum MultientStatus multient_cheat_shift(const struct MultientState *state,
                                         size_t party,
                                         struct MultientState **out);

/**
 * `|..c..t..> -> |..c..(t + times*c mod 3)..>` with `times` 1 or 2.
 *
 * # Safety
 * `state` must be a live handle and `out` writable.
 */
enum MultientStatus multient_mod3_adder(const struct MultientState *state,
                                        size_t control,
                                        size_t target,
                                        uint8_t times,
                                        struct MultientState **out);

/**
 * Lower bound on the number of local-unitary invariant parameters of a
 * `k`-qubit pure state.
 *
 * # Safety
 * `out` must be writable.
 */
enum MultientStatus multient_hidden_param_lower_bound(uint32_t k, int64_t *out);

/**
 * Invariant parameters not visible to any single party's spectrum.
 *
 * # Safety
 * `out` must be writable.
 */
enum MultientStatus multient_hidden_from_single_party(uint32_t k, int64_t *out);

/**
 * The nine-row cheating table, ordered by secret then pair.
 *
 * # Safety
 * `out` must be writable for `capacity` records and `out_len` writable.
 */
enum MultientStatus multient_cheat_demo(struct MultientCheatRecord *out,
                                        size_t capacity,
                                        size_t *out_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MULTIENT_H */
