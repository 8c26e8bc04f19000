#ifndef BFM_WORKBENCH_H
#define BFM_WORKBENCH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum BfmStatus {
  BFM_STATUS_OK = 0,
  BFM_STATUS_NULL_POINTER = 1,
  BFM_STATUS_INVALID_ARGUMENT = 2,
  BFM_STATUS_UNSUPPORTED_TYPE = 3,
  BFM_STATUS_DOMAIN = 4,
  BFM_STATUS_NOT_IN_CELL = 5,
  BFM_STATUS_EVALUATION = 6,
  BFM_STATUS_IO = 7,
  BFM_STATUS_INVALID_UTF8 = 8,
  BFM_STATUS_PANIC = 9,
} BfmStatus;

/**
 * Opaque root datum handle.
 */
typedef struct BfmRootDatum BfmRootDatum;

typedef struct BfmComplex {
  double re;
  double im;
} BfmComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer stays
 * valid until the next call into this library from the same thread.
 */
const char *bfm_last_error_message(void);

void bfm_string_free(char *s);

/**
 * `type_label` such as `"A2"`; `lattice` is `"simply-connected"` or `"adjoint"`.
 */
enum BfmStatus bfm_root_datum_new(const char *type_label,
                                  const char *lattice,
                                  struct BfmRootDatum **out);

void bfm_root_datum_free(struct BfmRootDatum *d);

enum BfmStatus bfm_root_datum_dual(const struct BfmRootDatum *d, struct BfmRootDatum **out);

enum BfmStatus bfm_root_datum_equal(const struct BfmRootDatum *a,
                                    const struct BfmRootDatum *b,
                                    bool *out);

enum BfmStatus bfm_root_datum_rank(const struct BfmRootDatum *d, size_t *out);

enum BfmStatus bfm_root_datum_weyl_order(const struct BfmRootDatum *d, size_t *out);

/**
 * JSON text of the datum; free with [`bfm_string_free`].
 */
enum BfmStatus bfm_root_datum_to_json(const struct BfmRootDatum *d, char **out);

/**
 * `H_k = tr(L^k)/k` at the phase point `(x, p)` of `n` particles.
 */
enum BfmStatus bfm_toda_hamiltonian(size_t k,
                                    const struct BfmComplex *x,
                                    const struct BfmComplex *p,
                                    size_t n,
                                    struct BfmComplex *out);

/**
 * `ξ² = u² − q` and `(z + z⁻¹)/4 = u²/q − 1/2`.
 */
enum BfmStatus bfm_toda_embed_rank1(struct BfmComplex u,
                                    struct BfmComplex q,
                                    struct BfmComplex *out_casimir,
                                    struct BfmComplex *out_classfn);

/**
 * Point `(ξ, z)` of the leaf with parameter `q` at `s`.
 */
enum BfmStatus bfm_leaf_rank1(struct BfmComplex q,
                              struct BfmComplex s,
                              struct BfmComplex *out_xi,
                              struct BfmComplex *out_z);

/**
 * Mirror spectral check at one `q` (length = rank) for a type-A datum, as a
 * canonical `bfm-workbench/1` report. `starts = 0` uses the default sweep.
 */
enum BfmStatus bfm_mirror_check(const struct BfmRootDatum *d,
                                const struct BfmComplex *q,
                                size_t nq,
                                size_t starts,
                                uint64_t seed,
                                char **out_json);

/**
 * Run the command line `argv[0..argc]` (program name first). The process exit
 * code lands in `out_exit_code`; the manifest, if one was produced, in
 * `out_json` (null otherwise). Usage errors are reported through the exit
 * code, not the status.
 */
enum BfmStatus bfm_run(int argc, const char *const *argv, char **out_json, int *out_exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BFM_WORKBENCH_H */
