#ifndef EQUICLONE_H
#define EQUICLONE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EqcStatus {
  EQC_STATUS_OK = 0,
  EQC_STATUS_NULL_POINTER = 1,
  EQC_STATUS_INVALID_ARGUMENT = 2,
  EQC_STATUS_OUT_OF_RANGE = 3,
  EQC_STATUS_NUMERICAL = 4,
  EQC_STATUS_BUFFER_TOO_SMALL = 5,
  EQC_STATUS_PANIC = 6,
} EqcStatus;

typedef enum EqcEquator {
  EQC_EQUATOR_XZ = 0,
  EQC_EQUATOR_XY = 1,
} EqcEquator;

/**
 * Opaque density matrix.
 */
typedef struct EqcDensity EqcDensity;

/**
 * Opaque pure state.
 */
typedef struct EqcKet EqcKet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len`). Returns the full message length without the NUL, or
 * 0 when there is no error.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t eqc_last_error(char *buf, size_t len);

/**
 * `3 − 2√2`, the λ of the optimal one-to-two cloner.
 */
double eqc_optimal_lambda(void);

/**
 * Single-qubit state on `equator` at `angle`.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum EqcStatus eqc_equatorial_ket(enum EqcEquator equator, double angle, struct EqcKet **out);

/**
 * Three-qubit output of the one-to-two cloner with parameter `lambda`
 * (copies in qubits 0 and 1, ancilla in qubit 2).
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum EqcStatus eqc_clone_1to2(enum EqcEquator equator,
                              double lambda,
                              double angle,
                              struct EqcKet **out);

/**
 * Three-qubit output of the triplicator on `equator`.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum EqcStatus eqc_triplicate(enum EqcEquator equator, double angle, struct EqcKet **out);

/**
 * Number of qubits, or 0 for a null handle.
 *
 * # Safety
 * `ket` must be null or a live handle.
 */
size_t eqc_ket_n_qubits(const struct EqcKet *ket);

/**
 * Writes the `2^n` amplitudes as separate real and imaginary arrays.
 *
 * # Safety
 * `ket` must be a live handle; `re` and `im` must each hold `len` doubles.
 */
enum EqcStatus eqc_ket_amplitudes(const struct EqcKet *ket, double *re, double *im, size_t len);

/**
 * Reduced density matrix on the qubits listed in `keep`, in that order.
 *
 * # Safety
 * `ket` must be a live handle, `keep` must hold `n_keep` entries, and `out`
 * must be valid for a pointer write.
 */
enum EqcStatus eqc_ket_reduce(const struct EqcKet *ket,
                              const size_t *keep,
                              size_t n_keep,
                              struct EqcDensity **out);

/**
 * Matrix dimension, or 0 for a null handle.
 *
 * # Safety
 * `rho` must be null or a live handle.
 */
size_t eqc_density_dim(const struct EqcDensity *rho);

/**
 * Entry `(i, j)`.
 *
 * # Safety
 * `rho` must be a live handle; `re` and `im` must be valid for writes.
 */
enum EqcStatus eqc_density_entry(const struct EqcDensity *rho,
                                 size_t i,
                                 size_t j,
                                 double *re,
                                 double *im);

/**
 * Ascending eigenvalues.
 *
 * # Safety
 * `rho` must be a live handle; `out` must hold `len` doubles.
 */
enum EqcStatus eqc_density_eigenvalues(const struct EqcDensity *rho, double *out, size_t len);

/**
 * Ascending eigenvalues of the partial transpose on the second qubit of a
 * two-qubit density matrix.
 *
 * # Safety
 * `rho` must be a live handle; `out` must hold `len` doubles.
 */
enum EqcStatus eqc_density_pt_eigenvalues(const struct EqcDensity *rho, double *out, size_t len);

/**
 * `⟨ψ|ρ|ψ⟩`.
 *
 * # Safety
 * Both handles must be live; `out` must be valid for a write.
 */
enum EqcStatus eqc_fidelity_pure(const struct EqcKet *ket,
                                 const struct EqcDensity *rho,
                                 double *out);

/**
 * Closed-form fidelity of the `n → m` cloner (`n = 1` gives the optimum).
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum EqcStatus eqc_fidelity_closed(size_t n, size_t m, double *out);

/**
 * Large-`m` limit of [`eqc_fidelity_closed`].
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum EqcStatus eqc_fidelity_asymptotic(size_t n, double *out);

/**
 * Mean simulated single-copy fidelity of the `n → m` cloner over `grid`
 * phases.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum EqcStatus eqc_simulate_fidelity(size_t n, size_t m, size_t grid, double *out);

/**
 * `2 λ_max(A)` for one-to-`m` cloning.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum EqcStatus eqc_optimal_fidelity_via_a(size_t m, double *out);

/**
 * Closed-form partial-transpose spectrum of the two copies, ascending, into
 * `out[0..4]`.
 *
 * # Safety
 * `out` must hold `len` doubles.
 */
enum EqcStatus eqc_pt_spectrum(double lambda, double *out, size_t len);

/**
 * # Safety
 * `ket` must be null or a handle not yet freed.
 */
void eqc_ket_free(struct EqcKet *ket);

/**
 * # Safety
 * `rho` must be null or a handle not yet freed.
 */
void eqc_density_free(struct EqcDensity *rho);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EQUICLONE_H */
