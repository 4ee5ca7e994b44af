/* Copyright 2026 The cvdec Authors */
/* SPDX-License-Identifier: Apache-2.0 */

#ifndef CVDEC_H
#define CVDEC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result code of every fallible call.
typedef enum CvdecStatus {
  CVDEC_STATUS_OK = 0,
  CVDEC_STATUS_INVALID_ARGUMENT = 1,
  CVDEC_STATUS_DOMAIN = 2,
  CVDEC_STATUS_NUMERICAL = 3,
  CVDEC_STATUS_UNCONVERGED = 4,
  CVDEC_STATUS_TRUNCATION = 5,
  CVDEC_STATUS_NULL_POINTER = 6,
  CVDEC_STATUS_PANIC = 7,
} CvdecStatus;

// Opaque product channel, one bath per mode.
typedef struct CvdecChannel CvdecChannel;

// Opaque Gaussian state: first moments and covariance matrix.
typedef struct CvdecGaussianState CvdecGaussianState;

// Bath coupling γ, asymptotic purity μ∞, squeezing r∞ and angle φ∞.
typedef struct CvdecBath {
  double gamma;
  double mu_inf;
  double r_inf;
  double phi_inf;
} CvdecBath;

// Two-mode standard form `σ = [[a,0,c1,0],[0,a,0,c2],[c1,0,b,0],[0,c2,0,b]]`.
typedef struct CvdecStandardForm {
  double a;
  double b;
  double c1;
  double c2;
} CvdecStandardForm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *cvdec_version(void);

// Copies the last error message of this thread into `buf`.
//
// Returns the length including the terminating NUL; 0 when no error is
// recorded. The message is truncated when `len` is too small.
//
// # Safety
// `buf` must be null or point to `len` writable bytes.
size_t cvdec_last_error_message(char *buf, size_t len);

// Creates a state from a row-major 2n×2n covariance matrix and an optional
// mean of length 2n (null for zero mean).
//
// # Safety
// `cm` must point to 4·modes² doubles, `mean` to 2·modes doubles or be
// null, and `out` must be writable.
enum CvdecStatus cvdec_state_new(size_t modes,
                                 const double *mean,
                                 const double *cm,
                                 struct CvdecGaussianState **out);

// Releases a state. Null is ignored.
//
// # Safety
// `state` must come from this library and not be used afterwards.
void cvdec_state_free(struct CvdecGaussianState *state);

// Deep copy of a state.
//
// # Safety
// `state` must be a live handle and `out` writable.
enum CvdecStatus cvdec_state_clone(const struct CvdecGaussianState *state,
                                   struct CvdecGaussianState **out);

// Number of modes, or 0 for a null handle.
//
// # Safety
// `state` must be null or a live handle.
size_t cvdec_state_modes(const struct CvdecGaussianState *state);

// Copies the row-major covariance matrix into `out` (length ≥ 4n²).
//
// # Safety
// `state` must be a live handle and `out` must hold `len` doubles.
enum CvdecStatus cvdec_state_cm(const struct CvdecGaussianState *state, double *out, size_t len);

// Copies the mean vector into `out` (length ≥ 2n).
//
// # Safety
// `state` must be a live handle and `out` must hold `len` doubles.
enum CvdecStatus cvdec_state_mean(const struct CvdecGaussianState *state, double *out, size_t len);

// Creates a channel from `count` baths, one per mode.
//
// # Safety
// `baths` must point to `count` values and `out` must be writable.
enum CvdecStatus cvdec_channel_new(const struct CvdecBath *baths,
                                   size_t count,
                                   struct CvdecChannel **out);

// Releases a channel. Null is ignored.
//
// # Safety
// `channel` must come from this library and not be used afterwards.
void cvdec_channel_free(struct CvdecChannel *channel);

// Evolves `state` through `channel` for time `t` into a new handle.
//
// # Safety
// Handles must be live and `out` writable.
enum CvdecStatus cvdec_evolve(const struct CvdecGaussianState *state,
                              const struct CvdecChannel *channel,
                              double t,
                              struct CvdecGaussianState **out);

// Purity 1/(2ⁿ√Det σ).
//
// # Safety
// `state` must be a live handle and `out` writable.
enum CvdecStatus cvdec_purity(const struct CvdecGaussianState *state, double *out);

// Von Neumann entropy in nats.
//
// # Safety
// `state` must be a live handle and `out` writable.
enum CvdecStatus cvdec_entropy(const struct CvdecGaussianState *state, double *out);

// Nonclassical depth τ.
//
// # Safety
// `state` must be a live handle and `out` writable.
enum CvdecStatus cvdec_nonclassical_depth(const struct CvdecGaussianState *state, double *out);

// Logarithmic negativity of a two-mode state.
//
// # Safety
// `state` must be a live handle and `out` writable.
enum CvdecStatus cvdec_log_negativity(const struct CvdecGaussianState *state, double *out);

// Mutual information of a two-mode state in nats.
//
// # Safety
// `state` must be a live handle and `out` writable.
enum CvdecStatus cvdec_mutual_information(const struct CvdecGaussianState *state, double *out);

// Coherent-state teleportation fidelity 1/(1 + 2ν̃₋).
//
// # Safety
// `state` must be a live handle and `out` writable.
enum CvdecStatus cvdec_teleportation_fidelity(const struct CvdecGaussianState *state, double *out);

// Separability time of a standard form in a two-bath channel.
//
// `found` is set to false, and `t_ent` left untouched, when the state
// stays entangled for all times.
//
// # Safety
// Pointers must be valid; `channel` must be a live handle.
enum CvdecStatus cvdec_entanglement_time(const struct CvdecStandardForm *sf,
                                         const struct CvdecChannel *channel,
                                         double *t_ent,
                                         bool *found);

// Purity of the Fock state |n⟩ after time t.
//
// # Safety
// `bath` must point to a value and `out` be writable.
enum CvdecStatus cvdec_fock_purity(uint32_t n, const struct CvdecBath *bath, double t, double *out);

// Purity of the cat state with centre (x0, p0), squeezing r0 and phase θ.
//
// # Safety
// `bath` must point to a value and `out` be writable.
enum CvdecStatus cvdec_cat_purity(double x0,
                                  double p0,
                                  double r0,
                                  double theta,
                                  const struct CvdecBath *bath,
                                  double t,
                                  double *out);

// Purity of (|0⟩ + e^{iϑ}|1⟩)/√2 after time t.
//
// # Safety
// `bath` must point to a value and `out` be writable.
enum CvdecStatus cvdec_psi01_purity(double vartheta,
                                    const struct CvdecBath *bath,
                                    double t,
                                    double *out);

// Time ln(1 + μ∞)/γ after which every state has a positive Wigner function
// in a thermal bath.
//
// # Safety
// `bath` must point to a value and `out` be writable.
enum CvdecStatus cvdec_t_nc(const struct CvdecBath *bath, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CVDEC_H */
