#ifndef SPINALFVEN_H
#define SPINALFVEN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SaStatus {
  SA_STATUS_OK = 0,
  SA_STATUS_NULL_POINTER = 1,
  SA_STATUS_VALIDATION = 2,
  SA_STATUS_DOMAIN = 3,
  SA_STATUS_RESONANCE = 4,
  SA_STATUS_SOLITON = 5,
  SA_STATUS_BLOW_UP = 6,
  SA_STATUS_CURVE = 7,
  SA_STATUS_IO = 8,
  SA_STATUS_PANIC = 9,
} SaStatus;

typedef enum SaPolarization {
  SA_POLARIZATION_RIGHT_HAND = 0,
  SA_POLARIZATION_LEFT_HAND = 1,
} SaPolarization;

typedef enum SaSide {
  SA_SIDE_CLASSICAL = 0,
  SA_SIDE_BOUNDARY = 1,
  SA_SIDE_QUANTUM = 2,
} SaSide;

/**
 * Opaque envelope handle.
 */
typedef struct SaEnvelope SaEnvelope;

/**
 * SI units throughout: m⁻³, K, T, kg.
 */
typedef struct SaComposition {
  double electron_density;
  double electron_temperature;
  double ion_temperature;
  double magnetic_field;
  double ion_mass;
  double ion_charge_number;
} SaComposition;

typedef struct SaDerived {
  double omega_pe;
  double omega_ce;
  double omega_ci;
  double alfven_speed;
  double sound_speed;
  double mass_density;
  double fermi_temperature;
} SaDerived;

typedef struct SaQuantumParameters {
  double fermi_ratio;
  double bohm_debroglie;
  double single_fluid_alfven;
  double single_fluid_acoustic;
  double two_fluid_nonlinear;
} SaQuantumParameters;

typedef struct SaSpinPopulations {
  double n_plus0;
  double n_minus0;
  double population_difference;
  double magnetization;
  double brillouin_factor;
} SaSpinPopulations;

typedef struct SaCarrierWave {
  double wavenumber;
  enum SaPolarization polarization;
  double omega;
  double group_velocity;
  double group_dispersion;
  double hall_parameter;
} SaCarrierWave;

typedef struct SaNlsCoefficients {
  double dispersion_coeff;
  double nonlinear_coeff;
  double classical_q;
  double spin_correction_factor;
  double background_field;
} SaNlsCoefficients;

/**
 * Quantum-side flags in the order Fermi pressure, Bohm–de Broglie,
 * single-fluid Alfvén, single-fluid acoustic, two-fluid nonlinear.
 */
typedef struct SaRegime {
  struct SaQuantumParameters parameters;
  enum SaSide sides[5];
} SaRegime;

typedef struct SaDiagnostics {
  double norm;
  double momentum;
  double hamiltonian;
  double gradient_norm;
} SaDiagnostics;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *sa_version(void);

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len`). Returns the full message length excluding the NUL.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
size_t sa_last_error_message(char *buf, size_t len);

/**
 * Hydrogen plasma (Z = 1, m_i = m_p).
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum SaStatus sa_hydrogen(double n0, double te, double ti, double b0, struct SaComposition *out);

/**
 * # Safety
 * Pointers must be null or valid.
 */
enum SaStatus sa_derive(const struct SaComposition *comp, struct SaDerived *out);

/**
 * # Safety
 * Pointers must be null or valid.
 */
enum SaStatus sa_quantum_parameters(const struct SaComposition *comp,
                                    struct SaQuantumParameters *out);

/**
 * # Safety
 * Pointers must be null or valid.
 */
enum SaStatus sa_equilibrium_populations(const struct SaComposition *comp,
                                         struct SaSpinPopulations *out);

/**
 * # Safety
 * Pointers must be null or valid.
 */
enum SaStatus sa_dispersion(const struct SaComposition *comp,
                            double k,
                            enum SaPolarization polarization,
                            struct SaCarrierWave *out);

/**
 * # Safety
 * Pointers must be null or valid.
 */
enum SaStatus sa_nls_coefficients(const struct SaComposition *comp,
                                  double k,
                                  enum SaPolarization polarization,
                                  struct SaNlsCoefficients *out);

/**
 * Modulational instability growth rate of a uniform background `a0` (T) at
 * perturbation wavenumber `kappa` (rad/m).
 *
 * # Safety
 * Pointers must be null or valid.
 */
enum SaStatus sa_mi_rate(const struct SaNlsCoefficients *coeffs,
                         double a0,
                         double kappa,
                         double *out);

/**
 * # Safety
 * Pointers must be null or valid.
 */
enum SaStatus sa_classify(const struct SaComposition *comp, struct SaRegime *out);

/**
 * Soliton of peak `amplitude` (T) centred at `center` (m) on a periodic box
 * of `points` samples and `length` metres.
 *
 * # Safety
 * Pointers must be null or valid. The handle written to `out` must be
 * released with [`sa_envelope_free`].
 */
enum SaStatus sa_envelope_new_soliton(const struct SaNlsCoefficients *coeffs,
                                      double amplitude,
                                      double center,
                                      double phase,
                                      size_t points,
                                      double length,
                                      struct SaEnvelope **out);

/**
 * Uniform background `a0` (T) with relative cosine seed `epsilon` on mode `mode`.
 *
 * # Safety
 * As for [`sa_envelope_new_soliton`].
 */
enum SaStatus sa_envelope_new_uniform(const struct SaNlsCoefficients *coeffs,
                                      double a0,
                                      double epsilon,
                                      int64_t mode,
                                      size_t points,
                                      double length,
                                      struct SaEnvelope **out);

/**
 * # Safety
 * `env` must be null or a handle from `sa_envelope_new_*` not yet freed.
 */
void sa_envelope_free(struct SaEnvelope *env);

/**
 * Advances `steps` Strang steps of `dt` seconds.
 *
 * # Safety
 * `env` must be a live handle.
 */
enum SaStatus sa_envelope_advance(struct SaEnvelope *env, double dt, size_t steps);

/**
 * Largest stable step, s.
 *
 * # Safety
 * Pointers must be null or valid.
 */
enum SaStatus sa_envelope_max_time_step(struct SaEnvelope *env, double *out);

/**
 * # Safety
 * Pointers must be null or valid.
 */
enum SaStatus sa_envelope_time(struct SaEnvelope *env, double *out);

/**
 * # Safety
 * Pointers must be null or valid.
 */
enum SaStatus sa_envelope_points(struct SaEnvelope *env, size_t *out);

/**
 * # Safety
 * Pointers must be null or valid.
 */
enum SaStatus sa_envelope_diagnostics(struct SaEnvelope *env, struct SaDiagnostics *out);

/**
 * Copies B₁ (T) into `re` and `im`, each of `len` elements; `len` must
 * equal the grid size.
 *
 * # Safety
 * `re` and `im` must be valid for `len` writes.
 */
enum SaStatus sa_envelope_amplitude(struct SaEnvelope *env, double *re, double *im, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPINALFVEN_H */
