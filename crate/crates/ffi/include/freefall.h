#ifndef FREEFALL_H
#define FREEFALL_H

/* Generated by cbindgen from crates/ffi/src. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes; the numeric values match the command-line exit codes.
typedef enum FfStatus {
    FF_STATUS_OK = 0,
    // malformed text, unknown name or parameter
    FF_STATUS_PARSE = 2,
    // evaluation domain error, degenerate metric or wrong signature
    FF_STATUS_DOMAIN = 3,
    // quadrature or series did not converge
    FF_STATUS_CONVERGENCE = 5,
    // argument outside its documented range
    FF_STATUS_INVALID_ARGUMENT = 7,
    FF_STATUS_NULL_POINTER = 8,
    // internal panic caught at the boundary
    FF_STATUS_PANIC = 9,
} FfStatus;

typedef enum FfUnits {
    FF_UNITS_SI = 0,
    FF_UNITS_NATURAL = 1,
} FfUnits;

// Opaque metric handle.
typedef struct FfMetric FfMetric;

// Frame data at one point. Rank-2 arrays are row-major `[i*4 + j]`, rank-3
// arrays `[i*16 + j*4 + k]`, with the index meanings of the library:
// `e[alpha][mu]`, `omega[mu][nu][lambda]`, `spin[mu][alpha][beta]`,
// `christoffel[lambda][mu][nu]`.
typedef struct FfConnection {
    double g[16];
    double e[16];
    double einv[16];
    double omega[64];
    double spin[64];
    double christoffel[64];
    double residual;
} FfConnection;

typedef struct FfGaugeSummary {
    uint64_t trials;
    uint64_t failed;
    double worst_gauge;
    double worst_bianchi;
    // first failing trial, or -1
    int64_t first_failure;
} FfGaugeSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Last error message of the calling thread; empty after a successful call.
const char *ff_last_error(void);

// Parse metric-spec text into a new handle.
enum FfStatus ff_metric_parse(const char *text, struct FfMetric **out);

// Handle for one of `minkowski`, `spherical-minkowski`, `schwarzschild`, `rindler`.
enum FfStatus ff_metric_builtin(const char *name, struct FfMetric **out);

enum FfStatus ff_metric_set_param(struct FfMetric *metric, const char *name, double value);

// Canonical spec text; free the returned string with [`ff_string_free`].
enum FfStatus ff_metric_to_text(const struct FfMetric *metric, char **out);

void ff_string_free(char *s);

void ff_metric_free(struct FfMetric *metric);

// Frame, connections and tetrad-postulate residual at `point[0..4]`.
// `rel_step <= 0` selects the default relative step.
enum FfStatus ff_frame_connection(const struct FfMetric *metric,
                                  const double *point,
                                  double rel_step,
                                  struct FfConnection *out);

enum FfStatus ff_complex_gamma(double re, double im, double *out_re, double *out_im);

// Closed-form chirp amplitude `F(Omega)` for emitted frequency `omega`,
// acceleration `a` and light speed `c`.
enum FfStatus ff_fourier_amplitude_analytic(double big_omega,
                                            double omega,
                                            double a,
                                            double c,
                                            double *out_re,
                                            double *out_im);

// Quadrature path; `split <= 0`, `series_terms == 0` or `max_intervals == 0`
// select the defaults.
enum FfStatus ff_fourier_amplitude_numeric(double big_omega,
                                           double omega,
                                           double a,
                                           double c,
                                           double split,
                                           uint32_t series_terms,
                                           uint32_t max_intervals,
                                           double *out_re,
                                           double *out_im);

enum FfStatus ff_unruh_temperature(double acceleration, enum FfUnits units, double *out);

enum FfStatus ff_surface_gravity(double mass, double radius, enum FfUnits units, double *out);

enum FfStatus ff_hawking_temperature(double mass, enum FfUnits units, double *out);

enum FfStatus ff_schwarzschild_radius(double mass, enum FfUnits units, double *out);

// `T^{eg}` for the symmetric row-major amplitude `amplitude[16]` and covector `k[4]`.
enum FfStatus ff_kinetic_apply(const double *amplitude, const double *k, double *out);

enum FfStatus ff_action_density(const double *amplitude,
                                const double *k,
                                double kappa,
                                double *out);

// Randomized gauge identities, natural-unit coupling, default tolerances.
enum FfStatus ff_gauge_check(uint64_t trials, uint64_t seed, struct FfGaugeSummary *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FREEFALL_H */
