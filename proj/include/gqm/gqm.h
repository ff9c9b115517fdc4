/* C interface to the geometric quantum mechanics library.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_destroy function (NULL is accepted). Every function returning
 * gqm_status leaves a message for gqm_last_error() on failure; the message
 * is per thread and stays valid until the next failing call on that thread.
 * Complex numbers cross the boundary as interleaved (re, im) doubles.
 */

#ifndef GQM_GQM_H
#define GQM_GQM_H

#include <stddef.h>
#include <stdint.h>

#if defined(GQM_BUILDING_LIBRARY)
#define GQM_API __attribute__((visibility("default")))
#else
#define GQM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gqm_status {
  GQM_OK = 0,
  GQM_ERR_INVALID_ARGUMENT = 1, /* bad value, non-Hermitian operator, malformed config */
  GQM_ERR_DIMENSION = 2,        /* operands of different dimension */
  GQM_ERR_DEPENDENT = 3,        /* linearly dependent vectors */
  GQM_ERR_NUMERICAL = 4,        /* quadrature or integration failed to converge */
  GQM_ERR_IO = 5,               /* file could not be read or written */
  GQM_ERR_NULL = 6,             /* required pointer argument was NULL */
  GQM_ERR_INTERNAL = 7
} gqm_status;

typedef struct gqm_vector gqm_vector;
typedef struct gqm_operator gqm_operator;
typedef struct gqm_ray gqm_ray;
typedef struct gqm_report gqm_report;
typedef struct gqm_trajectory gqm_trajectory;
typedef struct gqm_pattern gqm_pattern;
typedef struct gqm_path gqm_path;

GQM_API const char* gqm_version(void);
GQM_API const char* gqm_last_error(void);
GQM_API const char* gqm_status_name(gqm_status status);

/* Vectors: `interleaved` holds 2*dim doubles. */
GQM_API gqm_status gqm_vector_create(const double* interleaved, size_t dim, gqm_vector** out);
GQM_API gqm_status gqm_vector_from_json(const char* json, gqm_vector** out);
GQM_API size_t gqm_vector_dim(const gqm_vector* v);
GQM_API gqm_status gqm_vector_get(const gqm_vector* v, double* interleaved, size_t capacity_dim);
GQM_API void gqm_vector_destroy(gqm_vector* v);

/* Operators: row-major dim*dim complex entries, Hermitian to 1e-12. */
GQM_API gqm_status gqm_operator_create(const double* interleaved, size_t dim, gqm_operator** out);
GQM_API gqm_status gqm_operator_from_json(const char* json, gqm_operator** out);
/* Named operators: sigma_x, sigma_y, sigma_z, identity:N, oscillator:N,
 * position:N, momentum:N. */
GQM_API gqm_status gqm_operator_from_spec(const char* spec, gqm_operator** out);
GQM_API size_t gqm_operator_dim(const gqm_operator* op);
GQM_API void gqm_operator_destroy(gqm_operator* op);

/* Rays: normalized and gauge-fixed copies of a nonzero vector. */
GQM_API gqm_status gqm_ray_from_vector(const gqm_vector* v, gqm_ray** out);
/* JSON vector literal or named state: up, down, plus, minus, plus_y, minus_y
   (dimension 2), level:K. The state must have dimension dim. */
GQM_API gqm_status gqm_ray_from_spec(const char* spec, size_t dim, gqm_ray** out);
GQM_API size_t gqm_ray_dim(const gqm_ray* r);
GQM_API gqm_status gqm_ray_representative(const gqm_ray* r, double* interleaved, size_t capacity_dim);
GQM_API void gqm_ray_destroy(gqm_ray* r);

/* Geometry and dynamics. */
GQM_API gqm_status gqm_fs_distance(const gqm_ray* a, const gqm_ray* b, double* out);
GQM_API gqm_status gqm_transition_probability(const gqm_ray* a, const gqm_ray* b, double* out);
GQM_API gqm_status gqm_expectation(const gqm_operator* f, const gqm_ray* at, double* out);
/* <-i[F, G]> */
GQM_API gqm_status gqm_commutator_expectation(const gqm_operator* f, const gqm_operator* g, const gqm_ray* at,
                                              double* out);
/* Observable scale: {f, g} and (f, g). */
GQM_API gqm_status gqm_poisson_bracket(const gqm_operator* f, const gqm_operator* g, const gqm_ray* at,
                                       double* out);
GQM_API gqm_status gqm_riemannian_product(const gqm_operator* f, const gqm_operator* g, const gqm_ray* at,
                                          double* out);
/* out[4] = {lhs, symplectic_term, metric_term, slack}. */
GQM_API gqm_status gqm_uncertainty_audit(const gqm_operator* f, const gqm_operator* m, const gqm_ray* at,
                                         double out[4]);
GQM_API gqm_status gqm_evolve_exact(const gqm_operator* h, const gqm_ray* start, double t, gqm_ray** out);
/* Statistical area of the sphere through a and b; out[2] = {area, error estimate}. */
GQM_API gqm_status gqm_sphere_area(const gqm_ray* a, const gqm_ray* b, double out[2]);
/* out[4] = {max off-sphere residual, |length - distance|, arrival residual, converged}. */
GQM_API gqm_status gqm_geodesy_certificate(const gqm_ray* a, const gqm_ray* b, double dt, uint64_t seed,
                                           double out[4]);

GQM_API gqm_status gqm_flow_integrate(const gqm_operator* h, const gqm_ray* start, double t_end, double dt,
                                      gqm_trajectory** out);
GQM_API size_t gqm_trajectory_samples(const gqm_trajectory* t);
GQM_API gqm_status gqm_trajectory_point(const gqm_trajectory* t, size_t index, double* time,
                                        gqm_ray** point);
GQM_API gqm_status gqm_trajectory_write_csv(const gqm_trajectory* t, const char* path);
GQM_API void gqm_trajectory_destroy(gqm_trajectory* t);

/* Suites. Tolerance scale multiplies every tolerance and must be positive. */
GQM_API gqm_status gqm_run_kahler_audit(const size_t* dims, size_t n_dims, const uint64_t* seeds, size_t n_seeds,
                                        size_t trials, double tolerance_scale, gqm_report** out);
/* `path_out` may be NULL; otherwise it receives the first certified path, or NULL if none. */
GQM_API gqm_status gqm_run_geodesic_verify(const size_t* dims, size_t n_dims, size_t pairs, double dt,
                                           uint64_t seed, double tolerance_scale, gqm_report** out,
                                           gqm_path** path_out);
/* `config_path` NULL runs the default two-slit configuration. */
GQM_API gqm_status gqm_run_two_slit(const char* config_path, uint64_t seed, double tolerance_scale,
                                    gqm_report** out, gqm_pattern** pattern_out);
GQM_API gqm_status gqm_run_evolve(const char* hamiltonian_spec, const char* start_spec, double t_end, double dt,
                                  double tolerance_scale, gqm_report** out, gqm_trajectory** trajectory_out);
GQM_API gqm_status gqm_run_demo_spin(double dt, double tolerance_scale, gqm_report** out,
                                     gqm_trajectory** trajectory_out);

GQM_API size_t gqm_report_entry_count(const gqm_report* r);
GQM_API size_t gqm_report_failure_count(const gqm_report* r);
GQM_API size_t gqm_report_warning_count(const gqm_report* r);
GQM_API const char* gqm_report_warning(const gqm_report* r, size_t index);
/* Name pointer is owned by the report. */
GQM_API gqm_status gqm_report_entry(const gqm_report* r, size_t index, const char** check_name, double* residual,
                                    double* tolerance, int* pass);
GQM_API gqm_status gqm_report_set_seed(gqm_report* r, uint64_t seed);
GQM_API gqm_status gqm_report_write_json(const gqm_report* r, const char* path);
GQM_API void gqm_report_destroy(gqm_report* r);

GQM_API size_t gqm_pattern_points(const gqm_pattern* p);
GQM_API gqm_status gqm_pattern_write_csv(const gqm_pattern* p, const char* path);
GQM_API void gqm_pattern_destroy(gqm_pattern* p);

GQM_API gqm_status gqm_path_write_csv(const gqm_path* p, const char* path);
GQM_API void gqm_path_destroy(gqm_path* p);

#ifdef __cplusplus
}
#endif

#endif
