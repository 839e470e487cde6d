/* qht -- thermal-wave simulation on circular quantum corrals.
 *
 * C interface to the solver library. All functions return a qht_status;
 * on failure qht_last_error() holds a thread-local message describing
 * what went wrong. Handles are opaque and freed with their *_free call.
 */
#ifndef QHT_H
#define QHT_H

#include <stddef.h>

#if defined(_WIN32)
#define QHT_API __declspec(dllexport)
#else
#define QHT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qht_status {
  QHT_OK = 0,
  QHT_ERROR_INVALID_ARGUMENT = 1, /* bad parameter or config field */
  QHT_ERROR_PARSE = 2,            /* config text could not be parsed */
  QHT_ERROR_DIVERGED = 3,         /* solver produced non-finite values */
  QHT_ERROR_IO = 4,               /* file could not be read or written */
  QHT_ERROR_NO_CONVERGENCE = 5,   /* iterative kernel exhausted its budget */
  QHT_ERROR_INTERNAL = 6
} qht_status;

QHT_API const char* qht_status_name(qht_status status);

/* Message for the most recent failure on the calling thread. */
QHT_API const char* qht_last_error(void);

QHT_API const char* qht_version(void);

/* ---- physical constants (SI) ------------------------------------- */

QHT_API double qht_hbar(void);
QHT_API double qht_speed_of_light(void);
QHT_API double qht_electron_mass(void);
QHT_API double qht_electron_volt(void);

/* Published reference values for electron carriers at v = 5e-3 c,
 * reported alongside computed values for comparison. */
QHT_API double qht_reference_relaxation_time(void); /* 160 as, in seconds */
QHT_API double qht_reference_mean_free_path(void);  /* 0.1 nm, in meters */

/* ---- carrier parameters ------------------------------------------ */

typedef struct qht_carrier {
  double mass_kg;
  double velocity_m_per_s;
} qht_carrier;

typedef struct qht_carrier_params {
  double relaxation_time_s;          /* hbar / (m v^2) */
  double diffusivity_m2_per_s;       /* hbar / m */
  double mean_free_path_m;           /* hbar / (m v) */
  double distortionless_potential_j; /* m v^2 / 8, the V with q = 0 */
  double potential_j;                /* the V the q below corresponds to */
  double q_per_m2;                   /* 2 V m / hbar^2 - (m v / 2 hbar)^2 */
} qht_carrier_params;

QHT_API qht_status qht_carrier_electron(double velocity_fraction_of_c,
                                        qht_carrier* out);

QHT_API qht_status qht_carrier_params_compute(const qht_carrier* carrier,
                                              double potential_j,
                                              qht_carrier_params* out);

/* Parses "<number> <suffix>" using the config unit tables.
 * dimension: "length", "time", "speed", "energy", "mass", "none". */
QHT_API qht_status qht_parse_quantity(const char* text, const char* dimension,
                                      double* out);

/* ---- configurations ----------------------------------------------- */

typedef struct qht_config qht_config;

QHT_API qht_status qht_config_parse_file(const char* path, qht_config** out);
QHT_API qht_status qht_config_parse_string(const char* text, qht_config** out);

/* Preset corral runs; name is one of fig1, fig2, fig3, fig4. */
QHT_API qht_status qht_config_scenario(const char* name, qht_config** out);

QHT_API qht_status qht_config_clone_with_grid(const qht_config* config,
                                              int n_r, int n_theta,
                                              qht_config** out);

/* Forces solver = both (used by compare runs). */
QHT_API qht_status qht_config_set_solver_both(qht_config* config);

QHT_API void qht_config_free(qht_config* config);

/* Canonical serialized form of the config. Writes up to capacity bytes
 * including the NUL terminator; *required receives the full length. */
QHT_API qht_status qht_config_describe(const qht_config* config, char* buffer,
                                       size_t capacity, size_t* required);

QHT_API qht_status qht_config_carrier(const qht_config* config, qht_carrier* out);
QHT_API qht_status qht_config_potential(const qht_config* config, double* out_j);
QHT_API qht_status qht_config_radius(const qht_config* config, double* out_m);
QHT_API qht_status qht_config_grid(const qht_config* config, int* out_n_r,
                                   int* out_n_theta);
QHT_API qht_status qht_config_total_time(const qht_config* config, double* out_s);
QHT_API qht_status qht_config_snapshot_count(const qht_config* config, size_t* out);
QHT_API qht_status qht_config_output_dir(const qht_config* config, char* buffer,
                                         size_t capacity, size_t* required);

/* ---- runs ---------------------------------------------------------- */

typedef struct qht_run qht_run;

typedef enum qht_solver {
  QHT_SOLVER_SPECTRAL = 0,
  QHT_SOLVER_FDTD = 1
} qht_solver;

QHT_API qht_status qht_run_simulate(const qht_config* config, qht_run** out);
QHT_API void qht_run_free(qht_run* run);

QHT_API size_t qht_run_snapshot_count(const qht_run* run);

/* Exact step time of the snapshot, in seconds. */
QHT_API qht_status qht_run_snapshot_time(const qht_run* run, size_t index,
                                         double* out_s);

QHT_API int qht_run_has_solver(const qht_run* run, qht_solver solver);

/* Copies the snapshot's n_r x n_theta node values (row-major in the
 * radial index) into values; capacity is the element count of values. */
QHT_API qht_status qht_run_field(const qht_run* run, qht_solver solver,
                                 size_t index, double* values, size_t capacity);

QHT_API qht_status qht_run_time_step(const qht_run* run, double* out_s);
QHT_API qht_status qht_run_step_count(const qht_run* run, long* out);

/* Max and area-weighted RMS difference between the two solvers at one
 * snapshot; the run must have been simulated with solver = both. */
QHT_API qht_status qht_run_error_norms(const qht_run* run, size_t index,
                                       double* out_linf, double* out_l2);

/* Writes one CSV per snapshot per solver plus manifest.conf. */
QHT_API qht_status qht_run_write(const qht_run* run, const char* directory);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QHT_H */
