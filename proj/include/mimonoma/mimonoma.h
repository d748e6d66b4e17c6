/*
 * C interface to the mimonoma library: two-user MIMO-NOMA vs MIMO-OMA rate
 * comparison, power-allocation intervals and the experiment drivers.
 *
 * Every fallible call returns an mn_status. On failure a human-readable
 * message for the calling thread is available from mn_last_error_message()
 * until the next failing call on that thread. Handles are opaque and owned
 * by the caller; release them with the matching *_destroy function
 * (passing NULL is allowed).
 */
#ifndef MIMONOMA_H
#define MIMONOMA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef MIMONOMA_BUILDING_LIBRARY
#    define MN_API __declspec(dllexport)
#  else
#    define MN_API __declspec(dllimport)
#  endif
#else
#  define MN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mn_status {
  MN_OK = 0,
  MN_ERR_INVALID_ARGUMENT = 1,
  MN_ERR_ALIGNMENT_INFEASIBLE = 2, /* 2N <= M */
  MN_ERR_DEGENERATE_CHANNEL = 3,   /* resample the channel */
  MN_ERR_INFEASIBLE = 4,           /* e.g. gamma2 == 0, empty interval */
  MN_ERR_NO_SIGN_CHANGE = 5,       /* bisection: parity unachievable */
  MN_ERR_NOT_CONVERGED = 6,
  MN_ERR_IO = 7,
  MN_ERR_INTERNAL = 8
} mn_status;

MN_API const char* mn_status_name(mn_status status);
MN_API const char* mn_last_error_message(void);
MN_API const char* mn_version(void);

/* ---- scalar cluster model ---------------------------------------------- */

typedef struct mn_effective_cluster {
  double gamma1; /* strong user's effective gain */
  double gamma2; /* weak user's effective gain, <= gamma1 */
  double rho;    /* linear SNR */
} mn_effective_cluster;

typedef struct mn_power_split {
  double a1sq;
  double a2sq;
} mn_power_split;

typedef struct mn_dof_split {
  double lam1;
  double lam2;
} mn_dof_split;

typedef struct mn_rate_pair {
  double r1;
  double r2;
} mn_rate_pair;

typedef enum mn_dof_mode { MN_DOF_OPTIMAL = 0, MN_DOF_EQUAL = 1 } mn_dof_mode;

typedef enum mn_pa_policy {
  MN_PA_STRONG_PARITY = 0,
  MN_PA_WEAK_PARITY = 1,
  MN_PA_MIDPOINT = 2
} mn_pa_policy;

typedef enum mn_user { MN_USER_STRONG = 1, MN_USER_WEAK = 2 } mn_user;

typedef struct mn_pa_interval {
  double lo;
  double hi;
  mn_dof_mode kind;
} mn_pa_interval;

MN_API mn_status mn_noma_rates(const mn_effective_cluster* ec,
                               const mn_power_split* ps, mn_rate_pair* out);
MN_API mn_status mn_oma_rates(const mn_effective_cluster* ec,
                              const mn_power_split* ps, const mn_dof_split* df,
                              mn_rate_pair* out);
MN_API mn_status mn_optimal_dof(const mn_effective_cluster* ec,
                                const mn_power_split* ps, mn_dof_split* out);
MN_API mn_status mn_oma_sum_bound(const mn_effective_cluster* ec,
                                  const mn_power_split* ps, double* out);
MN_API mn_status mn_jain_index(const mn_rate_pair* rates, double* out);

MN_API mn_status mn_pa_interval_compute(const mn_effective_cluster* ec,
                                        const mn_power_split* oma_ps,
                                        mn_dof_mode mode, mn_pa_interval* out);
MN_API mn_status mn_feasibility_margin(const mn_effective_cluster* ec,
                                       const mn_power_split* oma_ps,
                                       double* out);
MN_API mn_status mn_select_pa(const mn_pa_interval* iv, mn_pa_policy policy,
                              mn_power_split* out);

/* Brute-force oracles. */
MN_API mn_status mn_grid_max_oma_sum(const mn_effective_cluster* ec,
                                     const mn_power_split* oma_ps, double step,
                                     mn_dof_split* argmax, double* max_sum);
MN_API mn_status mn_bisect_parity(const mn_effective_cluster* ec,
                                  const mn_power_split* oma_ps, mn_user user,
                                  mn_dof_mode mode, double* a1sq);
MN_API mn_status mn_scan_dominance(const mn_effective_cluster* ec,
                                   const mn_power_split* oma_ps,
                                   mn_dof_mode mode, double step,
                                   mn_pa_interval* out);

/* ---- channel synthesis and beamforming ---------------------------------- */

typedef struct mn_system mn_system;

/* Defaults: M = 4, N = 3, rho = 1000, exponent 3.8, distances [1, 3], seed 1. */
MN_API mn_status mn_system_create(mn_system** out);
MN_API void mn_system_destroy(mn_system* sys);
MN_API mn_status mn_system_set_antennas(mn_system* sys, int num_clusters,
                                        int user_antennas);
MN_API mn_status mn_system_set_path_loss(mn_system* sys, double exponent,
                                         double distance_min,
                                         double distance_max);
MN_API mn_status mn_system_set_rho(mn_system* sys, double rho);
MN_API mn_status mn_system_set_seed(mn_system* sys, uint64_t seed);

MN_API mn_status mn_path_loss(double distance, double exponent, double* out);

typedef struct mn_cluster_report {
  int cluster_index;
  double alignment_residual;
  double max_interference_gain; /* max_{k, i != m} |v_{m,k}^H H_{m,k} p_i|^2 */
  double gamma1;
  double gamma2;
} mn_cluster_report;

/* Draws one channel set from the system's seed, beamforms it and fills up
 * to `capacity` reports. `*count` receives the number of clusters. */
MN_API mn_status mn_system_beamform(const mn_system* sys,
                                    mn_cluster_report* reports,
                                    size_t capacity, size_t* count);

/* ---- experiments -------------------------------------------------------- */

typedef enum mn_experiment_kind {
  MN_EXP_FIG1 = 0,
  MN_EXP_RHO_SWEEP = 1,
  MN_EXP_MONTECARLO = 2,
  MN_EXP_VERIFY = 3
} mn_experiment_kind;

typedef enum mn_format { MN_FORMAT_CSV = 0, MN_FORMAT_JSON = 1 } mn_format;

typedef struct mn_experiment mn_experiment;
typedef struct mn_table mn_table;
typedef struct mn_report mn_report;

MN_API mn_status mn_experiment_create(mn_experiment_kind kind,
                                      mn_experiment** out);
MN_API void mn_experiment_destroy(mn_experiment* exp);
MN_API mn_status mn_experiment_set_grid(mn_experiment* exp, int points);
MN_API mn_status mn_experiment_set_rho_db(mn_experiment* exp, double rho_db);
MN_API mn_status mn_experiment_set_rho_range(mn_experiment* exp, double min_db,
                                             double max_db, double step_db);
MN_API mn_status mn_experiment_set_trials(mn_experiment* exp, int trials);
MN_API mn_status mn_experiment_set_instances(mn_experiment* exp, int instances);
MN_API mn_status mn_experiment_set_seed(mn_experiment* exp, uint64_t seed);
MN_API mn_status mn_experiment_set_gains(mn_experiment* exp, double gain1,
                                         double gain2);
MN_API mn_status mn_experiment_set_oma_alpha2(mn_experiment* exp,
                                              double alpha2);
/* Nonzero: rho sweep averages over synthesized channels. */
MN_API mn_status mn_experiment_set_montecarlo_gains(mn_experiment* exp,
                                                    int enabled);
MN_API mn_status mn_experiment_set_threads(mn_experiment* exp,
                                           unsigned threads);
MN_API mn_status mn_experiment_set_system(mn_experiment* exp,
                                          const mn_system* sys);

/* fig1, rho-sweep and montecarlo produce a table. */
MN_API mn_status mn_experiment_run(const mn_experiment* exp, mn_table** out);

MN_API void mn_table_destroy(mn_table* table);
MN_API size_t mn_table_rows(const mn_table* table);
MN_API size_t mn_table_columns(const mn_table* table);
/* Owned by the table. NULL when out of range. */
MN_API const char* mn_table_column_name(const mn_table* table, size_t index);
MN_API mn_status mn_table_number(const mn_table* table, size_t row,
                                 const char* column, double* out);
/* Writes the data file and `<path>.plot.py`. */
MN_API mn_status mn_table_write(const mn_table* table, mn_format format,
                                const char* path);

/* Runs every verification suite; check mn_report_passed for the verdict. */
MN_API mn_status mn_experiment_verify(const mn_experiment* exp,
                                      mn_report** out);
MN_API void mn_report_destroy(mn_report* report);
MN_API int mn_report_passed(const mn_report* report);
/* Owned by the report. */
MN_API const char* mn_report_text(const mn_report* report);

#ifdef __cplusplus
}
#endif

#endif /* MIMONOMA_H */
