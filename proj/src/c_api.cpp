#include "mimonoma/mimonoma.h"

#include <algorithm>
#include <exception>
#include <new>
#include <string>

#include "mimonoma/beamforming.hpp"
#include "mimonoma/channel.hpp"
#include "mimonoma/error.hpp"
#include "mimonoma/experiments.hpp"
#include "mimonoma/oracle.hpp"
#include "mimonoma/power_allocation.hpp"
#include "mimonoma/rate_model.hpp"
#include "mimonoma/table.hpp"
#include "mimonoma/verify.hpp"

struct mn_system {
  mimonoma::SystemConfig config;
};

struct mn_experiment {
  mimonoma::ExperimentConfig config;
  int instances = 1000;
};

struct mn_table {
  mimonoma::Table table;
};

struct mn_report {
  mimonoma::VerifyReport report;
  std::string text;
};

namespace {

using namespace mimonoma;

thread_local std::string last_error;

mn_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return MN_ERR_INVALID_ARGUMENT;
    case ErrorCode::kAlignmentInfeasible:
      return MN_ERR_ALIGNMENT_INFEASIBLE;
    case ErrorCode::kDegenerateChannel:
      return MN_ERR_DEGENERATE_CHANNEL;
    case ErrorCode::kInfeasible:
      return MN_ERR_INFEASIBLE;
    case ErrorCode::kNoSignChange:
      return MN_ERR_NO_SIGN_CHANGE;
    case ErrorCode::kNotConverged:
      return MN_ERR_NOT_CONVERGED;
    case ErrorCode::kIo:
      return MN_ERR_IO;
  }
  return MN_ERR_INTERNAL;
}

mn_status fail(mn_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
mn_status guarded(F&& body) {
  try {
    body();
    return MN_OK;
  } catch (const Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MN_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MN_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MN_ERR_INTERNAL, "unknown exception");
  }
}

template <typename... Ptrs>
bool any_null(const Ptrs*... ptrs) {
  return ((ptrs == nullptr) || ...);
}

#define MN_REQUIRE(...)                                             \
  do {                                                              \
    if (any_null(__VA_ARGS__))                                      \
      return fail(MN_ERR_INVALID_ARGUMENT, "null pointer argument"); \
  } while (0)

EffectiveCluster from_c(const mn_effective_cluster& ec) {
  return {ec.gamma1, ec.gamma2, ec.rho};
}
PowerSplit from_c(const mn_power_split& ps) { return {ps.a1sq, ps.a2sq}; }
DofSplit from_c(const mn_dof_split& df) { return {df.lam1, df.lam2}; }
DofMode from_c(mn_dof_mode mode) {
  return mode == MN_DOF_EQUAL ? DofMode::kEqual : DofMode::kOptimal;
}
PaInterval from_c(const mn_pa_interval& iv) {
  return {iv.lo, iv.hi, from_c(iv.kind)};
}

mn_rate_pair to_c(const RatePair& rp) { return {rp.r1, rp.r2}; }
mn_power_split to_c(const PowerSplit& ps) { return {ps.a1sq, ps.a2sq}; }
mn_dof_split to_c(const DofSplit& df) { return {df.lam1, df.lam2}; }
mn_pa_interval to_c(const PaInterval& iv) {
  return {iv.lo, iv.hi,
          iv.kind == DofMode::kEqual ? MN_DOF_EQUAL : MN_DOF_OPTIMAL};
}

bool valid_mode(mn_dof_mode mode) {
  return mode == MN_DOF_OPTIMAL || mode == MN_DOF_EQUAL;
}

}  // namespace

extern "C" {

const char* mn_status_name(mn_status status) {
  switch (status) {
    case MN_OK:
      return "ok";
    case MN_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case MN_ERR_ALIGNMENT_INFEASIBLE:
      return "alignment infeasible";
    case MN_ERR_DEGENERATE_CHANNEL:
      return "degenerate channel";
    case MN_ERR_INFEASIBLE:
      return "infeasible";
    case MN_ERR_NO_SIGN_CHANGE:
      return "no sign change";
    case MN_ERR_NOT_CONVERGED:
      return "not converged";
    case MN_ERR_IO:
      return "i/o error";
    case MN_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* mn_last_error_message(void) { return last_error.c_str(); }

const char* mn_version(void) { return "1.0.0"; }

mn_status mn_noma_rates(const mn_effective_cluster* ec,
                        const mn_power_split* ps, mn_rate_pair* out) {
  MN_REQUIRE(ec, ps, out);
  return guarded([&] { *out = to_c(noma_rates(from_c(*ec), from_c(*ps))); });
}

mn_status mn_oma_rates(const mn_effective_cluster* ec, const mn_power_split* ps,
                       const mn_dof_split* df, mn_rate_pair* out) {
  MN_REQUIRE(ec, ps, df, out);
  return guarded(
      [&] { *out = to_c(oma_rates(from_c(*ec), from_c(*ps), from_c(*df))); });
}

mn_status mn_optimal_dof(const mn_effective_cluster* ec,
                         const mn_power_split* ps, mn_dof_split* out) {
  MN_REQUIRE(ec, ps, out);
  return guarded([&] { *out = to_c(optimal_dof(from_c(*ec), from_c(*ps))); });
}

mn_status mn_oma_sum_bound(const mn_effective_cluster* ec,
                           const mn_power_split* ps, double* out) {
  MN_REQUIRE(ec, ps, out);
  return guarded([&] { *out = oma_sum_bound(from_c(*ec), from_c(*ps)); });
}

mn_status mn_jain_index(const mn_rate_pair* rates, double* out) {
  MN_REQUIRE(rates, out);
  return guarded([&] { *out = jain_index({rates->r1, rates->r2}); });
}

mn_status mn_pa_interval_compute(const mn_effective_cluster* ec,
                                 const mn_power_split* oma_ps, mn_dof_mode mode,
                                 mn_pa_interval* out) {
  MN_REQUIRE(ec, oma_ps, out);
  if (!valid_mode(mode)) return fail(MN_ERR_INVALID_ARGUMENT, "bad DoF mode");
  return guarded([&] {
    *out = to_c(pa_interval(from_c(*ec), from_c(*oma_ps), from_c(mode)));
  });
}

mn_status mn_feasibility_margin(const mn_effective_cluster* ec,
                                const mn_power_split* oma_ps, double* out) {
  MN_REQUIRE(ec, oma_ps, out);
  return guarded(
      [&] { *out = feasibility_margin(from_c(*ec), from_c(*oma_ps)); });
}

mn_status mn_select_pa(const mn_pa_interval* iv, mn_pa_policy policy,
                       mn_power_split* out) {
  MN_REQUIRE(iv, out);
  PaPolicy p;
  switch (policy) {
    case MN_PA_STRONG_PARITY:
      p = PaPolicy::kStrongParity;
      break;
    case MN_PA_WEAK_PARITY:
      p = PaPolicy::kWeakParity;
      break;
    case MN_PA_MIDPOINT:
      p = PaPolicy::kMidpoint;
      break;
    default:
      return fail(MN_ERR_INVALID_ARGUMENT, "bad PA policy");
  }
  return guarded([&] { *out = to_c(select_pa(from_c(*iv), p)); });
}

mn_status mn_grid_max_oma_sum(const mn_effective_cluster* ec,
                              const mn_power_split* oma_ps, double step,
                              mn_dof_split* argmax, double* max_sum) {
  MN_REQUIRE(ec, oma_ps, argmax, max_sum);
  return guarded([&] {
    const GridMaximum g = grid_max_oma_sum(from_c(*ec), from_c(*oma_ps), step);
    *argmax = to_c(g.argmax);
    *max_sum = g.max_sum;
  });
}

mn_status mn_bisect_parity(const mn_effective_cluster* ec,
                           const mn_power_split* oma_ps, mn_user user,
                           mn_dof_mode mode, double* a1sq) {
  MN_REQUIRE(ec, oma_ps, a1sq);
  if (!valid_mode(mode) || (user != MN_USER_STRONG && user != MN_USER_WEAK)) {
    return fail(MN_ERR_INVALID_ARGUMENT, "bad user or DoF mode");
  }
  return guarded([&] {
    *a1sq = bisect_parity(from_c(*ec), from_c(*oma_ps),
                          user == MN_USER_STRONG ? User::kStrong : User::kWeak,
                          from_c(mode));
  });
}

mn_status mn_scan_dominance(const mn_effective_cluster* ec,
                            const mn_power_split* oma_ps, mn_dof_mode mode,
                            double step, mn_pa_interval* out) {
  MN_REQUIRE(ec, oma_ps, out);
  if (!valid_mode(mode)) return fail(MN_ERR_INVALID_ARGUMENT, "bad DoF mode");
  return guarded([&] {
    *out = to_c(scan_dominance(from_c(*ec), from_c(*oma_ps), from_c(mode), step));
  });
}

mn_status mn_system_create(mn_system** out) {
  MN_REQUIRE(out);
  return guarded([&] { *out = new mn_system{}; });
}

void mn_system_destroy(mn_system* sys) { delete sys; }

mn_status mn_system_set_antennas(mn_system* sys, int num_clusters,
                                 int user_antennas) {
  MN_REQUIRE(sys);
  return guarded([&] {
    SystemConfig next = sys->config;
    next.num_clusters = num_clusters;
    next.user_antennas = user_antennas;
    next.validate();
    sys->config = next;
  });
}

mn_status mn_system_set_path_loss(mn_system* sys, double exponent,
                                  double distance_min, double distance_max) {
  MN_REQUIRE(sys);
  return guarded([&] {
    SystemConfig next = sys->config;
    next.path_loss_exponent = exponent;
    next.distance_range = {distance_min, distance_max};
    next.validate();
    sys->config = next;
  });
}

mn_status mn_system_set_rho(mn_system* sys, double rho) {
  MN_REQUIRE(sys);
  return guarded([&] {
    SystemConfig next = sys->config;
    next.snr_rho = rho;
    next.validate();
    sys->config = next;
  });
}

mn_status mn_system_set_seed(mn_system* sys, uint64_t seed) {
  MN_REQUIRE(sys);
  sys->config.rng_seed = seed;
  return MN_OK;
}

mn_status mn_path_loss(double distance, double exponent, double* out) {
  MN_REQUIRE(out);
  return guarded([&] { *out = path_loss(distance, exponent); });
}

mn_status mn_system_beamform(const mn_system* sys, mn_cluster_report* reports,
                             size_t capacity, size_t* count) {
  MN_REQUIRE(sys, count);
  if (capacity > 0 && reports == nullptr) {
    return fail(MN_ERR_INVALID_ARGUMENT, "null report buffer");
  }
  return guarded([&] {
    const auto clusters = draw_clusters(sys->config);
    const BeamformingSolution bf = beamform(clusters);
    const auto gains = reduce_clusters(clusters, bf, sys->config.snr_rho);
    *count = clusters.size();
    for (std::size_t c = 0; c < clusters.size() && c < capacity; ++c) {
      reports[c].cluster_index = clusters[c].cluster_index;
      reports[c].alignment_residual = bf.receivers[c].residual;
      reports[c].max_interference_gain =
          cluster_interference_gain(clusters, bf, c);
      reports[c].gamma1 = gains[c].gamma1;
      reports[c].gamma2 = gains[c].gamma2;
    }
  });
}

mn_status mn_experiment_create(mn_experiment_kind kind, mn_experiment** out) {
  MN_REQUIRE(out);
  ExperimentKind k;
  switch (kind) {
    case MN_EXP_FIG1:
      k = ExperimentKind::kFig1;
      break;
    case MN_EXP_RHO_SWEEP:
      k = ExperimentKind::kRhoSweep;
      break;
    case MN_EXP_MONTECARLO:
      k = ExperimentKind::kMonteCarlo;
      break;
    case MN_EXP_VERIFY:
      k = ExperimentKind::kVerify;
      break;
    default:
      return fail(MN_ERR_INVALID_ARGUMENT, "bad experiment kind");
  }
  return guarded([&] {
    auto* exp = new mn_experiment{};
    exp->config.kind = k;
    *out = exp;
  });
}

void mn_experiment_destroy(mn_experiment* exp) { delete exp; }

mn_status mn_experiment_set_grid(mn_experiment* exp, int points) {
  MN_REQUIRE(exp);
  if (points < 2) return fail(MN_ERR_INVALID_ARGUMENT, "grid needs >= 2 points");
  exp->config.grid = points;
  return MN_OK;
}

mn_status mn_experiment_set_rho_db(mn_experiment* exp, double rho_db) {
  MN_REQUIRE(exp);
  exp->config.rho_db = rho_db;
  return MN_OK;
}

mn_status mn_experiment_set_rho_range(mn_experiment* exp, double min_db,
                                      double max_db, double step_db) {
  MN_REQUIRE(exp);
  if (!(step_db > 0.0) || !(min_db <= max_db)) {
    return fail(MN_ERR_INVALID_ARGUMENT,
                "rho range must satisfy min <= max and step > 0");
  }
  exp->config.rho_range = {min_db, max_db, step_db};
  exp->config.rho_db.reset();
  return MN_OK;
}

mn_status mn_experiment_set_trials(mn_experiment* exp, int trials) {
  MN_REQUIRE(exp);
  if (trials < 1) return fail(MN_ERR_INVALID_ARGUMENT, "trials must be >= 1");
  exp->config.trials = trials;
  return MN_OK;
}

mn_status mn_experiment_set_instances(mn_experiment* exp, int instances) {
  MN_REQUIRE(exp);
  if (instances < 1) {
    return fail(MN_ERR_INVALID_ARGUMENT, "instances must be >= 1");
  }
  exp->instances = instances;
  return MN_OK;
}

mn_status mn_experiment_set_seed(mn_experiment* exp, uint64_t seed) {
  MN_REQUIRE(exp);
  exp->config.seed = seed;
  return MN_OK;
}

mn_status mn_experiment_set_gains(mn_experiment* exp, double gain1,
                                  double gain2) {
  MN_REQUIRE(exp);
  if (!(gain2 > 0.0) || !(gain1 > 0.0)) {
    return fail(MN_ERR_INVALID_ARGUMENT, "gains must be positive");
  }
  // Stored strong user first.
  exp->config.gain1 = std::max(gain1, gain2);
  exp->config.gain2 = std::min(gain1, gain2);
  return MN_OK;
}

mn_status mn_experiment_set_oma_alpha2(mn_experiment* exp, double alpha2) {
  MN_REQUIRE(exp);
  if (!(alpha2 >= 0.0 && alpha2 <= 1.0)) {
    return fail(MN_ERR_INVALID_ARGUMENT, "OMA alpha2 must be in [0,1]");
  }
  exp->config.oma_alpha2 = alpha2;
  return MN_OK;
}

mn_status mn_experiment_set_montecarlo_gains(mn_experiment* exp, int enabled) {
  MN_REQUIRE(exp);
  exp->config.gains = enabled ? GainSource::kMonteCarlo : GainSource::kFixed;
  return MN_OK;
}

mn_status mn_experiment_set_threads(mn_experiment* exp, unsigned threads) {
  MN_REQUIRE(exp);
  if (threads < 1) return fail(MN_ERR_INVALID_ARGUMENT, "threads must be >= 1");
  exp->config.threads = threads;
  return MN_OK;
}

mn_status mn_experiment_set_system(mn_experiment* exp, const mn_system* sys) {
  MN_REQUIRE(exp, sys);
  exp->config.system = sys->config;
  return MN_OK;
}

mn_status mn_experiment_run(const mn_experiment* exp, mn_table** out) {
  MN_REQUIRE(exp, out);
  return guarded([&] { *out = new mn_table{run_experiment(exp->config)}; });
}

void mn_table_destroy(mn_table* table) { delete table; }

size_t mn_table_rows(const mn_table* table) {
  return table ? table->table.rows.size() : 0;
}

size_t mn_table_columns(const mn_table* table) {
  return table ? table->table.columns.size() : 0;
}

const char* mn_table_column_name(const mn_table* table, size_t index) {
  if (!table || index >= table->table.columns.size()) return nullptr;
  return table->table.columns[index].c_str();
}

mn_status mn_table_number(const mn_table* table, size_t row, const char* column,
                          double* out) {
  MN_REQUIRE(table, column, out);
  if (row >= table->table.rows.size()) {
    return fail(MN_ERR_INVALID_ARGUMENT, "row out of range");
  }
  return guarded([&] { *out = table->table.number(row, column); });
}

mn_status mn_table_write(const mn_table* table, mn_format format,
                         const char* path) {
  MN_REQUIRE(table, path);
  if (format != MN_FORMAT_CSV && format != MN_FORMAT_JSON) {
    return fail(MN_ERR_INVALID_ARGUMENT, "bad output format");
  }
  return guarded([&] {
    emit_output(table->table,
                format == MN_FORMAT_CSV ? OutputFormat::kCsv : OutputFormat::kJson,
                path);
  });
}

mn_status mn_experiment_verify(const mn_experiment* exp, mn_report** out) {
  MN_REQUIRE(exp, out);
  return guarded([&] {
    VerifyOptions options = verify_options(exp->config);
    options.instances = exp->instances;
    auto* report = new mn_report{verify(options), {}};
    report->text = report->report.to_text();
    *out = report;
  });
}

void mn_report_destroy(mn_report* report) { delete report; }

int mn_report_passed(const mn_report* report) {
  return report && report->report.passed() ? 1 : 0;
}

const char* mn_report_text(const mn_report* report) {
  return report ? report->text.c_str() : "";
}

}  // extern "C"
