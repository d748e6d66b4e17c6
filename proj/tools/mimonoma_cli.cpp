// Experiment driver: reproduces the rate-comparison figures and runs the
// verification suites through the C API.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mimonoma/mimonoma.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct SystemDeleter {
  void operator()(mn_system* s) const { mn_system_destroy(s); }
};
struct ExperimentDeleter {
  void operator()(mn_experiment* e) const { mn_experiment_destroy(e); }
};
struct TableDeleter {
  void operator()(mn_table* t) const { mn_table_destroy(t); }
};
struct ReportDeleter {
  void operator()(mn_report* r) const { mn_report_destroy(r); }
};

// Thrown when a C API call fails; carries the library's message.
struct ApiFailure {
  std::string message;
};

void check(mn_status status, const char* what) {
  if (status != MN_OK) {
    throw ApiFailure{std::string(what) + ": " + mn_status_name(status) + ": " +
                     mn_last_error_message()};
  }
}

struct Options {
  std::string experiment;
  double rho_db = 0.0;
  std::vector<double> rho_range;
  int grid = 201;
  int trials = 10000;
  int instances = 1000;
  std::uint64_t seed = 1;
  std::vector<double> gains;
  double oma_alpha2 = 0.5;
  bool montecarlo_gains = false;
  unsigned threads = 1;
  std::string format = "csv";
  std::string out;
  int clusters = 4;
  int user_antennas = 0;  // 0: smallest N with 2N > M
  double path_loss_exponent = 3.8;
  std::vector<double> distance_range{1.0, 3.0};
  bool debug_beamforming = false;
};

std::unique_ptr<mn_system, SystemDeleter> make_system(const Options& o,
                                                      bool rho_given) {
  mn_system* raw = nullptr;
  check(mn_system_create(&raw), "system");
  std::unique_ptr<mn_system, SystemDeleter> sys(raw);
  const int n = o.user_antennas > 0 ? o.user_antennas : o.clusters / 2 + 1;
  check(mn_system_set_antennas(sys.get(), o.clusters, n), "--clusters/--user-antennas");
  check(mn_system_set_path_loss(sys.get(), o.path_loss_exponent,
                                o.distance_range.at(0), o.distance_range.at(1)),
        "--path-loss-exponent/--distance-range");
  if (rho_given) {
    const double rho = std::pow(10.0, o.rho_db / 10.0);
    check(mn_system_set_rho(sys.get(), rho), "--rho-db");
  }
  check(mn_system_set_seed(sys.get(), o.seed), "--seed");
  return sys;
}

void dump_beamforming(const mn_system* sys) {
  std::vector<mn_cluster_report> reports(64);
  std::size_t count = 0;
  check(mn_system_beamform(sys, reports.data(), reports.size(), &count),
        "beamforming");
  std::fprintf(stderr, "cluster  alignment_residual  max_cross_term  gamma1  gamma2\n");
  for (std::size_t c = 0; c < count && c < reports.size(); ++c) {
    const auto& r = reports[c];
    std::fprintf(stderr, "%7d  %18.3e  %14.3e  %.6g  %.6g\n", r.cluster_index,
                 r.alignment_residual, r.max_interference_gain, r.gamma1,
                 r.gamma2);
  }
}

int run(const Options& o, bool rho_given, bool rho_range_given,
        bool gains_given) {
  mn_experiment_kind kind = MN_EXP_FIG1;
  if (o.experiment == "rho-sweep") kind = MN_EXP_RHO_SWEEP;
  if (o.experiment == "montecarlo") kind = MN_EXP_MONTECARLO;
  if (o.experiment == "verify") kind = MN_EXP_VERIFY;

  auto sys = make_system(o, rho_given);
  if (o.debug_beamforming) dump_beamforming(sys.get());

  mn_experiment* raw = nullptr;
  check(mn_experiment_create(kind, &raw), "experiment");
  std::unique_ptr<mn_experiment, ExperimentDeleter> exp(raw);
  check(mn_experiment_set_system(exp.get(), sys.get()), "system");
  check(mn_experiment_set_grid(exp.get(), o.grid), "--grid");
  check(mn_experiment_set_trials(exp.get(), o.trials), "--trials");
  check(mn_experiment_set_instances(exp.get(), o.instances), "--instances");
  check(mn_experiment_set_seed(exp.get(), o.seed), "--seed");
  check(mn_experiment_set_oma_alpha2(exp.get(), o.oma_alpha2), "--oma-alpha2");
  check(mn_experiment_set_threads(exp.get(), o.threads), "--threads");
  check(mn_experiment_set_montecarlo_gains(exp.get(), o.montecarlo_gains),
        "--montecarlo");
  if (rho_range_given) {
    const double step = o.rho_range.size() > 2 ? o.rho_range[2] : 2.0;
    check(mn_experiment_set_rho_range(exp.get(), o.rho_range.at(0),
                                      o.rho_range.at(1), step),
          "--rho-range");
  }
  if (rho_given) check(mn_experiment_set_rho_db(exp.get(), o.rho_db), "--rho-db");
  if (gains_given) {
    check(mn_experiment_set_gains(exp.get(), o.gains.at(0), o.gains.at(1)),
          "--gains");
  }

  if (kind == MN_EXP_VERIFY) {
    mn_report* report_raw = nullptr;
    check(mn_experiment_verify(exp.get(), &report_raw), "verify");
    std::unique_ptr<mn_report, ReportDeleter> report(report_raw);
    std::fputs(mn_report_text(report.get()), stdout);
    return mn_report_passed(report.get()) ? kExitOk : kExitVerifyFailed;
  }

  mn_table* table_raw = nullptr;
  check(mn_experiment_run(exp.get(), &table_raw), o.experiment.c_str());
  std::unique_ptr<mn_table, TableDeleter> table(table_raw);
  const std::string path =
      o.out.empty() ? o.experiment + "." + o.format : o.out;
  check(mn_table_write(table.get(),
                       o.format == "json" ? MN_FORMAT_JSON : MN_FORMAT_CSV,
                       path.c_str()),
        "--out");
  std::printf("wrote %s (%zu rows, %zu columns) and %s.plot.py\n", path.c_str(),
              mn_table_rows(table.get()), mn_table_columns(table.get()),
              path.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NOMA vs OMA individual-rate comparison experiments"};
  app.require_subcommand(1, 1);
  app.set_config("--config", "", "INI/TOML file; command-line flags win");

  Options o;
  auto* rho_db = app.add_option("--rho-db", o.rho_db,
                                "Single SNR point in dB (fig1 default: 30)");
  auto* rho_range = app.add_option("--rho-range", o.rho_range,
                                   "min,max[,step] in dB (default 0,40,2)")
                        ->delimiter(',')
                        ->expected(2, 3);
  app.add_option("--grid", o.grid, "fig1 points over alpha2'^2")
      ->check(CLI::Range(2, 1000000));
  app.add_option("--trials", o.trials, "Monte-Carlo trials")
      ->check(CLI::PositiveNumber);
  app.add_option("--instances", o.instances,
                 "Random instances per verify suite")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "Base RNG seed");
  auto* gains = app.add_option("--gains", o.gains,
                               "Fixed effective gains g1,g2 (default 0.052,0.0052)")
                    ->delimiter(',')
                    ->expected(2);
  app.add_option("--oma-alpha2", o.oma_alpha2,
                 "OMA weak-user power for the rho sweeps")
      ->check(CLI::Range(0.0, 1.0));
  app.add_flag("--montecarlo", o.montecarlo_gains,
               "rho-sweep: average over synthesized channels");
  app.add_option("--threads", o.threads, "Worker threads for Monte-Carlo runs")
      ->check(CLI::Range(1u, 1024u));
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", o.out, "Output data path (default <experiment>.<format>)");
  app.add_option("--clusters", o.clusters, "Clusters M (= BS antennas)")
      ->check(CLI::PositiveNumber);
  app.add_option("--user-antennas", o.user_antennas,
                 "Receive antennas N (default M/2 + 1)");
  app.add_option("--path-loss-exponent", o.path_loss_exponent)
      ->check(CLI::PositiveNumber);
  app.add_option("--distance-range", o.distance_range, "min,max in meters")
      ->delimiter(',')
      ->expected(2);
  app.add_flag("--debug-beamforming", o.debug_beamforming,
               "Print per-cluster alignment residuals and cross terms");

  for (const auto& [name, help] :
       std::vector<std::pair<std::string, std::string>>{
           {"fig1", "Equal-DoF comparison versus OMA weak-user power"},
           {"rho-sweep", "Rates versus SNR, optimal-DoF comparison"},
           {"montecarlo", "Rates versus SNR averaged over channel draws"},
           {"verify", "Run oracle agreement and invariant suites"}}) {
    app.add_subcommand(name, help)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }
  o.experiment = app.get_subcommands().front()->get_name();

  try {
    return run(o, rho_db->count() > 0, rho_range->count() > 0,
               gains->count() > 0);
  } catch (const ApiFailure& f) {
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    return kExitUsage;
  }
}
