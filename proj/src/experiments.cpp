#include "mimonoma/experiments.hpp"

#include <array>
#include <cmath>
#include <exception>
#include <thread>

#include "mimonoma/beamforming.hpp"
#include "mimonoma/error.hpp"
#include "mimonoma/rate_model.hpp"

namespace mimonoma {

namespace {

constexpr int kMaxRedraws = 100;
constexpr double kDominanceSlack = 1e-10;

constexpr std::array<const char*, 4> kSweepSchemes = {"oma", "oma_equal",
                                                      "noma3", "noma4"};
constexpr std::array<const char*, 3> kMetrics = {"r1", "r2", "sum"};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t trial, int attempt) {
  const std::uint64_t seed = base + trial;
  if (attempt == 0) return seed;
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(attempt)));
}

void append_scheme_columns(std::vector<std::string>& columns,
                           const std::string& scheme) {
  for (const char* metric : kMetrics) columns.push_back(scheme + "_" + metric);
  columns.push_back(scheme + "_jain");
}

void append_scheme_cells(std::vector<Cell>& row, const RatePair& rp) {
  row.emplace_back(rp.r1);
  row.emplace_back(rp.r2);
  row.emplace_back(rp.sum());
  row.emplace_back(jain_index(rp));
}

std::array<RatePair, 4> sweep_rates(const OptimalDofPoint& p) {
  return {p.oma, p.oma_baseline, p.noma3, p.noma4};
}

// Every NOMA point of both intervals must be at least the OMA rate.
std::uint64_t count_dominance_violations(const EffectiveCluster& ec,
                                         const PowerSplit& oma_ps) {
  std::uint64_t violations = 0;
  for (DofMode mode : {DofMode::kOptimal, DofMode::kEqual}) {
    const RatePair oma = oma_reference_rates(ec, oma_ps, mode);
    const PaInterval iv = pa_interval(ec, oma_ps, mode);
    for (PaPolicy policy : {PaPolicy::kStrongParity, PaPolicy::kWeakParity,
                            PaPolicy::kMidpoint}) {
      const RatePair noma = noma_rates(ec, select_pa(iv, policy));
      if (noma.r1 < oma.r1 - kDominanceSlack ||
          noma.r2 < oma.r2 - kDominanceSlack) {
        ++violations;
      }
    }
  }
  return violations;
}

struct TrialOutcome {
  // [rho][scheme][metric], averaged over the clusters of the draw.
  std::vector<double> values;
  std::uint64_t redraws = 0;
  std::uint64_t violations = 0;
};

// Channel gains of one trial, redrawn until beamforming succeeds.
std::vector<EffectiveCluster> trial_gains(const ExperimentConfig& cfg,
                                          std::uint64_t trial,
                                          std::uint64_t& redraws) {
  SystemConfig sys = cfg.system;
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    sys.rng_seed = trial_seed(cfg.seed, trial, attempt);
    const auto clusters = draw_clusters(sys);
    try {
      const BeamformingSolution bf = beamform(clusters);
      auto gains = reduce_clusters(clusters, bf, 1.0);
      bool usable = true;
      for (const auto& ec : gains) usable = usable && ec.gamma2 > 0.0;
      if (usable) return gains;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateChannel) throw;
    }
    ++redraws;
  }
  throw Error(ErrorCode::kNotConverged,
              "gave up after repeated degenerate channel draws");
}

TrialOutcome run_trial(const ExperimentConfig& cfg, std::uint64_t trial,
                       const std::vector<double>& rhos) {
  TrialOutcome outcome;
  const auto gains = trial_gains(cfg, trial, outcome.redraws);
  const PowerSplit oma_ps = PowerSplit::from_weak(cfg.oma_alpha2);
  const std::size_t per_rho = kSweepSchemes.size() * kMetrics.size();
  outcome.values.assign(rhos.size() * per_rho, 0.0);
  const double scale = 1.0 / static_cast<double>(gains.size());

  for (std::size_t j = 0; j < rhos.size(); ++j) {
    double* slot = outcome.values.data() + j * per_rho;
    for (EffectiveCluster ec : gains) {
      ec.rho = rhos[j];
      const auto rates = sweep_rates(optimal_dof_point(ec, oma_ps));
      for (std::size_t s = 0; s < rates.size(); ++s) {
        slot[s * 3 + 0] += scale * rates[s].r1;
        slot[s * 3 + 1] += scale * rates[s].r2;
        slot[s * 3 + 2] += scale * rates[s].sum();
      }
      outcome.violations += count_dominance_violations(ec, oma_ps);
    }
  }
  return outcome;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (grid < 2) {
    throw Error(ErrorCode::kInvalidArgument, "grid needs at least 2 points");
  }
  if (trials < 1) {
    throw Error(ErrorCode::kInvalidArgument, "trials must be at least 1");
  }
  if (!rho_db) {
    if (!(rho_range.step_db > 0.0) || !(rho_range.min_db <= rho_range.max_db)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "rho range must satisfy min <= max and step > 0");
    }
  }
  if (!(gain1 >= gain2) || !(gain2 > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "gains must satisfy gain1 >= gain2 > 0");
  }
  if (!(oma_alpha2 >= 0.0 && oma_alpha2 <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "oma_alpha2 must be in [0,1]");
  }
  if (threads < 1) {
    throw Error(ErrorCode::kInvalidArgument, "threads must be at least 1");
  }
  system.validate();
}

ExperimentKind parse_experiment(const std::string& name) {
  if (name == "fig1") return ExperimentKind::kFig1;
  if (name == "rho-sweep") return ExperimentKind::kRhoSweep;
  if (name == "montecarlo") return ExperimentKind::kMonteCarlo;
  if (name == "verify") return ExperimentKind::kVerify;
  throw Error(ErrorCode::kInvalidArgument, "unknown experiment: " + name);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::vector<double> rho_grid_db(const ExperimentConfig& cfg) {
  if (cfg.rho_db) return {*cfg.rho_db};
  const RhoRange& r = cfg.rho_range;
  const auto steps =
      static_cast<int>(std::floor((r.max_db - r.min_db) / r.step_db + 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) out.push_back(r.min_db + i * r.step_db);
  return out;
}

EqualDofPoint equal_dof_point(const EffectiveCluster& ec,
                              const PowerSplit& oma_ps) {
  const PaInterval iv = pa_interval_equal_dof(ec, oma_ps);
  return {oma_rates(ec, oma_ps, DofSplit::equal()),
          noma_rates(ec, select_pa(iv, PaPolicy::kStrongParity)),
          noma_rates(ec, select_pa(iv, PaPolicy::kWeakParity))};
}

OptimalDofPoint optimal_dof_point(const EffectiveCluster& ec,
                                  const PowerSplit& oma_ps) {
  const PaInterval iv = pa_interval_optimal_dof(ec, oma_ps);
  return {oma_rates(ec, oma_ps, optimal_dof(ec, oma_ps)),
          oma_rates(ec, PowerSplit{0.5, 0.5}, DofSplit::equal()),
          noma_rates(ec, select_pa(iv, PaPolicy::kWeakParity)),
          noma_rates(ec, select_pa(iv, PaPolicy::kStrongParity))};
}

Table run_fig1(const ExperimentConfig& cfg) {
  cfg.validate();
  const double rho = db_to_linear(cfg.rho_db.value_or(30.0));
  const EffectiveCluster ec = EffectiveCluster::ordered(cfg.gain1, cfg.gain2, rho);

  Table table;
  table.columns = {"sweep_variable", "sweep_value"};
  for (const char* scheme : {"oma", "noma1", "noma2"}) {
    append_scheme_columns(table.columns, scheme);
  }
  for (int i = 0; i < cfg.grid; ++i) {
    const double a2 =
        i == cfg.grid - 1 ? 1.0 : static_cast<double>(i) / (cfg.grid - 1);
    const EqualDofPoint p = equal_dof_point(ec, PowerSplit::from_weak(a2));
    std::vector<Cell> row{std::string("oma_alpha2"), a2};
    append_scheme_cells(row, p.oma);
    append_scheme_cells(row, p.noma1);
    append_scheme_cells(row, p.noma2);
    table.add_row(std::move(row));
  }
  return table;
}

Table run_rho_sweep(const ExperimentConfig& cfg) {
  if (cfg.gains == GainSource::kMonteCarlo) return run_montecarlo(cfg);
  cfg.validate();
  const PowerSplit oma_ps = PowerSplit::from_weak(cfg.oma_alpha2);

  Table table;
  table.columns = {"sweep_variable", "sweep_value"};
  for (const char* scheme : kSweepSchemes) {
    append_scheme_columns(table.columns, scheme);
  }
  for (double db : rho_grid_db(cfg)) {
    const EffectiveCluster ec =
        EffectiveCluster::ordered(cfg.gain1, cfg.gain2, db_to_linear(db));
    std::vector<Cell> row{std::string("rho_db"), db};
    for (const RatePair& rp : sweep_rates(optimal_dof_point(ec, oma_ps))) {
      append_scheme_cells(row, rp);
    }
    table.add_row(std::move(row));
  }
  return table;
}

Table run_montecarlo(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::vector<double> rho_db = rho_grid_db(cfg);
  std::vector<double> rhos;
  for (double db : rho_db) rhos.push_back(db_to_linear(db));

  const auto trials = static_cast<std::size_t>(cfg.trials);
  std::vector<TrialOutcome> outcomes(trials);
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(cfg.threads, trials));
  std::vector<std::exception_ptr> failures(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t t = w; t < trials; t += workers) {
            outcomes[t] = run_trial(cfg, t, rhos);
          }
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  std::uint64_t redraws = 0;
  std::uint64_t violations = 0;
  for (const auto& o : outcomes) {
    redraws += o.redraws;
    violations += o.violations;
  }
  const std::uint64_t checks = static_cast<std::uint64_t>(trials) *
                               rhos.size() * cfg.system.num_clusters * 6;

  Table table;
  table.columns = {"sweep_variable", "sweep_value"};
  for (const char* scheme : kSweepSchemes) {
    append_scheme_columns(table.columns, scheme);
    for (const char* metric : kMetrics) {
      table.columns.push_back(std::string(scheme) + "_" + metric + "_se");
    }
  }
  for (const char* meta : {"seed", "trials", "clusters_per_trial",
                           "redrawn_channels", "dominance_checks",
                           "dominance_violations"}) {
    table.columns.emplace_back(meta);
  }

  const std::size_t per_rho = kSweepSchemes.size() * kMetrics.size();
  const double n = static_cast<double>(trials);
  for (std::size_t j = 0; j < rhos.size(); ++j) {
    std::vector<Cell> row{std::string("rho_db"), rho_db[j]};
    for (std::size_t s = 0; s < kSweepSchemes.size(); ++s) {
      std::array<double, 3> mean{};
      std::array<double, 3> se{};
      for (std::size_t k = 0; k < kMetrics.size(); ++k) {
        const std::size_t idx = j * per_rho + s * 3 + k;
        double total = 0.0;
        for (const auto& o : outcomes) total += o.values[idx];
        mean[k] = total / n;
        double sq = 0.0;
        for (const auto& o : outcomes) {
          const double d = o.values[idx] - mean[k];
          sq += d * d;
        }
        se[k] = trials > 1 ? std::sqrt(sq / (n - 1.0) / n) : 0.0;
      }
      append_scheme_cells(row, RatePair{mean[0], mean[1]});
      // append_scheme_cells derives the sum from r1 + r2; keep the averaged one.
      row[row.size() - 2] = mean[2];
      for (double v : se) row.emplace_back(v);
    }
    row.emplace_back(cfg.seed);
    row.emplace_back(static_cast<std::uint64_t>(trials));
    row.emplace_back(static_cast<std::uint64_t>(cfg.system.num_clusters));
    row.emplace_back(redraws);
    row.emplace_back(checks);
    row.emplace_back(violations);
    table.add_row(std::move(row));
  }
  return table;
}

Table run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::kFig1:
      return run_fig1(cfg);
    case ExperimentKind::kRhoSweep:
      return run_rho_sweep(cfg);
    case ExperimentKind::kMonteCarlo:
      return run_montecarlo(cfg);
    case ExperimentKind::kVerify:
      break;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "verify produces a report, not a table");
}

}  // namespace mimonoma
