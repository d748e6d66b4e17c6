#ifndef MIMONOMA_EXPERIMENTS_HPP
#define MIMONOMA_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mimonoma/channel.hpp"
#include "mimonoma/power_allocation.hpp"
#include "mimonoma/table.hpp"
#include "mimonoma/types.hpp"

namespace mimonoma {

enum class ExperimentKind { kFig1, kRhoSweep, kMonteCarlo, kVerify };

/// Where the rho sweep gets its effective gains.
enum class GainSource {
  kFixed,       // gain1/gain2 from the config
  kMonteCarlo,  // full channel synthesis + beamforming per trial
};

struct RhoRange {
  double min_db = 0.0;
  double max_db = 40.0;
  double step_db = 2.0;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kFig1;
  int grid = 201;                 // fig1 points over alpha2'^2 in [0,1]
  RhoRange rho_range;
  std::optional<double> rho_db;   // single point; fig1 defaults to 30 dB
  int trials = 10000;
  std::uint64_t seed = 1;
  double gain1 = 0.052;
  double gain2 = 0.0052;
  double oma_alpha2 = 0.5;        // OMA weak-user power for the rho sweeps
  GainSource gains = GainSource::kFixed;
  unsigned threads = 1;
  SystemConfig system;            // channel synthesis for Monte-Carlo runs
  OutputFormat format = OutputFormat::kCsv;
  std::filesystem::path out;

  void validate() const;
};

ExperimentKind parse_experiment(const std::string& name);

/// 10^(dB/10).
double db_to_linear(double db);

/// The rho points (in dB) a sweep visits: the single rho_db if set,
/// otherwise min_db, min_db + step_db, ..., max_db.
std::vector<double> rho_grid_db(const ExperimentConfig& cfg);

/// Rates of the equal-DoF comparison at one OMA power split.
struct EqualDofPoint {
  RatePair oma;    // arbitrary power, lambda = 1/2
  RatePair noma1;  // a1sq at the strong-parity endpoint
  RatePair noma2;  // a1sq at the weak-parity endpoint
};
EqualDofPoint equal_dof_point(const EffectiveCluster& ec,
                              const PowerSplit& oma_ps);

/// Rates of the optimal-DoF comparison at one OMA power split.
struct OptimalDofPoint {
  RatePair oma;           // arbitrary power, sum-rate optimal DoF
  RatePair oma_baseline;  // equal power and equal DoF
  RatePair noma3;         // a1sq at the weak-parity endpoint
  RatePair noma4;         // a1sq at the strong-parity endpoint
};
OptimalDofPoint optimal_dof_point(const EffectiveCluster& ec,
                                  const PowerSplit& oma_ps);

/// Sweeps the OMA weak-user power alpha2'^2 over [0,1] at fixed gains,
/// comparing equal-DoF OMA against both NOMA interval endpoints.
Table run_fig1(const ExperimentConfig& cfg);

/// Rates versus rho for OMA, the equal-power/equal-DoF baseline and both
/// optimal-DoF NOMA endpoints. With GainSource::kMonteCarlo this is the
/// run_montecarlo table.
Table run_rho_sweep(const ExperimentConfig& cfg);

/// Monte-Carlo averages over full channel synthesis. Trial t uses seed
/// cfg.seed + t; degenerate draws are redrawn from a derived seed and
/// counted. Output is identical for any thread count.
Table run_montecarlo(const ExperimentConfig& cfg);

/// Dispatches on cfg.kind (everything except kVerify).
Table run_experiment(const ExperimentConfig& cfg);

}  // namespace mimonoma

#endif  // MIMONOMA_EXPERIMENTS_HPP
