#ifndef MIMONOMA_VERIFY_HPP
#define MIMONOMA_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mimonoma/experiments.hpp"
#include "mimonoma/power_allocation.hpp"

namespace mimonoma {

struct SuiteResult {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  // Worst observed value of the suite's headline quantity (see `metric`).
  double worst = 0.0;
  std::string metric;
  // Informational suites are reported but never fail the run.
  bool informational = false;

  bool passed() const { return informational || failures == 0; }
};

struct VerifyReport {
  std::vector<SuiteResult> suites;

  bool passed() const;
  const SuiteResult& suite(const std::string& name) const;
  std::string to_text() const;
};

struct VerifyOptions {
  int instances = 1000;
  int trials = 10000;  // Monte-Carlo rho-sweep trials
  std::uint64_t seed = 1;
  unsigned threads = 1;
  SystemConfig system;
  RhoRange rho_range;
  // Closed forms under test; replaceable to check that the suites notice.
  IntervalFn optimal_interval = pa_interval_optimal_dof;
  IntervalFn equal_interval = pa_interval_equal_dof;
};

VerifyOptions verify_options(const ExperimentConfig& cfg);

/// Runs every oracle-agreement and invariant suite.
VerifyReport verify(const VerifyOptions& options);

}  // namespace mimonoma

#endif  // MIMONOMA_VERIFY_HPP
