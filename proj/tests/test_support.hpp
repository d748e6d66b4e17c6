#ifndef MIMONOMA_TESTS_TEST_SUPPORT_HPP
#define MIMONOMA_TESTS_TEST_SUPPORT_HPP

#include <cmath>
#include <random>

#include "mimonoma/types.hpp"

namespace mimonoma::testing {

struct RandomInstance {
  EffectiveCluster ec;
  PowerSplit oma_ps;
};

// Gains in [1e-3, 1] (log-uniform, ordered), rho in [1, 1e4], alpha2' in (0,1).
inline RandomInstance random_instance(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> exponent(-3.0, 0.0);
  std::uniform_real_distribution<double> rho_exponent(0.0, 4.0);
  std::uniform_real_distribution<double> unit(1e-6, 1.0 - 1e-6);
  const double a = std::pow(10.0, exponent(rng));
  const double b = std::pow(10.0, exponent(rng));
  return {EffectiveCluster::ordered(a, b, std::pow(10.0, rho_exponent(rng))),
          PowerSplit::from_weak(unit(rng))};
}

}  // namespace mimonoma::testing

#endif  // MIMONOMA_TESTS_TEST_SUPPORT_HPP
