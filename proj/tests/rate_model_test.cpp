#include "mimonoma/rate_model.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "mimonoma/error.hpp"
#include "test_support.hpp"

namespace mimonoma {
namespace {

using testing::random_instance;

// rho a1' G1 = rho a2' G2 = 0.25 with a1' = a2'/2.
const EffectiveCluster kCounterexample{0.75, 0.375, 1.0};
const PowerSplit kCounterexamplePower{1.0 / 3.0, 2.0 / 3.0};

TEST(NomaRatesTest, WeakUserRateWithSic) {
  const RatePair r = noma_rates(kCounterexample, kCounterexamplePower);
  EXPECT_NEAR(r.r2, std::log2(11.0 / 9.0), 1e-15);
  EXPECT_NEAR(r.r2, 0.2895066171949849, 1e-12);
}

TEST(NomaRatesTest, FullPowerToStrongUserSilencesWeakUser) {
  const RatePair r = noma_rates({0.052, 0.0052, 1000.0}, PowerSplit{1.0, 0.0});
  EXPECT_EQ(r.r2, 0.0);
  EXPECT_NEAR(r.r1, std::log2(53.0), 1e-12);
}

TEST(NomaRatesTest, StrongUserRate) {
  const RatePair r =
      noma_rates({0.052, 0.0052, 1000.0}, PowerSplit::from_strong(0.25));
  EXPECT_NEAR(r.r1, 3.807354922057604, 1e-12);
}

TEST(NomaRatesTest, MonotoneInStrongPower) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto inst = random_instance(rng);
    RatePair prev = noma_rates(inst.ec, PowerSplit::from_strong(0.0));
    for (int k = 1; k <= 100; ++k) {
      const RatePair cur =
          noma_rates(inst.ec, PowerSplit::from_strong(k / 100.0));
      EXPECT_GT(cur.r1, prev.r1);
      EXPECT_LT(cur.r2, prev.r2);
      prev = cur;
    }
  }
}

TEST(OmaRatesTest, EqualDofWeakUser) {
  const RatePair r =
      oma_rates(kCounterexample, kCounterexamplePower, DofSplit::equal());
  EXPECT_NEAR(r.r2, 0.5 * std::log2(1.5), 1e-15);
  EXPECT_NEAR(r.r2, 0.2924812503605781, 1e-12);
  // The counterexample: NOMA loses to OMA for the weak user.
  EXPECT_LT(noma_rates(kCounterexample, kCounterexamplePower).r2, r.r2);
}

TEST(OmaRatesTest, SingleUserLimit) {
  const EffectiveCluster ec{0.052, 0.0052, 1000.0};
  const RatePair r = oma_rates(ec, PowerSplit{1.0, 0.0}, DofSplit{1.0, 0.0});
  EXPECT_NEAR(r.r1, std::log2(53.0), 1e-12);
  EXPECT_EQ(r.r2, 0.0);
}

TEST(OmaRatesTest, ZeroDofGivesZeroRate) {
  const EffectiveCluster ec{0.052, 0.0052, 1000.0};
  const RatePair r = oma_rates(ec, PowerSplit{0.5, 0.5}, DofSplit{0.0, 1.0});
  EXPECT_EQ(r.r1, 0.0);
  EXPECT_TRUE(std::isfinite(r.r2));
}

TEST(OptimalDofTest, SymmetricWeightedGains) {
  const DofSplit d = optimal_dof({0.4, 0.2, 10.0}, PowerSplit{1.0 / 3.0, 2.0 / 3.0});
  EXPECT_NEAR(d.lam1, 0.5, 1e-15);
  EXPECT_NEAR(d.lam2, 0.5, 1e-15);
}

TEST(OptimalDofTest, NoWeakPowerGivesAllDofToStrong) {
  const DofSplit d = optimal_dof({0.052, 0.0052, 1000.0}, PowerSplit{1.0, 0.0});
  EXPECT_EQ(d.lam1, 1.0);
  EXPECT_EQ(d.lam2, 0.0);
}

TEST(OptimalDofTest, FigureGains) {
  const DofSplit d = optimal_dof({0.052, 0.0052, 1000.0}, PowerSplit{0.5, 0.5});
  EXPECT_NEAR(d.lam2, 0.09090909090909091, 1e-15);
}

TEST(OptimalDofTest, DegenerateClusterThrows) {
  EXPECT_THROW(optimal_dof({0.0, 0.0, 10.0}, PowerSplit{0.5, 0.5}), Error);
}

TEST(OmaSumBoundTest, Values) {
  EXPECT_NEAR(oma_sum_bound(kCounterexample, kCounterexamplePower),
              std::log2(1.5), 1e-15);
  EXPECT_EQ(oma_sum_bound({0.0, 0.0, 10.0}, PowerSplit{0.5, 0.5}), 0.0);
}

TEST(OmaSumBoundTest, OptimalDofAttainsBoundAndOthersDoNot) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const auto inst = random_instance(rng);
    const double bound = oma_sum_bound(inst.ec, inst.oma_ps);
    const RatePair at_opt =
        oma_rates(inst.ec, inst.oma_ps, optimal_dof(inst.ec, inst.oma_ps));
    EXPECT_NEAR(at_opt.sum(), bound, 1e-12);
    const double lam1 = unit(rng);
    const RatePair other =
        oma_rates(inst.ec, inst.oma_ps, DofSplit{lam1, 1.0 - lam1});
    EXPECT_LE(other.sum(), bound + 1e-12);
  }
}

TEST(OmaSumBoundTest, NomaWithSamePowerBeatsOmaSum) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 1000; ++i) {
    const auto inst = random_instance(rng);
    EXPECT_GE(noma_rates(inst.ec, inst.oma_ps).sum(),
              oma_sum_bound(inst.ec, inst.oma_ps) - 1e-12);
  }
}

TEST(JainIndexTest, Values) {
  EXPECT_DOUBLE_EQ(jain_index({2.0, 2.0}), 1.0);
  EXPECT_DOUBLE_EQ(jain_index({2.0, 0.0}), 0.5);
  EXPECT_DOUBLE_EQ(jain_index({3.0, 1.0}), 0.8);
  EXPECT_THROW(jain_index({0.0, 0.0}), Error);
}

TEST(ValidateTest, RejectsBrokenSimplex) {
  const EffectiveCluster ec{0.052, 0.0052, 1000.0};
  EXPECT_THROW(noma_rates(ec, PowerSplit{0.6, 0.6}), Error);
  EXPECT_THROW(noma_rates(ec, PowerSplit{1.5, -0.5}), Error);
  EXPECT_THROW(oma_rates(ec, PowerSplit{0.5, 0.5}, DofSplit{0.3, 0.3}), Error);
  EXPECT_THROW(noma_rates({0.0052, 0.052, 1000.0}, PowerSplit{0.5, 0.5}),
               Error);
  EXPECT_NO_THROW(validate(PowerSplit{0.5 + 1e-13, 0.5}));
}

}  // namespace
}  // namespace mimonoma
