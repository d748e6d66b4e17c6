#include "mimonoma/oracle.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "mimonoma/error.hpp"
#include "mimonoma/rate_model.hpp"
#include "test_support.hpp"

namespace mimonoma {
namespace {

using testing::random_instance;

const EffectiveCluster kFigure{0.052, 0.0052, 1000.0};

TEST(GridMaxTest, SymmetricInstancePeaksAtHalf) {
  const EffectiveCluster ec{0.4, 0.2, 10.0};
  const PowerSplit ps{1.0 / 3.0, 2.0 / 3.0};
  const double step = 1e-3;
  const GridMaximum g = grid_max_oma_sum(ec, ps, step);
  EXPECT_NEAR(g.argmax.lam1, 0.5, step);
  EXPECT_NEAR(g.max_sum, oma_sum_bound(ec, ps), 1e-12);
}

TEST(GridMaxTest, NeverExceedsBound) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    const auto inst = random_instance(rng);
    const GridMaximum g = grid_max_oma_sum(inst.ec, inst.oma_ps, 1e-3);
    EXPECT_LE(g.max_sum, oma_sum_bound(inst.ec, inst.oma_ps) + 1e-12);
    EXPECT_NEAR(g.argmax.lam1 + g.argmax.lam2, 1.0, 1e-12);
  }
}

TEST(GridMaxTest, RejectsCoarseStep) {
  EXPECT_THROW(grid_max_oma_sum(kFigure, PowerSplit{0.5, 0.5}, 0.02), Error);
  EXPECT_THROW(grid_max_oma_sum(kFigure, PowerSplit{0.5, 0.5}, 0.0), Error);
}

TEST(GridPointsTest, CountsBothEnds) {
  EXPECT_EQ(grid_points(1e-3), 1001);
  EXPECT_EQ(grid_points(0.01), 101);
}

TEST(BisectParityTest, EqualDofEndpoints) {
  const PowerSplit ps{0.5, 0.5};
  EXPECT_NEAR(bisect_parity(kFigure, ps, User::kStrong, DofMode::kEqual),
              0.12077134402462535, 1e-9);
  EXPECT_NEAR(bisect_parity(kFigure, ps, User::kWeak, DofMode::kEqual),
              0.28653459992264355, 1e-9);
}

TEST(BisectParityTest, OptimalDofEndpoints) {
  const PowerSplit ps{0.5, 0.5};
  EXPECT_NEAR(bisect_parity(kFigure, ps, User::kStrong, DofMode::kOptimal),
              0.39911422381716210, 1e-9);
  EXPECT_NEAR(bisect_parity(kFigure, ps, User::kWeak, DofMode::kOptimal),
              0.68395546880621791, 1e-9);
  EXPECT_NEAR(bisect_parity(kFigure, PowerSplit{0.0, 1.0}, User::kWeak,
                            DofMode::kOptimal),
              0.0, 1e-9);
}

TEST(BisectParityTest, MatchesClosedFormsOnRandomInstances) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 300; ++i) {
    const auto inst = random_instance(rng);
    for (DofMode mode : {DofMode::kEqual, DofMode::kOptimal}) {
      const PaInterval iv = pa_interval(inst.ec, inst.oma_ps, mode);
      EXPECT_NEAR(bisect_parity(inst.ec, inst.oma_ps, User::kStrong, mode),
                  iv.lo, 1e-9);
      EXPECT_NEAR(bisect_parity(inst.ec, inst.oma_ps, User::kWeak, mode),
                  iv.hi, 1e-9);
    }
  }
}

TEST(BisectParityTest, ParityAtBoundaryIsAccepted) {
  // OMA gives user 2 nothing, so NOMA matches it only at a1sq = 1.
  EXPECT_EQ(bisect_parity(kFigure, PowerSplit{1.0, 0.0}, User::kWeak,
                          DofMode::kEqual),
            1.0);
  EXPECT_EQ(bisect_parity(kFigure, PowerSplit{0.0, 1.0}, User::kStrong,
                          DofMode::kEqual),
            0.0);
}

TEST(ScanDominanceTest, FigureParametersEqualDof) {
  const double step = 1e-3;
  const PaInterval scan =
      scan_dominance(kFigure, PowerSplit{0.5, 0.5}, DofMode::kEqual, step);
  EXPECT_LE(scan.lo, 0.1208 + step);
  EXPECT_GE(scan.hi, 0.2866 - step);
  EXPECT_GE(scan.lo, 0.1208 - step);
  EXPECT_LE(scan.hi, 0.2866 + step);
}

TEST(ScanDominanceTest, CollapsesForEqualGains) {
  const EffectiveCluster ec{0.05, 0.05, 100.0};
  const PaInterval scan =
      scan_dominance(ec, PowerSplit{1.0, 0.0}, DofMode::kOptimal, 1e-3);
  EXPECT_NEAR(scan.lo, 1.0, 1e-3);
  EXPECT_EQ(scan.hi, 1.0);
}

TEST(ScanDominanceTest, ContainsClosedFormInterval) {
  std::mt19937_64 rng(23);
  const double step = 1e-3;
  for (int i = 0; i < 200; ++i) {
    const auto inst = random_instance(rng);
    for (DofMode mode : {DofMode::kEqual, DofMode::kOptimal}) {
      const PaInterval iv = pa_interval(inst.ec, inst.oma_ps, mode);
      if (iv.width() < step) continue;  // may fall between grid points
      const PaInterval scan = scan_dominance(inst.ec, inst.oma_ps, mode, step);
      EXPECT_LE(scan.lo - step, iv.lo);
      EXPECT_GE(scan.hi + step, iv.hi);
    }
  }
}

TEST(ScanDominanceTest, RejectsCoarseStep) {
  EXPECT_THROW(
      scan_dominance(kFigure, PowerSplit{0.5, 0.5}, DofMode::kEqual, 0.01),
      Error);
}

}  // namespace
}  // namespace mimonoma
