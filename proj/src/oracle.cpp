#include "mimonoma/oracle.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "mimonoma/error.hpp"
#include "mimonoma/rate_model.hpp"

namespace mimonoma {

namespace {

constexpr double kGapTolerance = 1e-12;
constexpr int kMaxBisections = 200;

double grid_value(int i, int count) {
  // Pin the last point to exactly 1.
  return i == count - 1 ? 1.0 : static_cast<double>(i) / (count - 1);
}

}  // namespace

int grid_points(double step) {
  if (!(step > 0.0) || step > 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "grid step must be in (0, 1]");
  }
  return static_cast<int>(std::lround(1.0 / step)) + 1;
}

GridMaximum grid_max_oma_sum(const EffectiveCluster& ec,
                             const PowerSplit& oma_ps, double step) {
  if (!(step > 0.0) || step > 0.01) {
    throw Error(ErrorCode::kInvalidArgument, "grid step must be in (0, 0.01]");
  }
  const int count = grid_points(step);
  GridMaximum best;
  best.max_sum = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < count; ++i) {
    const double lam1 = grid_value(i, count);
    const DofSplit df{lam1, 1.0 - lam1};
    const double sum = oma_rates(ec, oma_ps, df).sum();
    if (sum > best.max_sum) {
      best.max_sum = sum;
      best.argmax = df;
    }
  }
  return best;
}

double bisect_parity(const EffectiveCluster& ec, const PowerSplit& oma_ps,
                     User which, DofMode mode) {
  const RatePair oma = oma_reference_rates(ec, oma_ps, mode);
  // Oriented so the residual increases with a1sq for either user.
  auto residual = [&](double a1sq) {
    const RatePair noma = noma_rates(ec, PowerSplit::from_strong(a1sq));
    return which == User::kStrong ? noma.r1 - oma.r1 : oma.r2 - noma.r2;
  };

  double lo = 0.0;
  double hi = 1.0;
  const double f_lo = residual(lo);
  const double f_hi = residual(hi);
  if (f_lo >= 0.0) {
    if (f_lo <= kGapTolerance) return lo;
    throw Error(ErrorCode::kNoSignChange,
                "parity unachievable: NOMA rate exceeds OMA on all of [0,1]");
  }
  if (f_hi <= 0.0) {
    if (f_hi >= -kGapTolerance) return hi;
    throw Error(ErrorCode::kNoSignChange,
                "parity unachievable: NOMA rate below OMA on all of [0,1]");
  }

  for (int iter = 0; iter < kMaxBisections; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      // Bracket is down to adjacent doubles.
      const double f_mid = residual(mid);
      if (std::abs(f_mid) < kGapTolerance) return mid;
      break;
    }
    const double f_mid = residual(mid);
    if (f_mid == 0.0) return mid;
    (f_mid < 0.0 ? lo : hi) = mid;
  }
  throw Error(ErrorCode::kNotConverged, "bisection did not converge");
}

PaInterval scan_dominance(const EffectiveCluster& ec, const PowerSplit& oma_ps,
                          DofMode mode, double step) {
  if (!(step > 0.0) || step > 1e-3) {
    throw Error(ErrorCode::kInvalidArgument, "scan step must be in (0, 1e-3]");
  }
  const RatePair oma = oma_reference_rates(ec, oma_ps, mode);
  const int count = grid_points(step);
  std::optional<double> first;
  double last = 0.0;
  for (int i = 0; i < count; ++i) {
    const double a1sq = grid_value(i, count);
    const RatePair noma = noma_rates(ec, PowerSplit::from_strong(a1sq));
    if (noma.r1 >= oma.r1 - kGapTolerance && noma.r2 >= oma.r2 - kGapTolerance) {
      if (!first) first = a1sq;
      last = a1sq;
    }
  }
  if (!first) {
    throw Error(ErrorCode::kInfeasible, "no grid point dominates OMA");
  }
  return {*first, last, mode};
}

}  // namespace mimonoma
