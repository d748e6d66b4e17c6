#ifndef MIMONOMA_POWER_ALLOCATION_HPP
#define MIMONOMA_POWER_ALLOCATION_HPP

#include <functional>

#include "mimonoma/types.hpp"

namespace mimonoma {

/// Range of the strong user's NOMA power a1sq in which both users do at
/// least as well as under OMA with the given power split.
struct PaInterval {
  double lo = 0.0;
  double hi = 1.0;
  DofMode kind = DofMode::kOptimal;

  double width() const { return hi - lo; }
};

enum class PaPolicy {
  kStrongParity,  // a1sq = lo: strong user exactly matches OMA
  kWeakParity,    // a1sq = hi: weak user exactly matches OMA
  kMidpoint,
};

/// Interval against OMA with the sum-rate optimal DoF split:
///   lo = [(1 + rho a1' G1/lam1)^lam1 - 1] / (rho G1)
///   hi = [1 + rho G2 - (1 + rho a2' G2/lam2)^lam2]
///        / [rho G2 (1 + rho a2' G2/lam2)^lam2]
/// lam1 = 0 gives lo = 0 by continuous extension.
/// Throws Error(kInfeasible) when gamma2 == 0 ("weak user unreachable").
PaInterval pa_interval_optimal_dof(const EffectiveCluster& ec,
                                   const PowerSplit& oma_ps);

/// Interval against OMA with lam1 = lam2 = 1/2:
///   lo = [sqrt(1 + 2 rho a1' G1) - 1] / (rho G1)
///   hi = [1 + rho G2 - sqrt(1 + 2 rho a2' G2)]
///        / [rho G2 sqrt(1 + 2 rho a2' G2)]
PaInterval pa_interval_equal_dof(const EffectiveCluster& ec,
                                 const PowerSplit& oma_ps);

PaInterval pa_interval(const EffectiveCluster& ec, const PowerSplit& oma_ps,
                       DofMode mode);

/// Signature shared by the interval constructors; lets verification swap
/// in alternative implementations.
using IntervalFn =
    std::function<PaInterval(const EffectiveCluster&, const PowerSplit&)>;

/// (1 + rho a2' G2) - (1 + rho a1' G1 + rho a2' G2)^(a2' G2 / (a1' G1 + a2' G2)).
/// Nonnegative for every OMA split; lo <= hi of the optimal-DoF interval
/// follows from (G1 - G2) * margin >= 0.
double feasibility_margin(const EffectiveCluster& ec, const PowerSplit& oma_ps);

/// Absolute slack on a1sq below which lo > hi is treated as rounding.
inline constexpr double kIntervalTolerance = 1e-12;

/// Picks a1sq from the interval. Throws Error(kInfeasible) when
/// lo > hi + kIntervalTolerance.
PowerSplit select_pa(const PaInterval& iv, PaPolicy policy);

}  // namespace mimonoma

#endif  // MIMONOMA_POWER_ALLOCATION_HPP
