#include "mimonoma/power_allocation.hpp"

#include <algorithm>
#include <cmath>

#include "mimonoma/error.hpp"
#include "mimonoma/rate_model.hpp"

namespace mimonoma {

namespace {

void require_reachable(const EffectiveCluster& ec, const PowerSplit& oma_ps) {
  validate(ec);
  validate(oma_ps);
  if (!(ec.gamma2 > 0.0)) {
    throw Error(ErrorCode::kInfeasible, "weak user unreachable: gamma2 == 0");
  }
}

// lam * ln(1 + snr/lam), i.e. ln of (1 + snr/lam)^lam; zero at lam = 0.
double log_orthogonal_factor(double lam, double snr) {
  if (lam <= 0.0) return 0.0;
  return lam * std::log1p(snr / lam);
}

// Given ln F1 and ln F2, where F_k is the OMA factor of user k, returns
//   lo = (F1 - 1) / (rho G1),  hi = ((1 + rho G2) / F2 - 1) / (rho G2).
// The hi form is the same as [1 + rho G2 - F2] / [rho G2 F2].
PaInterval interval_from_factors(const EffectiveCluster& ec, double log_f1,
                                 double log_f2, DofMode kind) {
  const double snr1 = ec.rho * ec.gamma1;
  const double snr2 = ec.rho * ec.gamma2;
  PaInterval iv;
  iv.lo = std::expm1(log_f1) / snr1;
  iv.hi = std::expm1(std::log1p(snr2) - log_f2) / snr2;
  iv.kind = kind;
  return iv;
}

}  // namespace

PaInterval pa_interval_optimal_dof(const EffectiveCluster& ec,
                                   const PowerSplit& oma_ps) {
  require_reachable(ec, oma_ps);
  const DofSplit df = optimal_dof(ec, oma_ps);
  const double log_f1 =
      log_orthogonal_factor(df.lam1, ec.rho * oma_ps.a1sq * ec.gamma1);
  const double log_f2 =
      log_orthogonal_factor(df.lam2, ec.rho * oma_ps.a2sq * ec.gamma2);
  return interval_from_factors(ec, log_f1, log_f2, DofMode::kOptimal);
}

PaInterval pa_interval_equal_dof(const EffectiveCluster& ec,
                                 const PowerSplit& oma_ps) {
  require_reachable(ec, oma_ps);
  // ln sqrt(1 + 2x)
  const double log_f1 = 0.5 * std::log1p(2.0 * ec.rho * oma_ps.a1sq * ec.gamma1);
  const double log_f2 = 0.5 * std::log1p(2.0 * ec.rho * oma_ps.a2sq * ec.gamma2);
  return interval_from_factors(ec, log_f1, log_f2, DofMode::kEqual);
}

PaInterval pa_interval(const EffectiveCluster& ec, const PowerSplit& oma_ps,
                       DofMode mode) {
  return mode == DofMode::kOptimal ? pa_interval_optimal_dof(ec, oma_ps)
                                   : pa_interval_equal_dof(ec, oma_ps);
}

double feasibility_margin(const EffectiveCluster& ec,
                          const PowerSplit& oma_ps) {
  validate(ec);
  validate(oma_ps);
  const double w1 = oma_ps.a1sq * ec.gamma1;
  const double w2 = oma_ps.a2sq * ec.gamma2;
  const double total = w1 + w2;
  if (!(total > 0.0)) return 0.0;
  const double linear = 1.0 + ec.rho * w2;
  const double convex = std::exp(w2 / total * std::log1p(ec.rho * total));
  return linear - convex;
}

PowerSplit select_pa(const PaInterval& iv, PaPolicy policy) {
  if (!(iv.lo <= iv.hi + kIntervalTolerance)) {
    throw Error(ErrorCode::kInfeasible,
                "empty power-allocation interval (lo > hi)");
  }
  double a1sq = 0.0;
  switch (policy) {
    case PaPolicy::kStrongParity:
      a1sq = iv.lo;
      break;
    case PaPolicy::kWeakParity:
      a1sq = iv.hi;
      break;
    case PaPolicy::kMidpoint:
      a1sq = 0.5 * (iv.lo + iv.hi);
      break;
  }
  return PowerSplit::from_strong(std::clamp(a1sq, 0.0, 1.0));
}

}  // namespace mimonoma
