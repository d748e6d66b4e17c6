#include "mimonoma/rate_model.hpp"

#include <cmath>
#include <numbers>

#include "mimonoma/error.hpp"

namespace mimonoma {

namespace {

constexpr double kSimplexTolerance = 1e-12;

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

bool on_simplex(double a, double b) {
  return a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0 &&
         std::abs(a + b - 1.0) <= kSimplexTolerance;
}

// lam log2(1 + snr/lam), continuously extended to 0 at lam = 0.
double orthogonal_rate(double lam, double snr) {
  if (lam <= 0.0) return 0.0;
  return lam * log2_1p(snr / lam);
}

}  // namespace

void validate(const PowerSplit& ps) {
  if (!on_simplex(ps.a1sq, ps.a2sq)) {
    throw Error(ErrorCode::kInvalidArgument,
                "power split must lie on the unit simplex");
  }
}

void validate(const DofSplit& df) {
  if (!on_simplex(df.lam1, df.lam2)) {
    throw Error(ErrorCode::kInvalidArgument,
                "DoF split must lie on the unit simplex");
  }
}

void validate(const EffectiveCluster& ec) {
  if (!(ec.rho > 0.0) || !std::isfinite(ec.rho)) {
    throw Error(ErrorCode::kInvalidArgument, "rho must be positive");
  }
  if (!(ec.gamma2 >= 0.0) || !(ec.gamma1 >= ec.gamma2) ||
      !std::isfinite(ec.gamma1)) {
    throw Error(ErrorCode::kInvalidArgument,
                "effective gains must satisfy gamma1 >= gamma2 >= 0");
  }
}

RatePair noma_rates(const EffectiveCluster& ec, const PowerSplit& ps) {
  validate(ec);
  validate(ps);
  const double r1 = log2_1p(ec.rho * ps.a1sq * ec.gamma1);
  const double r2 =
      log2_1p(ec.rho * ps.a2sq * ec.gamma2 / (1.0 + ec.rho * ps.a1sq * ec.gamma2));
  return {r1, r2};
}

RatePair oma_rates(const EffectiveCluster& ec, const PowerSplit& ps,
                   const DofSplit& df) {
  validate(ec);
  validate(ps);
  validate(df);
  return {orthogonal_rate(df.lam1, ec.rho * ps.a1sq * ec.gamma1),
          orthogonal_rate(df.lam2, ec.rho * ps.a2sq * ec.gamma2)};
}

DofSplit optimal_dof(const EffectiveCluster& ec, const PowerSplit& ps) {
  validate(ec);
  validate(ps);
  const double w1 = ps.a1sq * ec.gamma1;
  const double w2 = ps.a2sq * ec.gamma2;
  const double total = w1 + w2;
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "degenerate cluster: both weighted gains are zero");
  }
  const double lam1 = w1 / total;
  return {lam1, 1.0 - lam1};
}

double oma_sum_bound(const EffectiveCluster& ec, const PowerSplit& ps) {
  validate(ec);
  validate(ps);
  return log2_1p(ec.rho * (ps.a1sq * ec.gamma1 + ps.a2sq * ec.gamma2));
}

RatePair oma_reference_rates(const EffectiveCluster& ec, const PowerSplit& ps,
                             DofMode mode) {
  const DofSplit df =
      mode == DofMode::kOptimal ? optimal_dof(ec, ps) : DofSplit::equal();
  return oma_rates(ec, ps, df);
}

double jain_index(const RatePair& rp) {
  const double total = rp.r1 + rp.r2;
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "Jain index undefined for zero total rate");
  }
  return total * total / (2.0 * (rp.r1 * rp.r1 + rp.r2 * rp.r2));
}

}  // namespace mimonoma
