#ifndef MIMONOMA_RATE_MODEL_HPP
#define MIMONOMA_RATE_MODEL_HPP

#include "mimonoma/types.hpp"

namespace mimonoma {

// Rate formulas for one two-user cluster. Everything is log2, bits/s/Hz.

/// Throws Error(kInvalidArgument) unless both coefficients lie in [0,1]
/// and sum to one within 1e-12.
void validate(const PowerSplit& ps);
void validate(const DofSplit& df);
void validate(const EffectiveCluster& ec);

/// Superposition with SIC at the strong user:
///   r1 = log2(1 + rho a1 G1)
///   r2 = log2(1 + rho a2 G2 / (1 + rho a1 G2))
RatePair noma_rates(const EffectiveCluster& ec, const PowerSplit& ps);

/// Orthogonal access: r_k = lam_k log2(1 + rho a_k G_k / lam_k), with
/// r_k = 0 when lam_k = 0.
RatePair oma_rates(const EffectiveCluster& ec, const PowerSplit& ps,
                   const DofSplit& df);

/// Sum-rate maximizing DoF split lam_k = a_k G_k / (a1 G1 + a2 G2).
/// Throws Error(kInvalidArgument) ("degenerate cluster") when both weighted
/// gains vanish.
DofSplit optimal_dof(const EffectiveCluster& ec, const PowerSplit& ps);

/// log2(1 + rho a1 G1 + rho a2 G2); the OMA sum rate under optimal_dof.
double oma_sum_bound(const EffectiveCluster& ec, const PowerSplit& ps);

/// OMA rates under the chosen DoF policy.
RatePair oma_reference_rates(const EffectiveCluster& ec, const PowerSplit& ps,
                             DofMode mode);

/// Jain's index for two users, (r1+r2)^2 / (2 (r1^2 + r2^2)).
double jain_index(const RatePair& rp);

}  // namespace mimonoma

#endif  // MIMONOMA_RATE_MODEL_HPP
