#ifndef MIMONOMA_ORACLE_HPP
#define MIMONOMA_ORACLE_HPP

#include "mimonoma/power_allocation.hpp"
#include "mimonoma/types.hpp"

namespace mimonoma {

// Brute-force checks that only evaluate the rate formulas. None of these
// call the closed-form DoF split or interval constructors.

enum class User { kStrong = 1, kWeak = 2 };

struct GridMaximum {
  DofSplit argmax;
  double max_sum = 0.0;
};

/// Maximizes the OMA sum rate over lam1 in {0, step, ..., 1}.
/// Requires 0 < step <= 0.01.
GridMaximum grid_max_oma_sum(const EffectiveCluster& ec,
                             const PowerSplit& oma_ps, double step);

/// Bisection on a1sq in [0,1] for the point where the selected user's NOMA
/// rate equals its OMA rate. Runs to machine resolution and requires the
/// final gap below 1e-12.
///
/// Throws Error(kNoSignChange) if the gap keeps one sign on [0,1] and
/// Error(kNotConverged) after 200 iterations.
double bisect_parity(const EffectiveCluster& ec, const PowerSplit& oma_ps,
                     User which, DofMode mode);

/// Scans a1sq over a uniform grid and returns the smallest and largest grid
/// points where both users' NOMA rates are at least their OMA rates
/// (slack 1e-12). Requires step <= 1e-3. Throws Error(kInfeasible) if no
/// grid point qualifies.
PaInterval scan_dominance(const EffectiveCluster& ec, const PowerSplit& oma_ps,
                          DofMode mode, double step);

/// Number of points {0, step, ..., 1} on a uniform grid over [0,1].
int grid_points(double step);

}  // namespace mimonoma

#endif  // MIMONOMA_ORACLE_HPP
