#ifndef MIMONOMA_TYPES_HPP
#define MIMONOMA_TYPES_HPP

namespace mimonoma {

/// Scalar model of one two-user cluster after transmit and receive
/// beamforming. All rate and power-allocation math runs on this.
///
/// gamma1 and gamma2 are the effective gains |v_k^H H_k p|^2 with the
/// strong user first (gamma1 >= gamma2); rho is the linear SNR.
struct EffectiveCluster {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double rho = 1.0;

  /// Builds a cluster from two unordered gains, putting the larger first.
  static EffectiveCluster ordered(double gain_a, double gain_b, double rho) {
    return gain_a >= gain_b ? EffectiveCluster{gain_a, gain_b, rho}
                            : EffectiveCluster{gain_b, gain_a, rho};
  }
};

/// Power coefficients (alpha1^2, alpha2^2) on the unit simplex.
struct PowerSplit {
  double a1sq = 0.5;
  double a2sq = 0.5;

  static PowerSplit from_strong(double a1sq) { return {a1sq, 1.0 - a1sq}; }
  static PowerSplit from_weak(double a2sq) { return {1.0 - a2sq, a2sq}; }
};

/// Degrees-of-freedom fractions (lambda1, lambda2) for orthogonal access.
struct DofSplit {
  double lam1 = 0.5;
  double lam2 = 0.5;

  static DofSplit equal() { return {0.5, 0.5}; }
};

/// Per-user achievable rates in bits/s/Hz.
struct RatePair {
  double r1 = 0.0;
  double r2 = 0.0;

  double sum() const { return r1 + r2; }
};

/// How the orthogonal reference scheme splits its degrees of freedom.
enum class DofMode {
  kOptimal,  // sum-rate maximizing split
  kEqual,    // lambda1 = lambda2 = 1/2
};

}  // namespace mimonoma

#endif  // MIMONOMA_TYPES_HPP
