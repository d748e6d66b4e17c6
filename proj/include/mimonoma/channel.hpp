#ifndef MIMONOMA_CHANNEL_HPP
#define MIMONOMA_CHANNEL_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace mimonoma {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

struct DistanceRange {
  double min = 1.0;
  double max = 3.0;
};

/// Downlink system parameters. The BS has one antenna per cluster.
struct SystemConfig {
  int num_clusters = 4;         // M
  int user_antennas = 3;        // N
  double snr_rho = 1000.0;      // linear, noise power normalized to 1
  double path_loss_exponent = 3.8;
  DistanceRange distance_range;
  std::uint64_t rng_seed = 1;

  /// Throws Error(kAlignmentInfeasible) when 2N <= M and
  /// Error(kInvalidArgument) for any other out-of-range field.
  void validate() const;
};

/// Smallest N with 2N > M.
int default_user_antennas(int num_clusters);

/// Raw fading and path loss of the two users in one cluster. The channel
/// seen by user k is g_k / l_k.
struct ClusterChannel {
  CMatrix g1;  // N x M
  CMatrix g2;  // N x M
  double l1 = 1.0;
  double l2 = 1.0;
  int cluster_index = 0;

  CMatrix h1() const { return g1 / l1; }
  CMatrix h2() const { return g2 / l2; }
};

/// Amplitude divisor L = d^(exponent/2), so received power falls as
/// d^-exponent.
double path_loss(double distance, double exponent);

/// Draws M clusters of i.i.d. CN(0,1) fading with uniform user distances.
/// The nearer user of each pair is stored as user 1. Output is a pure
/// function of the config (including rng_seed).
std::vector<ClusterChannel> draw_clusters(const SystemConfig& config);

}  // namespace mimonoma

#endif  // MIMONOMA_CHANNEL_HPP
