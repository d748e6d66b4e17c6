#include "mimonoma/channel.hpp"

#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "mimonoma/error.hpp"

namespace mimonoma {

void SystemConfig::validate() const {
  if (num_clusters < 1) {
    throw Error(ErrorCode::kInvalidArgument, "num_clusters must be positive");
  }
  if (user_antennas < 1) {
    throw Error(ErrorCode::kInvalidArgument, "user_antennas must be positive");
  }
  if (2 * user_antennas <= num_clusters) {
    throw Error(ErrorCode::kAlignmentInfeasible,
                "alignment infeasible: need 2N > M (N=" +
                    std::to_string(user_antennas) +
                    ", M=" + std::to_string(num_clusters) + ")");
  }
  if (!(snr_rho > 0.0) || !std::isfinite(snr_rho)) {
    throw Error(ErrorCode::kInvalidArgument, "snr_rho must be positive");
  }
  if (!(path_loss_exponent > 0.0) || !std::isfinite(path_loss_exponent)) {
    throw Error(ErrorCode::kInvalidArgument,
                "path_loss_exponent must be positive");
  }
  if (!(distance_range.min > 0.0) ||
      !(distance_range.min < distance_range.max) ||
      !std::isfinite(distance_range.max)) {
    throw Error(ErrorCode::kInvalidArgument,
                "distance_range must satisfy 0 < min < max");
  }
}

int default_user_antennas(int num_clusters) { return num_clusters / 2 + 1; }

double path_loss(double distance, double exponent) {
  if (!(distance > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "distance must be positive");
  }
  if (!(exponent > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "exponent must be positive");
  }
  return std::pow(distance, exponent / 2.0);
}

std::vector<ClusterChannel> draw_clusters(const SystemConfig& config) {
  config.validate();
  const int m = config.num_clusters;
  const int n = config.user_antennas;

  std::mt19937_64 engine(config.rng_seed);
  // Real and imaginary parts each carry half the unit variance.
  std::normal_distribution<double> component(0.0, std::sqrt(0.5));
  std::uniform_real_distribution<double> distance(config.distance_range.min,
                                                  config.distance_range.max);

  auto fading = [&] {
    CMatrix g(n, m);
    for (Eigen::Index col = 0; col < m; ++col) {
      for (Eigen::Index row = 0; row < n; ++row) {
        const double re = component(engine);
        const double im = component(engine);
        g(row, col) = {re, im};
      }
    }
    return g;
  };

  std::vector<ClusterChannel> clusters;
  clusters.reserve(static_cast<std::size_t>(m));
  for (int c = 0; c < m; ++c) {
    double d1 = distance(engine);
    double d2 = distance(engine);
    if (d2 < d1) std::swap(d1, d2);
    ClusterChannel ch;
    ch.l1 = path_loss(d1, config.path_loss_exponent);
    ch.l2 = path_loss(d2, config.path_loss_exponent);
    ch.g1 = fading();
    ch.g2 = fading();
    ch.cluster_index = c;
    clusters.push_back(std::move(ch));
  }
  return clusters;
}

}  // namespace mimonoma
