#include "mimonoma/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mimonoma/error.hpp"

namespace mimonoma {

namespace {

constexpr double kDegenerateNorm = 1e-12;
constexpr double kMaxCondition = 1e12;

// sin of the angle between two complex row vectors, computed from the
// rejection of a from b so it stays accurate near zero.
double row_sine(const Eigen::RowVectorXcd& a, const Eigen::RowVectorXcd& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 1.0;
  const std::complex<double> coeff = a.dot(b) / (nb * nb);
  const Eigen::RowVectorXcd rejection = a - coeff * b;
  return std::min(1.0, rejection.norm() / na);
}

}  // namespace

ReceiverPair align_receivers(const ClusterChannel& ch) {
  const Eigen::Index n = ch.g1.rows();
  const Eigen::Index m = ch.g1.cols();
  if (ch.g2.rows() != n || ch.g2.cols() != m) {
    throw Error(ErrorCode::kInvalidArgument, "fading matrices differ in shape");
  }
  if (2 * n <= m) {
    throw Error(ErrorCode::kAlignmentInfeasible,
                "alignment infeasible: need 2N > M");
  }

  CMatrix stacked(2 * n, m);
  stacked << ch.g1, ch.g2;
  Eigen::JacobiSVD<CMatrix> svd(stacked, Eigen::ComputeFullU);
  // Singular values are sorted descending; the last column of U belongs to
  // the smallest one (zero, since 2N > M).
  const CVector w = svd.matrixU().col(2 * n - 1);
  const CVector w1 = w.head(n);
  const CVector w2 = w.tail(n);

  ReceiverPair rx;
  rx.w1_norm = w1.norm();
  rx.w2_norm = w2.norm();
  if (rx.w1_norm < kDegenerateNorm || rx.w2_norm < kDegenerateNorm) {
    throw Error(ErrorCode::kDegenerateChannel,
                "degenerate alignment: null-space vector vanishes on one user");
  }
  rx.v1 = w1 / rx.w1_norm;
  rx.v2 = -w2 / rx.w2_norm;
  rx.residual = row_sine(rx.v1.adjoint() * ch.g1, rx.v2.adjoint() * ch.g2);
  return rx;
}

CMatrix zf_precoder(const CMatrix& effective_rows) {
  if (effective_rows.rows() != effective_rows.cols() ||
      effective_rows.rows() == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "effective row matrix must be square and nonempty");
  }
  Eigen::JacobiSVD<CMatrix> svd(effective_rows);
  const auto& s = svd.singularValues();
  const double smallest = s(s.size() - 1);
  if (!(smallest > 0.0) || s(0) / smallest > kMaxCondition) {
    throw Error(ErrorCode::kDegenerateChannel,
                "singular channel: effective rows are ill-conditioned");
  }
  CMatrix p = effective_rows.partialPivLu().inverse();
  for (Eigen::Index c = 0; c < p.cols(); ++c) {
    p.col(c).normalize();
  }
  return p;
}

EffectiveCluster effective_cluster(const ClusterChannel& ch,
                                   const CVector& precoder_column,
                                   const ReceiverPair& rx, double rho) {
  const std::complex<double> y1 =
      (rx.v1.adjoint() * ch.g1 * precoder_column)(0) / ch.l1;
  const std::complex<double> y2 =
      (rx.v2.adjoint() * ch.g2 * precoder_column)(0) / ch.l2;
  return EffectiveCluster::ordered(std::norm(y1), std::norm(y2), rho);
}

BeamformingSolution beamform(std::span<const ClusterChannel> clusters) {
  if (clusters.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no clusters to beamform");
  }
  const Eigen::Index m = clusters.front().g1.cols();
  if (static_cast<Eigen::Index>(clusters.size()) != m) {
    throw Error(ErrorCode::kInvalidArgument,
                "need one cluster per BS antenna (got " +
                    std::to_string(clusters.size()) + ")");
  }

  BeamformingSolution bf;
  bf.receivers.reserve(clusters.size());
  CMatrix rows(m, m);
  for (Eigen::Index c = 0; c < m; ++c) {
    const auto& ch = clusters[static_cast<std::size_t>(c)];
    bf.receivers.push_back(align_receivers(ch));
    rows.row(c) = bf.receivers.back().v1.adjoint() * ch.h1();
  }
  bf.precoder = zf_precoder(rows);
  return bf;
}

std::vector<EffectiveCluster> reduce_clusters(
    std::span<const ClusterChannel> clusters, const BeamformingSolution& bf,
    double rho) {
  std::vector<EffectiveCluster> out;
  out.reserve(clusters.size());
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    out.push_back(effective_cluster(clusters[c],
                                    bf.precoder.col(static_cast<Eigen::Index>(c)),
                                    bf.receivers[c], rho));
  }
  return out;
}

double cluster_interference_gain(std::span<const ClusterChannel> clusters,
                                 const BeamformingSolution& bf,
                                 std::size_t cluster) {
  const auto& ch = clusters[cluster];
  const auto& rx = bf.receivers[cluster];
  const Eigen::RowVectorXcd row1 = rx.v1.adjoint() * ch.h1();
  const Eigen::RowVectorXcd row2 = rx.v2.adjoint() * ch.h2();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < bf.precoder.cols(); ++i) {
    if (i == static_cast<Eigen::Index>(cluster)) continue;
    worst = std::max(worst, std::norm((row1 * bf.precoder.col(i))(0)));
    worst = std::max(worst, std::norm((row2 * bf.precoder.col(i))(0)));
  }
  return worst;
}

double max_interference_gain(std::span<const ClusterChannel> clusters,
                             const BeamformingSolution& bf) {
  double worst = 0.0;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    worst = std::max(worst, cluster_interference_gain(clusters, bf, c));
  }
  return worst;
}

}  // namespace mimonoma
