#ifndef MIMONOMA_BEAMFORMING_HPP
#define MIMONOMA_BEAMFORMING_HPP

#include <span>
#include <vector>

#include "mimonoma/channel.hpp"
#include "mimonoma/types.hpp"

namespace mimonoma {

/// Unit-norm receive vectors that make v1^H G1 and v2^H G2 parallel.
struct ReceiverPair {
  CVector v1;
  CVector v2;
  // Sine of the angle between the aligned rows v1^H G1 and v2^H G2.
  double residual = 0.0;
  // Norms of the two halves of the null-space vector before normalization.
  // ||w1|| v1^H G1 = ||w2|| v2^H G2.
  double w1_norm = 0.0;
  double w2_norm = 0.0;
};

/// Signal alignment for one cluster.
///
/// Takes the left singular vector w = [w1; w2] of the stacked 2N x M
/// matrix [G1; G2] with the smallest singular value, so that
/// w1^H G1 = (-w2)^H G2, and returns v1 = w1/||w1||, v2 = -w2/||w2||.
/// Throws Error(kDegenerateChannel) if either half is numerically zero.
ReceiverPair align_receivers(const ClusterChannel& ch);

/// Zero-forcing precoder for M stacked effective rows (row m is
/// h_m^H = v_{m,1}^H H_{m,1}). Returns the inverse of the row matrix with
/// unit-norm columns. Throws Error(kDegenerateChannel) when the condition
/// number exceeds 1e12.
CMatrix zf_precoder(const CMatrix& effective_rows);

/// Precoder plus per-cluster receive vectors for a full system draw.
struct BeamformingSolution {
  CMatrix precoder;                     // M x M, column m serves cluster m
  std::vector<ReceiverPair> receivers;  // one per cluster
};

/// Reduces one cluster to its scalar model. If user 2 ends up with the
/// larger gain, the labels are swapped so gamma1 >= gamma2.
EffectiveCluster effective_cluster(const ClusterChannel& ch,
                                   const CVector& precoder_column,
                                   const ReceiverPair& rx, double rho);

/// Aligns every cluster, then builds the shared ZF precoder.
BeamformingSolution beamform(std::span<const ClusterChannel> clusters);

/// Effective clusters for every cluster of a beamformed draw.
std::vector<EffectiveCluster> reduce_clusters(
    std::span<const ClusterChannel> clusters, const BeamformingSolution& bf,
    double rho);

/// Largest leaked power |v_{m,k}^H H_{m,k} p_i|^2 into cluster m over
/// both users k and every other beam i != m.
double cluster_interference_gain(std::span<const ClusterChannel> clusters,
                                 const BeamformingSolution& bf,
                                 std::size_t cluster);

/// cluster_interference_gain maximized over all clusters.
double max_interference_gain(std::span<const ClusterChannel> clusters,
                             const BeamformingSolution& bf);

}  // namespace mimonoma

#endif  // MIMONOMA_BEAMFORMING_HPP
