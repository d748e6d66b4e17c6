#include "mimonoma/beamforming.hpp"

#include <cmath>
#include <complex>

#include "gtest/gtest.h"
#include "mimonoma/error.hpp"

namespace mimonoma {
namespace {

SystemConfig make_system(std::uint64_t seed) {
  SystemConfig c;
  c.num_clusters = 4;
  c.user_antennas = 3;
  c.rng_seed = seed;
  return c;
}

TEST(AlignReceiversTest, GenericDrawAligns) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (const auto& ch : draw_clusters(make_system(seed))) {
      const ReceiverPair rx = align_receivers(ch);
      EXPECT_LT(rx.residual, 1e-10);
      EXPECT_NEAR(rx.v1.norm(), 1.0, 1e-12);
      EXPECT_NEAR(rx.v2.norm(), 1.0, 1e-12);
      // ||w1|| v1^H G1 == ||w2|| v2^H G2 exactly, not just parallel.
      const Eigen::RowVectorXcd lhs = rx.w1_norm * (rx.v1.adjoint() * ch.g1);
      const Eigen::RowVectorXcd rhs = rx.w2_norm * (rx.v2.adjoint() * ch.g2);
      EXPECT_LT((lhs - rhs).norm(), 1e-12);
    }
  }
}

TEST(AlignReceiversTest, IdenticalChannelsGiveIdenticalReceivers) {
  auto ch = draw_clusters(make_system(11)).front();
  ch.g2 = ch.g1;
  const ReceiverPair rx = align_receivers(ch);
  EXPECT_LT(rx.residual, 1e-10);
  // Equal up to a common phase.
  const std::complex<double> inner = rx.v1.dot(rx.v2);
  EXPECT_NEAR(std::abs(inner), 1.0, 1e-12);
}

TEST(AlignReceiversTest, LeftNullSpaceOfStackIsTwoDimensional) {
  const auto ch = draw_clusters(make_system(5)).front();
  CMatrix stacked(6, 4);
  stacked << ch.g1, ch.g2;
  Eigen::JacobiSVD<CMatrix> svd(stacked);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) rank += s(i) > 1e-10 * s(0);
  EXPECT_EQ(stacked.rows() - rank, 2);
}

TEST(AlignReceiversTest, InfeasibleShapeThrows) {
  ClusterChannel ch;
  ch.g1 = CMatrix::Random(2, 4);
  ch.g2 = CMatrix::Random(2, 4);
  EXPECT_THROW(align_receivers(ch), Error);
}

TEST(AlignReceiversTest, VanishingHalfIsDegenerate) {
  // With G2 = 0 every left null vector of [G1; G2] has w1 = 0.
  ClusterChannel ch = draw_clusters(make_system(2)).front();
  ch.g2.setZero();
  try {
    align_receivers(ch);
    FAIL() << "expected a degenerate channel";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateChannel);
  }
}

TEST(ZfPrecoderTest, IdentityRowsGiveIdentity) {
  const CMatrix p = zf_precoder(CMatrix::Identity(4, 4));
  EXPECT_LT((p - CMatrix::Identity(4, 4)).norm(), 1e-15);
}

TEST(ZfPrecoderTest, RandomRowsAreNulledAcrossClusters) {
  const CMatrix rows = CMatrix::Random(4, 4);
  const CMatrix p = zf_precoder(rows);
  const CMatrix gains = rows * p;
  for (Eigen::Index m = 0; m < 4; ++m) {
    EXPECT_NEAR(p.col(m).norm(), 1.0, 1e-12);
    for (Eigen::Index i = 0; i < 4; ++i) {
      if (i != m) EXPECT_LT(std::abs(gains(m, i)), 1e-10);
    }
  }
}

TEST(ZfPrecoderTest, SingularRowsAreRejected) {
  CMatrix rows = CMatrix::Random(4, 4);
  rows.row(3) = rows.row(0);
  try {
    zf_precoder(rows);
    FAIL() << "expected singular channel";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateChannel);
  }
}

TEST(BeamformTest, BothUsersAreFreeOfInterClusterInterference) {
  for (std::uint64_t seed = 100; seed < 200; ++seed) {
    const auto clusters = draw_clusters(make_system(seed));
    const BeamformingSolution bf = beamform(clusters);
    EXPECT_LT(max_interference_gain(clusters, bf), 1e-18);
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      // User 2's row is parallel to the row ZF inverted, so it is nulled too.
      const auto& rx = bf.receivers[c];
      const Eigen::RowVectorXcd row2 = rx.v2.adjoint() * clusters[c].h2();
      for (Eigen::Index i = 0; i < 4; ++i) {
        if (i == static_cast<Eigen::Index>(c)) continue;
        EXPECT_LT(std::abs((row2 * bf.precoder.col(i))(0)), 1e-10);
      }
    }
  }
}

TEST(EffectiveClusterTest, OrderingSwapsLabels) {
  const EffectiveCluster ec = EffectiveCluster::ordered(0.001, 0.05, 10.0);
  EXPECT_EQ(ec.gamma1, 0.05);
  EXPECT_EQ(ec.gamma2, 0.001);
  EXPECT_EQ(ec.rho, 10.0);
}

TEST(EffectiveClusterTest, GainRatioFollowsAlignmentAlgebra) {
  for (std::uint64_t seed = 20; seed < 40; ++seed) {
    auto clusters = draw_clusters(make_system(seed));
    const BeamformingSolution bf = beamform(clusters);
    const auto& ch = clusters[0];
    const auto& rx = bf.receivers[0];
    const CVector p = bf.precoder.col(0);
    const double g1 = std::norm((rx.v1.adjoint() * ch.h1() * p)(0));
    const double g2 = std::norm((rx.v2.adjoint() * ch.h2() * p)(0));
    // ||w1|| v1^H G1 = ||w2|| v2^H G2  =>  G1/G2 = (L2/L1)^2 (||w2||/||w1||)^2.
    const double expected = std::pow(ch.l2 / ch.l1, 2) *
                            std::pow(rx.w2_norm / rx.w1_norm, 2);
    EXPECT_NEAR(g1 / g2, expected, 1e-9 * expected);

    const EffectiveCluster ec = effective_cluster(ch, p, rx, 1.0);
    EXPECT_GE(ec.gamma1, ec.gamma2);
    EXPECT_NEAR(ec.gamma1, std::max(g1, g2), 1e-15);
  }
}

TEST(EffectiveClusterTest, InvariantUnderGlobalPhase) {
  const auto clusters = draw_clusters(make_system(9));
  const BeamformingSolution bf = beamform(clusters);
  const EffectiveCluster base =
      effective_cluster(clusters[1], bf.precoder.col(1), bf.receivers[1], 1.0);
  ClusterChannel rotated = clusters[1];
  const std::complex<double> phase = std::polar(1.0, 0.7);
  rotated.g1 *= phase;
  rotated.g2 *= phase;
  const EffectiveCluster again =
      effective_cluster(rotated, bf.precoder.col(1), bf.receivers[1], 1.0);
  EXPECT_NEAR(again.gamma1, base.gamma1, 1e-15);
  EXPECT_NEAR(again.gamma2, base.gamma2, 1e-15);
}

TEST(EffectiveClusterTest, DoublingDistanceScalesGain) {
  const double exponent = 3.8;
  const auto clusters = draw_clusters(make_system(4));
  const BeamformingSolution bf = beamform(clusters);
  ClusterChannel far = clusters[2];
  far.l1 *= std::pow(2.0, exponent / 2.0);
  far.l2 *= std::pow(2.0, exponent / 2.0);
  const auto near_ec =
      effective_cluster(clusters[2], bf.precoder.col(2), bf.receivers[2], 1.0);
  const auto far_ec =
      effective_cluster(far, bf.precoder.col(2), bf.receivers[2], 1.0);
  EXPECT_NEAR(far_ec.gamma1 / near_ec.gamma1, std::pow(2.0, -exponent), 1e-12);
  EXPECT_NEAR(far_ec.gamma2 / near_ec.gamma2, std::pow(2.0, -exponent), 1e-12);
}

}  // namespace
}  // namespace mimonoma
