#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ripramsey/devore.hpp"
#include "ripramsey/rip.hpp"

using namespace ripramsey;

TEST(Colex, EnumerationMatchesUnrank) {
  std::vector<index_t> c{0, 1, 2};
  index_t rank = 0;
  do {
    ASSERT_EQ(detail::unrank_colex(rank, 3), c);
    ++rank;
  } while (detail::next_colex(c, 7));
  EXPECT_EQ(rank, 35u);
}

TEST(DeltaExhaustive, OrthonormalIsZero) {
  const ColumnMatrix m(Eigen::MatrixXd::Identity(5, 5));
  for (std::size_t s = 1; s <= 5; ++s) {
    const RipCertificate c = delta_exhaustive(m, s);
    EXPECT_NEAR(c.delta, 0.0, 1e-15);
    EXPECT_TRUE(c.valid);
    EXPECT_EQ(c.supports_checked, binomial_saturating(5, s));
  }
}

TEST(DeltaExhaustive, TwoColumnsGiveAbsInnerProduct) {
  for (double c : {0.3, -0.7, 0.0, 0.99}) {
    Eigen::MatrixXd m(2, 2);
    m << 1, c, 0, std::sqrt(1 - c * c);
    EXPECT_NEAR(delta_exhaustive(ColumnMatrix(m), 2).delta, std::abs(c), 1e-14);
  }
}

TEST(DeltaExhaustive, DeVoreZ3R1WithinCoherenceCertificate) {
  const ColumnMatrix m = devore_dense(DeVoreParams(3, 1));
  const RipCertificate c = delta_exhaustive(m, 2);
  EXPECT_EQ(c.supports_checked, 36u);
  // s = 2 reduces to the coherence 1/3, within the certificate 2/3
  EXPECT_NEAR(c.delta, 1.0 / 3.0, 1e-12);
  EXPECT_LE(c.delta, 2.0 / 3.0);
}

TEST(DeltaExhaustive, MatchesJacobiOracle) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ColumnMatrix m = random_baseline(5, 9, Distribution::Gaussian, seed);
    for (int s : {2, 3, 4}) {
      const RipCertificate c = delta_exhaustive(m, std::size_t(s));
      ASSERT_NEAR(c.delta, oracle::brute_force_delta(m.entries(), s), 1e-9) << seed << " s=" << s;
      ASSERT_EQ(c.witness_support.size(), std::size_t(s));
    }
  }
}

TEST(DeltaExhaustive, MonotoneInSparsity) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ColumnMatrix m = random_baseline(6, 10, Distribution::Rademacher, seed);
    double prev = 0.0;
    for (std::size_t s = 1; s <= 6; ++s) {
      const double d = delta_exhaustive(m, s).delta;
      ASSERT_GE(d, prev - 1e-9);
      prev = d;
    }
  }
}

TEST(DeltaExhaustive, ThreadCountDoesNotChangeResult) {
  const ColumnMatrix m = random_baseline(6, 14, Distribution::Gaussian, 8);
  const RipCertificate a = delta_exhaustive(m, 5, {1'000'000, 1});
  const RipCertificate b = delta_exhaustive(m, 5, {1'000'000, 3});
  EXPECT_EQ(a.delta, b.delta);
  EXPECT_EQ(a.witness_support, b.witness_support);
}

TEST(DeltaExhaustive, BudgetAndSparsityErrors) {
  const ColumnMatrix m = random_baseline(6, 30, Distribution::Gaussian, 1);
  EXPECT_THROW(delta_exhaustive(m, 10, {1000, 1}), budget_exceeded);
  EXPECT_THROW(delta_exhaustive(m, 0), std::invalid_argument);
  EXPECT_THROW(delta_exhaustive(m, 31), std::invalid_argument);
}

TEST(DeltaSampled, FullCoverageEqualsExhaustive) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ColumnMatrix m = random_baseline(5, 8, Distribution::Gaussian, seed);
    const RipCertificate ex = delta_exhaustive(m, 3);
    const RipCertificate sa = delta_sampled(m, 3, 56, seed);
    EXPECT_EQ(sa.delta, ex.delta);
    EXPECT_EQ(sa.method, RipMethod::Sampled);
    EXPECT_EQ(sa.supports_checked, 56u);
  }
}

TEST(DeltaSampled, LowerBoundAndDeterministic) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const ColumnMatrix m = random_baseline(6, 8 + seed % 5, Distribution::Gaussian, seed);
    const RipCertificate ex = delta_exhaustive(m, 4);
    const RipCertificate sa = delta_sampled(m, 4, 20, seed);
    ASSERT_LE(sa.delta, ex.delta + 1e-12);
    ASSERT_EQ(sa.delta, delta_sampled(m, 4, 20, seed).delta);
    ASSERT_EQ(sa.supports_checked, 20u);
  }
  const ColumnMatrix orth(Eigen::MatrixXd::Identity(10, 10));
  EXPECT_NEAR(delta_sampled(orth, 4, 5, 1).delta, 0.0, 1e-15);
  EXPECT_THROW(delta_sampled(orth, 4, 0, 1), std::invalid_argument);
}

TEST(CoherenceCertificate, Basics) {
  const RipCertificate o = coherence_certificate(ColumnMatrix(Eigen::MatrixXd::Identity(4, 4)), 3);
  EXPECT_EQ(o.delta, 0.0);
  EXPECT_TRUE(o.valid);
  const RipCertificate d = coherence_certificate(devore_dense(DeVoreParams(7, 2)), 1);
  EXPECT_NEAR(d.delta, 2.0 / 7.0, 1e-12);
  EXPECT_NEAR(d.gershgorin_delta, 0.0, 1e-15);
  EXPECT_EQ(d.method, RipMethod::Coherence);
}

TEST(CertificateOrdering, SampledBelowExhaustiveBelowCoherence) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ColumnMatrix m = random_baseline(8, 11, seed % 2 ? Distribution::Gaussian : Distribution::Rademacher, seed);
    for (std::size_t s : {2u, 3u, 4u}) {
      const double sa = delta_sampled(m, s, 15, seed).delta;
      const double ex = delta_exhaustive(m, s).delta;
      const double co = coherence_certificate(m, s).delta;
      ASSERT_LE(sa, ex + 1e-9);
      ASSERT_LE(ex, co + 1e-9);
      // Gershgorin: (s-1) mu also bounds delta
      ASSERT_LE(ex, coherence_certificate(m, s).gershgorin_delta + 1e-9);
    }
  }
}

TEST(DeVoreCertifiedSparsity, ExhaustiveDeltaBelowOne) {
  // s = floor(z / (2r)) makes s r / z <= 1/2
  for (auto [z, r] : {std::pair{5u, 1u}, std::pair{7u, 1u}, std::pair{7u, 2u}, std::pair{11u, 1u}}) {
    const DeVoreParams params(z, r);
    const std::size_t s = z / (2 * r);
    const ColumnMatrix m = devore_dense(params);
    if (binomial_saturating(m.cols(), s) > 1'000'000) continue;
    const RipCertificate c = delta_exhaustive(m, s);
    EXPECT_LT(c.delta, 1.0) << z << "," << r;
    EXPECT_LE(c.delta, rip_certificate_coherence(params, s).delta.value() + 1e-9);
  }
}

TEST(GramSubmatrices, SymmetricWithUnitDiagonal) {
  const ColumnMatrix m = random_baseline(7, 12, Distribution::Gaussian, 5);
  const Eigen::MatrixXd g = m.gram();
  EXPECT_LT((g - g.transpose()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((g.diagonal().array() - 1.0).abs().maxCoeff(), 1e-12);
}

TEST(RandomBaseline, NormsAndDeterminism) {
  for (Distribution d : {Distribution::Gaussian, Distribution::Rademacher, Distribution::TightFrame}) {
    const ColumnMatrix a = random_baseline(8, 14, d, 1);
    const ColumnMatrix b = random_baseline(8, 14, d, 1);
    EXPECT_EQ(a.entries(), b.entries());
    EXPECT_LT((a.entries().colwise().squaredNorm().array() - 1.0).abs().maxCoeff(), 1e-12);
  }
  const ColumnMatrix r = random_baseline(25, 60, Distribution::Rademacher, 7);
  EXPECT_LT((r.entries().cwiseAbs().array() - 0.2).abs().maxCoeff(), 1e-15);
  EXPECT_NE(random_baseline(8, 14, Distribution::Gaussian, 1).entries(),
            random_baseline(8, 14, Distribution::Gaussian, 2).entries());
  EXPECT_THROW(random_baseline(0, 3, Distribution::Gaussian, 1), std::invalid_argument);
  EXPECT_THROW(random_baseline(4, 3, Distribution::TightFrame, 1), std::invalid_argument);
}

TEST(RandomBaseline, TightFrameHasFrameBound) {
  const ColumnMatrix m = random_baseline(8, 14, Distribution::TightFrame, 3);
  const Eigen::MatrixXd frame = m.entries() * m.entries().transpose();
  EXPECT_LT((frame - (14.0 / 8.0) * Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(DenseFile, RoundTripIsBitExact) {
  const ColumnMatrix m = random_baseline(5, 7, Distribution::Gaussian, 42);
  std::ostringstream os;
  write_dense(os, m);
  std::istringstream is(os.str());
  EXPECT_EQ(read_dense(is).entries(), m.entries());
  for (const char* bad : {"", "2 2\n1 0\n0", "2 2\n1 0\n0 x\n", "2 2\n1 0\n0 1\n5\n", "2 2\n2 0\n0 1\n"}) {
    std::istringstream b(bad);
    EXPECT_ANY_THROW(read_dense(b)) << bad;
  }
}
