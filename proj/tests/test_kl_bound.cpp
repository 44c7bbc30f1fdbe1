#include <gtest/gtest.h>

#include "ripramsey/kl_bound.hpp"

using namespace ripramsey;

namespace {

VectorFamily cross_polytope(Eigen::Index n) {
  Eigen::MatrixXd v(n, 2 * n);
  v << Eigen::MatrixXd::Identity(n, n), -Eigen::MatrixXd::Identity(n, n);
  return VectorFamily(v);
}

}  // namespace

TEST(KlLowerBound, Values) {
  EXPECT_NEAR(kl_lower_bound(1).sharp, 0.70710678118654752, 1e-15);
  EXPECT_NEAR(kl_lower_bound(2).sharp, 0.40824829046386302, 1e-15);
  const KlBound b25 = kl_lower_bound(25);
  EXPECT_NEAR(b25.sharp, 1.0 / std::sqrt(98.0), 1e-15);
  EXPECT_NEAR(b25.sharp, 0.10101525445522107, 1e-15);
  EXPECT_DOUBLE_EQ(b25.stated, 0.1);
  EXPECT_THROW(kl_lower_bound(0), std::invalid_argument);
}

TEST(KlLowerBound, SharpDominatesStatedForAllN) {
  for (std::int64_t n = 1; n <= 100000; n = n < 100 ? n + 1 : n * 3) EXPECT_TRUE(kl_lower_bound(n).dominates) << n;
}

TEST(MaxOffdiagCoherence, Examples) {
  const CoherenceWitness w = max_offdiag_coherence(cross_polytope(2));
  EXPECT_DOUBLE_EQ(w.value, 1.0);
  EXPECT_EQ(w.i, 0);
  EXPECT_EQ(w.j, 2);  // e1 and -e1
  EXPECT_GE(w.value, kl_lower_bound(2).sharp);

  const VectorFamily orth(Eigen::MatrixXd::Identity(3, 3));
  EXPECT_DOUBLE_EQ(max_offdiag_coherence(orth).value, 0.0);
  EXPECT_THROW(trace_argument_audit(orth), std::invalid_argument);  // 3 < 2n
  EXPECT_THROW(max_offdiag_coherence(VectorFamily(Eigen::MatrixXd::Identity(3, 1))), std::invalid_argument);
}

TEST(VectorFamily, RejectsNonUnitVectors) {
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(2, 2);
  v(0, 0) = 1.0 + 1e-9;
  EXPECT_THROW(VectorFamily{v}, std::invalid_argument);
}

TEST(TraceAudit, SmallestCase) {
  Eigen::MatrixXd v(1, 2);
  v << 1, -1;
  const TraceAudit a = trace_argument_audit(VectorFamily(v));
  EXPECT_DOUBLE_EQ(a.offdiag_square_sum, 2.0);
  EXPECT_DOUBLE_EQ(a.lower_bound, 1.0);
  EXPECT_EQ(a.rank, 1);
  EXPECT_TRUE(a.consistent);
}

TEST(TraceAudit, CrossPolytope) {
  const TraceAudit a = trace_argument_audit(cross_polytope(2));
  EXPECT_DOUBLE_EQ(a.offdiag_square_sum, 4.0);
  EXPECT_EQ(a.rank, 2);
  EXPECT_TRUE(a.consistent);
}

TEST(TraceAudit, SumMatchesSpectralRoute) {
  // tr((U - I)^2) from the eigenvalues of U
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const VectorFamily f = random_family(6, 12, FamilyKind::Gaussian, seed);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(f.gram());
    const double spectral = (es.eigenvalues().array() - 1.0).square().sum();
    const TraceAudit a = trace_argument_audit(f);
    // diagonal residues (|u|^2 - 1)^2 are below 1e-24
    EXPECT_NEAR(a.offdiag_square_sum, spectral, 1e-9);
    // at least n eigenvalues of U are (numerically) zero
    int zeros = 0;
    for (Eigen::Index k = 0; k < 12; ++k) zeros += std::abs(es.eigenvalues()(k)) < 1e-10;
    EXPECT_GE(zeros, 6);
  }
}

TEST(CoherenceBoundProperty, AllFamilyKinds) {
  for (FamilyKind kind : {FamilyKind::Gaussian, FamilyKind::PerturbedFrames, FamilyKind::TwoBases})
    for (std::int64_t n = 1; n <= 12; ++n)
      for (std::uint64_t t = 0; t < 50; ++t) {
        const KlTrial tr = kl_trial(n, kind, trial_seed(77, std::uint64_t(n), t));
        ASSERT_TRUE(tr.ok) << family_name(kind) << " n=" << n << " max=" << tr.max << " bound=" << tr.bound;
        ASSERT_TRUE(tr.audit.consistent) << family_name(kind) << " n=" << n;
        ASSERT_LE(tr.audit.rank, n);
        // chain: trace >= n implies max >= implied_max >= bound
        ASSERT_GE(tr.max, tr.audit.implied_max - 1e-12);
        ASSERT_GE(tr.audit.implied_max, tr.bound - 1e-9);
      }
}

TEST(RandomFamily, SeededAndUnitNorm) {
  const VectorFamily a = random_family(5, 10, FamilyKind::PerturbedFrames, 3);
  const VectorFamily b = random_family(5, 10, FamilyKind::PerturbedFrames, 3);
  EXPECT_EQ(a.vectors(), b.vectors());
  EXPECT_LT((a.vectors().colwise().squaredNorm().array() - 1.0).abs().maxCoeff(), 1e-12);
  // standard basis against the DCT-II basis
  const VectorFamily two = random_family(8, 16, FamilyKind::TwoBases, 1);
  EXPECT_NEAR(max_offdiag_coherence(two).value, std::sqrt(2.0 / 8.0) * std::cos(std::acos(-1.0) / 16.0), 1e-12);
  EXPECT_THROW(parse_family("nope"), std::invalid_argument);
}
