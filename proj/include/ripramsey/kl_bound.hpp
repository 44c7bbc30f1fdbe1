#pragma once

// Any 2n unit vectors in R^n contain a pair with |<u_i,u_j>| at least
// 1/sqrt(2(2n-1)). With U the Gram matrix, U - I has eigenvalue -1 with
// multiplicity >= n (rank U <= n), so sum_{i!=j} <u_i,u_j>^2 = tr((U-I)^2) >= n,
// and averaging over the 2n(2n-1) ordered pairs gives the bound.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ripramsey {

class VectorFamily {
public:
  static constexpr double tol_norm = 1e-12;

  /// Columns of `vectors` are the family; each must have unit squared norm
  /// within tol_norm.
  explicit VectorFamily(Eigen::MatrixXd vectors) : v_(std::move(vectors)) {
    if (v_.rows() < 1) throw std::invalid_argument("VectorFamily: dimension must be >= 1");
    for (Eigen::Index j = 0; j < v_.cols(); ++j)
      if (std::abs(v_.col(j).squaredNorm() - 1.0) > tol_norm)
        throw std::invalid_argument("VectorFamily: vector " + std::to_string(j) + " is not unit norm");
  }

  Eigen::Index dimension() const { return v_.rows(); }
  Eigen::Index count() const { return v_.cols(); }
  const Eigen::MatrixXd& vectors() const { return v_; }

  Eigen::MatrixXd gram() const { return v_.transpose() * v_; }

private:
  Eigen::MatrixXd v_;
};

struct CoherenceWitness {
  double value = 0.0;
  Eigen::Index i = 0, j = 1;
};

/// max_{i != j} |<u_i,u_j>|, first maximizing pair in lexicographic order.
inline CoherenceWitness max_offdiag_coherence(const VectorFamily& family) {
  if (family.count() < 2) throw std::invalid_argument("max_offdiag_coherence: need at least 2 vectors");
  const Eigen::MatrixXd g = family.gram();
  CoherenceWitness w{-1.0, 0, 1};
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = i + 1; j < g.cols(); ++j)
      if (std::abs(g(i, j)) > w.value) w = {std::abs(g(i, j)), i, j};
  return w;
}

struct KlBound {
  double sharp = 0.0;   // 1/sqrt(2(2n-1))
  double stated = 0.0;  // 1/(2 sqrt(n))
  bool dominates = false;
};

inline KlBound kl_lower_bound(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("kl_lower_bound: n must be >= 1");
  KlBound b;
  b.sharp = 1.0 / std::sqrt(2.0 * (2.0 * double(n) - 1.0));
  b.stated = 1.0 / (2.0 * std::sqrt(double(n)));
  b.dominates = b.sharp > b.stated;
  return b;
}

struct TraceAudit {
  Eigen::Index rank = 0;
  double offdiag_square_sum = 0.0;  // tr((U - I)^2) without the diagonal residue
  double lower_bound = 0.0;         // n
  double implied_max = 0.0;         // sqrt(sum / (2n(2n-1)))
  bool consistent = false;          // sum >= n - tol and rank <= n
};

/// Audits the trace argument on a family of exactly 2n vectors. The trace
/// is the direct off-diagonal square sum; the rank uses a relative 1e-10
/// cutoff on the Gram singular values.
inline TraceAudit trace_argument_audit(const VectorFamily& family, double tol_num = 1e-9) {
  const Eigen::Index n = family.dimension();
  if (family.count() != 2 * n)
    throw std::invalid_argument("trace_argument_audit: need exactly 2n = " + std::to_string(2 * n) + " vectors");
  const Eigen::MatrixXd g = family.gram();
  TraceAudit a;
  long double sum = 0.0L;
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j)
      if (i != j) sum += static_cast<long double>(g(i, j)) * g(i, j);
  a.offdiag_square_sum = static_cast<double>(sum);
  a.lower_bound = static_cast<double>(n);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
  const auto& sv = svd.singularValues();
  const double cutoff = 1e-10 * (sv.size() ? sv(0) : 0.0);
  for (Eigen::Index k = 0; k < sv.size(); ++k) a.rank += sv(k) > cutoff;

  const double pairs = 2.0 * double(n) * (2.0 * double(n) - 1.0);
  a.implied_max = std::sqrt(a.offdiag_square_sum / pairs);
  a.consistent = a.offdiag_square_sum >= a.lower_bound - tol_num && a.rank <= n;
  return a;
}

enum class FamilyKind { Gaussian, PerturbedFrames, TwoBases };

inline const char* family_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::Gaussian: return "gaussian";
    case FamilyKind::PerturbedFrames: return "perturbed-frames";
    case FamilyKind::TwoBases: return "two-bases";
  }
  return "?";
}

inline FamilyKind parse_family(const std::string& s) {
  if (s == "gaussian") return FamilyKind::Gaussian;
  if (s == "perturbed-frames") return FamilyKind::PerturbedFrames;
  if (s == "two-bases") return FamilyKind::TwoBases;
  throw std::invalid_argument("unknown family `" + s + "`");
}

/// Seeded family of `count` unit vectors in R^n.
///  - Gaussian: normalized standard normal vectors.
///  - PerturbedFrames: random orthonormal frames stacked side by side, each
///    vector nudged by noise of size 1e-3 and renormalized.
///  - TwoBases: the standard basis followed by the orthonormal DCT-II basis
///    (coherence sqrt(2/n)), a near-orthogonal design; the seed only
///    applies random column signs.
inline VectorFamily random_family(Eigen::Index n, Eigen::Index count, FamilyKind kind, std::uint64_t seed) {
  if (n < 1 || count < 1) throw std::invalid_argument("random_family: bad size");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd v(n, count);
  switch (kind) {
    case FamilyKind::Gaussian:
      for (Eigen::Index j = 0; j < count; ++j)
        for (Eigen::Index i = 0; i < n; ++i) v(i, j) = normal(rng);
      break;
    case FamilyKind::PerturbedFrames: {
      for (Eigen::Index start = 0; start < count; start += n) {
        Eigen::MatrixXd g(n, n);
        for (Eigen::Index j = 0; j < n; ++j)
          for (Eigen::Index i = 0; i < n; ++i) g(i, j) = normal(rng);
        const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
        for (Eigen::Index j = start; j < std::min(count, start + n); ++j) v.col(j) = q.col(j - start);
      }
      for (Eigen::Index j = 0; j < count; ++j)
        for (Eigen::Index i = 0; i < n; ++i) v(i, j) += 1e-3 * normal(rng);
      break;
    }
    case FamilyKind::TwoBases: {
      const double pi = std::acos(-1.0);
      for (Eigen::Index j = 0; j < count; ++j) {
        const Eigen::Index k = j % (2 * n);
        if (k < n) {
          v.col(j) = Eigen::VectorXd::Unit(n, k);
        } else {
          const Eigen::Index f = k - n;
          const double scale = std::sqrt((f == 0 ? 1.0 : 2.0) / double(n));
          for (Eigen::Index i = 0; i < n; ++i) v(i, j) = scale * std::cos(pi * (double(i) + 0.5) * double(f) / double(n));
        }
        if (rng() & 1u) v.col(j) *= -1.0;
      }
      break;
    }
  }
  for (Eigen::Index j = 0; j < count; ++j) v.col(j).normalize();
  return VectorFamily(std::move(v));
}

/// Per-trial seed derived from a master seed (splitmix64 finalizer).
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t n, std::uint64_t trial) {
  std::uint64_t x = master ^ (n * 0x9E3779B97F4A7C15ull) ^ (trial * 0xBF58476D1CE4E5B9ull);
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

struct KlTrial {
  std::int64_t n = 0;
  double max = 0.0;
  double bound = 0.0;
  bool ok = false;  // max >= bound - tol
  TraceAudit audit;
};

/// One property trial: 2n vectors in R^n, coherence against the bound and
/// the trace audit.
inline KlTrial kl_trial(std::int64_t n, FamilyKind kind, std::uint64_t seed, double tol_num = 1e-9) {
  const VectorFamily family = random_family(n, 2 * n, kind, seed);
  KlTrial t;
  t.n = n;
  t.max = max_offdiag_coherence(family).value;
  t.bound = kl_lower_bound(n).sharp;
  t.ok = t.max >= t.bound - tol_num;
  t.audit = trace_argument_audit(family, tol_num);
  return t;
}

}  // namespace ripramsey
