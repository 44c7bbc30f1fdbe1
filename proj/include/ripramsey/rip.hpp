#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ripramsey/column_matrix.hpp"
#include "ripramsey/common.hpp"

namespace ripramsey {

enum class RipMethod { Coherence, Exhaustive, Sampled };

inline const char* method_name(RipMethod m) {
  switch (m) {
    case RipMethod::Coherence: return "coherence";
    case RipMethod::Exhaustive: return "exhaustive";
    case RipMethod::Sampled: return "sampled";
  }
  return "?";
}

/// Outcome of an RIP computation. Exhaustive gives the RIP constant itself,
/// sampled a lower bound on it, coherence an upper bound.
struct RipCertificate {
  RipMethod method = RipMethod::Exhaustive;
  std::size_t s = 0;
  double delta = 0.0;
  bool valid = false;  // delta < 1
  index_t supports_checked = 0;
  std::vector<index_t> witness_support;
  std::optional<std::uint64_t> seed;
  // extreme eigenvalues over the examined supports
  double lambda_min = 1.0;
  double lambda_max = 1.0;
  // coherence method only
  double coherence = 0.0;
  double gershgorin_delta = 0.0;
};

struct RipOptions {
  index_t support_budget = 1'000'000;
  unsigned threads = 1;
};

namespace detail {

/// Colexicographic successor; false after the last combination.
inline bool next_colex(std::vector<index_t>& c, index_t p) {
  const std::size_t s = c.size();
  for (std::size_t i = 0; i < s; ++i) {
    const index_t limit = (i + 1 < s) ? c[i + 1] : p;
    if (c[i] + 1 < limit) {
      ++c[i];
      for (std::size_t k = 0; k < i; ++k) c[k] = k;
      return true;
    }
  }
  return false;
}

/// Combination with the given colex rank.
inline std::vector<index_t> unrank_colex(index_t rank, std::size_t s) {
  std::vector<index_t> c(s);
  for (std::size_t i = s; i-- > 0;) {
    index_t v = i;
    while (binomial_saturating(v + 1, i + 1) <= rank) ++v;
    c[i] = v;
    rank -= binomial_saturating(v, i + 1);
  }
  return c;
}

struct SupportScore {
  double delta = -1.0;
  double lambda_min = 1.0, lambda_max = 1.0;
  std::vector<index_t> support;
};

class SupportEvaluator {
public:
  SupportEvaluator(const Eigen::MatrixXd& gram, std::size_t s) : gram_(gram), sub_(s, s), solver_(Eigen::Index(s)) {}

  /// Extreme eigenvalues of the Gram submatrix on `support`.
  std::pair<double, double> extremes(const std::vector<index_t>& support) {
    const auto s = Eigen::Index(support.size());
    for (Eigen::Index a = 0; a < s; ++a)
      for (Eigen::Index b = 0; b < s; ++b) sub_(a, b) = gram_(Eigen::Index(support[a]), Eigen::Index(support[b]));
    solver_.compute(sub_, Eigen::EigenvaluesOnly);
    const auto& ev = solver_.eigenvalues();
    return {ev(0), ev(s - 1)};
  }

  void score(const std::vector<index_t>& support, SupportScore& best, double& lo, double& hi) {
    const auto [lmin, lmax] = extremes(support);
    lo = std::min(lo, lmin);
    hi = std::max(hi, lmax);
    const double d = std::max(lmax - 1.0, 1.0 - lmin);
    if (d > best.delta) best = {d, lmin, lmax, support};
  }

private:
  const Eigen::MatrixXd& gram_;
  Eigen::MatrixXd sub_;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver_;
};

inline void check_sparsity(const ColumnMatrix& m, std::size_t s) {
  if (s < 1 || s > m.cols())
    throw std::invalid_argument("RIP: sparsity must be in [1, p], got " + std::to_string(s));
}

inline RipCertificate enumerate_all(const ColumnMatrix& matrix, std::size_t s, index_t total, unsigned threads) {
  const Eigen::MatrixXd gram = matrix.gram();
  threads = std::max(1u, threads);
  std::vector<SupportScore> best(threads);
  std::vector<double> lo(threads, 1.0), hi(threads, 1.0);
  parallel_chunks(total, threads, [&](unsigned w, index_t begin, index_t end) {
    if (begin >= end) return;
    SupportEvaluator eval(gram, s);
    std::vector<index_t> c = unrank_colex(begin, s);
    for (index_t k = begin; k < end; ++k) {
      eval.score(c, best[w], lo[w], hi[w]);
      next_colex(c, matrix.cols());
    }
  });
  RipCertificate cert;
  cert.method = RipMethod::Exhaustive;
  cert.s = s;
  SupportScore overall;
  for (unsigned w = 0; w < threads; ++w) {
    if (best[w].delta > overall.delta) overall = best[w];
    cert.lambda_min = std::min(cert.lambda_min, lo[w]);
    cert.lambda_max = std::max(cert.lambda_max, hi[w]);
  }
  cert.delta = std::max(0.0, overall.delta);
  cert.valid = cert.delta < 1.0;
  cert.supports_checked = total;
  cert.witness_support = overall.support;
  return cert;
}

}  // namespace detail

/// True RIP constant of order s: the max over all |S| = s of
/// max(lambda_max - 1, 1 - lambda_min) of the Gram submatrix on S.
/// Supports are visited in colex order. Throws budget_exceeded when
/// C(p, s) > opts.support_budget.
inline RipCertificate delta_exhaustive(const ColumnMatrix& matrix, std::size_t s, const RipOptions& opts = {}) {
  detail::check_sparsity(matrix, s);
  const index_t total = binomial_saturating(matrix.cols(), s);
  if (total > opts.support_budget)
    throw budget_exceeded("delta_exhaustive: C(" + std::to_string(matrix.cols()) + ", " + std::to_string(s) +
                          ") supports exceed the budget; use sampled mode");
  return detail::enumerate_all(matrix, s, total, opts.threads);
}

/// Lower bound from `trials` uniformly drawn supports. When trials covers
/// every support the computation is the exhaustive one.
inline RipCertificate delta_sampled(const ColumnMatrix& matrix, std::size_t s, index_t trials, std::uint64_t seed) {
  detail::check_sparsity(matrix, s);
  if (trials < 1) throw std::invalid_argument("delta_sampled: trials must be >= 1");
  const index_t total = binomial_saturating(matrix.cols(), s);
  RipCertificate cert;
  if (trials >= total) {
    cert = detail::enumerate_all(matrix, s, total, 1);
  } else {
    const Eigen::MatrixXd gram = matrix.gram();
    detail::SupportEvaluator eval(gram, s);
    detail::SupportScore best;
    std::mt19937_64 rng(seed);
    std::vector<index_t> support;
    std::vector<char> used(matrix.cols());
    for (index_t t = 0; t < trials; ++t) {
      // Floyd's algorithm: uniform s-subset
      support.clear();
      std::fill(used.begin(), used.end(), 0);
      for (index_t j = matrix.cols() - s; j < matrix.cols(); ++j) {
        const index_t v = std::uniform_int_distribution<index_t>(0, j)(rng);
        const index_t pick = used[v] ? j : v;
        used[pick] = 1;
        support.push_back(pick);
      }
      std::sort(support.begin(), support.end());
      eval.score(support, best, cert.lambda_min, cert.lambda_max);
    }
    cert.delta = std::max(0.0, best.delta);
    cert.valid = cert.delta < 1.0;
    cert.supports_checked = trials;
    cert.witness_support = best.support;
    cert.s = s;
  }
  cert.method = RipMethod::Sampled;
  cert.seed = seed;
  return cert;
}

/// delta = s * mu with mu the coherence; (s - 1) * mu is reported alongside.
inline RipCertificate coherence_certificate(const ColumnMatrix& matrix, std::size_t s) {
  if (s < 1) throw std::invalid_argument("coherence_certificate: s must be >= 1");
  RipCertificate cert;
  cert.method = RipMethod::Coherence;
  cert.s = s;
  index_t wi = 0, wj = 1;
  double mu = -1.0;
  for (index_t i = 0; i < matrix.cols(); ++i)
    for (index_t j = i + 1; j < matrix.cols(); ++j) {
      const double v = std::abs(matrix.dot(i, j));
      if (v > mu) {
        mu = v;
        wi = i;
        wj = j;
      }
    }
  cert.coherence = mu;
  cert.delta = static_cast<double>(s) * mu;
  cert.gershgorin_delta = static_cast<double>(s - 1) * mu;
  cert.valid = cert.delta < 1.0;
  cert.witness_support = {wi, wj};
  cert.lambda_min = 1.0 - cert.gershgorin_delta;
  cert.lambda_max = 1.0 + cert.gershgorin_delta;
  return cert;
}

enum class Distribution { Gaussian, Rademacher, TightFrame };

inline const char* distribution_name(Distribution d) {
  switch (d) {
    case Distribution::Gaussian: return "gaussian";
    case Distribution::Rademacher: return "rademacher";
    case Distribution::TightFrame: return "tight-frame";
  }
  return "?";
}

inline Distribution parse_distribution(const std::string& s) {
  if (s == "gaussian") return Distribution::Gaussian;
  if (s == "rademacher") return Distribution::Rademacher;
  if (s == "tight-frame") return Distribution::TightFrame;
  throw std::invalid_argument("unknown distribution `" + s + "`");
}

/// Seeded random matrix with unit-norm columns.
///
/// Gaussian and Rademacher draw i.i.d. entries and normalize columns.
/// TightFrame starts from n rows of a random orthogonal matrix and
/// alternates column normalization with projection onto tight frames
/// (the polar factor scaled by sqrt(p/n)), which converges to a unit-norm
/// tight frame; every s-column Gram submatrix then has lambda_max <= p/n.
inline ColumnMatrix random_baseline(index_t n, index_t p, Distribution dist, std::uint64_t seed) {
  if (n < 1 || p < 2) throw std::invalid_argument("random_baseline: need n >= 1 and p >= 2");
  std::mt19937_64 rng(seed);
  const auto rows = Eigen::Index(n), cols = Eigen::Index(p);
  Eigen::MatrixXd m(rows, cols);
  switch (dist) {
    case Distribution::Gaussian: {
      std::normal_distribution<double> normal(0.0, 1.0);
      for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
      break;
    }
    case Distribution::Rademacher: {
      const double scale = 1.0 / std::sqrt(static_cast<double>(n));
      for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = (rng() & 1u) ? scale : -scale;
      break;
    }
    case Distribution::TightFrame: {
      if (n > p) throw std::invalid_argument("random_baseline: tight frame needs n <= p");
      std::normal_distribution<double> normal(0.0, 1.0);
      Eigen::MatrixXd g(cols, cols);
      for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < cols; ++i) g(i, j) = normal(rng);
      const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
      m = q.topRows(rows);
      const double frame_bound = std::sqrt(static_cast<double>(p) / static_cast<double>(n));
      for (int it = 0; it < 500; ++it) {
        m.colwise().normalize();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        m = frame_bound * svd.matrixU() * svd.matrixV().transpose();
      }
      break;
    }
  }
  return ColumnMatrix(std::move(m), ColumnMatrix::NormPolicy::Normalize);
}

}  // namespace ripramsey
