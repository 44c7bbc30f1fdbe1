#pragma once

// DeVore's polynomial construction over Z_z.
//
// Rows are indexed by pairs (x, y) in Z_z^2 with row index x*z + y. Columns
// are indexed by the polynomials of degree <= r over Z_z, encoded as the
// base-z number whose least significant digit is the constant term. The
// entry at ((x, y), P) is 1/sqrt(z) when y = P(x) and 0 otherwise, so the
// matrix has n = z^2 rows and p = z^(r+1) columns of unit norm.

#include <cmath>
#include <compare>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ripramsey/column_matrix.hpp"
#include "ripramsey/common.hpp"

namespace ripramsey {

class DeVoreParams {
public:
  /// Throws std::invalid_argument when z is not prime or r is outside
  /// [1, z), std::overflow_error when z^(r+1) does not fit in index_t.
  DeVoreParams(std::uint32_t z, std::uint32_t r) : z_(z), r_(r) {
    if (!is_prime(z))
      throw std::invalid_argument("DeVoreParams: z = " + std::to_string(z) + " is not prime");
    if (r < 1 || r >= z)
      throw std::invalid_argument("DeVoreParams: need 1 <= r < z, got r = " + std::to_string(r) +
                                  ", z = " + std::to_string(z));
    const auto p = checked_pow(z, r + 1);
    if (!p)
      throw std::overflow_error("DeVoreParams: p = z^(r+1) overflows the index type");
    p_ = *p;
  }

  std::uint32_t z() const { return z_; }
  std::uint32_t r() const { return r_; }
  /// n = z^2
  index_t rows() const { return index_t{z_} * z_; }
  /// p = z^(r+1)
  index_t cols() const { return p_; }

  friend bool operator==(const DeVoreParams&, const DeVoreParams&) = default;

private:
  std::uint32_t z_;
  std::uint32_t r_;
  index_t p_ = 0;
};

/// A polynomial of degree <= r over Z_z together with its column index.
struct PolyIndex {
  index_t index = 0;
  std::vector<std::uint32_t> coefficients;  // a_0 .. a_r

  friend bool operator==(const PolyIndex&, const PolyIndex&) = default;
};

/// Row indices of the nonzero entries of one column, ascending.
struct ColumnSupport {
  std::vector<index_t> rows;
  double value = 0.0;  // common nonzero value 1/sqrt(z)
};

/// Exact inner product m/z between two DeVore columns.
struct ExactInnerProduct {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;

  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }

  // Rational comparison by cross multiplication; denominators are at most
  // a few thousand at any usable scale so the products cannot overflow.
  friend bool operator==(const ExactInnerProduct& a, const ExactInnerProduct& b) {
    return a.numerator * b.denominator == b.numerator * a.denominator;
  }
  friend std::strong_ordering operator<=>(const ExactInnerProduct& a, const ExactInnerProduct& b) {
    return a.numerator * b.denominator <=> b.numerator * a.denominator;
  }
};

inline std::ostream& operator<<(std::ostream& os, const ExactInnerProduct& v) {
  return os << v.numerator << '/' << v.denominator;
}

inline PolyIndex poly_from_index(index_t idx, const DeVoreParams& params) {
  if (idx >= params.cols())
    throw std::out_of_range("poly_from_index: index " + std::to_string(idx) + " >= p = " +
                            std::to_string(params.cols()));
  PolyIndex poly;
  poly.index = idx;
  poly.coefficients.resize(params.r() + 1);
  for (auto& a : poly.coefficients) {
    a = static_cast<std::uint32_t>(idx % params.z());
    idx /= params.z();
  }
  return poly;
}

/// Inverse of poly_from_index.
inline PolyIndex poly_from_coefficients(std::vector<std::uint32_t> coefficients,
                                        const DeVoreParams& params) {
  if (coefficients.size() != params.r() + 1)
    throw std::invalid_argument("poly_from_coefficients: expected r+1 coefficients");
  index_t idx = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    if (*it >= params.z()) throw std::invalid_argument("poly_from_coefficients: coefficient not in Z_z");
    idx = idx * params.z() + *it;
  }
  return PolyIndex{idx, std::move(coefficients)};
}

/// P(x) mod z by Horner's rule.
inline std::uint32_t poly_eval(const PolyIndex& poly, std::uint32_t x, const DeVoreParams& params) {
  if (x >= params.z()) throw std::out_of_range("poly_eval: x not in Z_z");
  const std::uint64_t z = params.z();
  std::uint64_t acc = 0;
  for (auto it = poly.coefficients.rbegin(); it != poly.coefficients.rend(); ++it)
    acc = (acc * x + *it) % z;
  return static_cast<std::uint32_t>(acc);
}

inline ColumnSupport column_support(const PolyIndex& poly, const DeVoreParams& params) {
  ColumnSupport support;
  support.value = 1.0 / std::sqrt(static_cast<double>(params.z()));
  support.rows.reserve(params.z());
  for (std::uint32_t x = 0; x < params.z(); ++x)
    support.rows.push_back(index_t{x} * params.z() + poly_eval(poly, x, params));
  return support;
}

/// m/z where m counts the x in Z_z with P(x) = Q(x).
inline ExactInnerProduct inner_product_exact(const PolyIndex& p, const PolyIndex& q,
                                             const DeVoreParams& params) {
  std::uint64_t m = 0;
  for (std::uint32_t x = 0; x < params.z(); ++x)
    if (poly_eval(p, x, params) == poly_eval(q, x, params)) ++m;
  return {m, params.z()};
}

/// Table of P(x) for every column P and every x, row-major by column.
class EvaluationTable {
public:
  explicit EvaluationTable(const DeVoreParams& params, index_t max_entries = index_t{1} << 28)
      : params_(params) {
    const index_t z = params.z();
    if (params.cols() > max_entries / z)
      throw budget_exceeded("EvaluationTable: p*z exceeds the entry budget");
    values_.resize(params.cols() * z);
    for (index_t col = 0; col < params.cols(); ++col) {
      const PolyIndex poly = poly_from_index(col, params);
      for (std::uint32_t x = 0; x < z; ++x) values_[col * z + x] = poly_eval(poly, x, params);
    }
  }

  const DeVoreParams& params() const { return params_; }

  std::uint32_t value(index_t col, std::uint32_t x) const { return values_[col * params_.z() + x]; }

  /// Agreement count m for columns i and j.
  std::uint32_t agreements(index_t i, index_t j) const {
    const index_t z = params_.z();
    const std::uint32_t* a = values_.data() + i * z;
    const std::uint32_t* b = values_.data() + j * z;
    std::uint32_t m = 0;
    for (index_t x = 0; x < z; ++x) m += (a[x] == b[x]);
    return m;
  }

private:
  DeVoreParams params_;
  std::vector<std::uint32_t> values_;
};

struct CoherenceResult {
  ExactInnerProduct value;
  index_t witness_i = 0;
  index_t witness_j = 0;
  /// false when `value` is the certified bound r/z rather than an enumerated maximum
  bool exact = true;
};

/// Exact max over distinct column pairs of m/z, with the lexicographically
/// smallest witness pair. Throws budget_exceeded when p(p-1)/2 > pair_budget.
inline CoherenceResult coherence_exact(const DeVoreParams& params,
                                       index_t pair_budget = index_t{200'000'000},
                                       unsigned threads = 1) {
  const index_t p = params.cols();
  if (binomial_saturating(p, 2) > pair_budget)
    throw budget_exceeded("coherence_exact: " + std::to_string(p) + " columns exceed the pair budget");
  const EvaluationTable table(params);

  struct Best {
    std::uint32_t m = 0;
    index_t i = 0, j = 1;
    bool found = false;
  };
  threads = std::max(1u, threads);
  std::vector<Best> partial(threads);
  parallel_chunks(p, threads, [&](unsigned w, index_t begin, index_t end) {
    Best best;
    for (index_t i = begin; i < end; ++i)
      for (index_t j = i + 1; j < p; ++j) {
        const std::uint32_t m = table.agreements(i, j);
        if (!best.found || m > best.m) best = {m, i, j, true};
      }
    partial[w] = best;
  });
  // Chunks are in ascending i order, so strict > keeps the smallest witness.
  Best best;
  for (const auto& b : partial)
    if (b.found && (!best.found || b.m > best.m)) best = b;
  return {{best.m, params.z()}, best.i, best.j, true};
}

/// coherence_exact, or the bound r/z flagged inexact when over budget.
inline CoherenceResult coherence_or_bound(const DeVoreParams& params,
                                          index_t pair_budget = index_t{200'000'000},
                                          unsigned threads = 1) {
  try {
    return coherence_exact(params, pair_budget, threads);
  } catch (const budget_exceeded&) {
    return {{params.r(), params.z()}, 0, 1, false};
  }
}

/// Certificate from the rule s*r/z <= delta, together with the sharper
/// Gershgorin value (s-1)*r/z.
struct DeVoreRipCertificate {
  std::uint64_t s = 0;
  ExactInnerProduct delta;
  bool valid = false;  // delta < 1
  ExactInnerProduct gershgorin_delta;
  bool gershgorin_valid = false;
};

inline DeVoreRipCertificate rip_certificate_coherence(const DeVoreParams& params, std::uint64_t s) {
  if (s < 1) throw std::invalid_argument("rip_certificate_coherence: s must be >= 1");
  DeVoreRipCertificate cert;
  cert.s = s;
  cert.delta = {s * params.r(), params.z()};
  cert.valid = s * params.r() < params.z();
  cert.gershgorin_delta = {(s - 1) * params.r(), params.z()};
  cert.gershgorin_valid = (s - 1) * params.r() < params.z();
  return cert;
}

/// Parameters of the construction for r = ceil(z^eps). p is usually far
/// beyond index_t, so it is carried in the log domain.
struct RegimeReport {
  std::uint64_t z = 0;
  double epsilon = 0.0;
  std::uint64_t r = 0;
  std::uint64_t n = 0;
  std::optional<index_t> p;  // z^(r+1) when representable
  double log_p = 0.0;        // (r+1) ln z
  std::uint64_t s = 0;       // floor(z / (2r))
  bool degenerate = false;   // s == 0
  double exponent = 0.0;     // 2/eps
  double log_n = 0.0;
  double log_polylog_bound = 0.0;  // (2/eps) ln(ln p)
  bool polylog_ok = false;         // n <= (ln p)^(2/eps)
  double log_ratio_form = 0.0;     // (2/eps) ln(ln p / ln z)
};

inline RegimeReport regime_calculator(std::uint64_t z, double epsilon) {
  if (!is_prime(z)) throw std::invalid_argument("regime_calculator: z = " + std::to_string(z) + " is not prime");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw std::invalid_argument("regime_calculator: epsilon must be positive");
  RegimeReport rep;
  rep.z = z;
  rep.epsilon = epsilon;
  rep.r = static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<double>(z), epsilon)));
  if (rep.r < 1) rep.r = 1;
  if (rep.r >= z)
    throw std::domain_error("regime_calculator: r = " + std::to_string(rep.r) + " is not < z = " +
                            std::to_string(z));
  rep.n = z * z;
  rep.p = checked_pow(z, static_cast<unsigned>(rep.r + 1));
  const double log_z = std::log(static_cast<double>(z));
  rep.log_p = static_cast<double>(rep.r + 1) * log_z;
  rep.s = z / (2 * rep.r);
  rep.degenerate = rep.s == 0;
  rep.exponent = 2.0 / epsilon;
  rep.log_n = std::log(static_cast<double>(rep.n));
  rep.log_polylog_bound = rep.exponent * std::log(rep.log_p);
  rep.polylog_ok = rep.log_n <= rep.log_polylog_bound;
  rep.log_ratio_form = rep.exponent * std::log(rep.log_p / log_z);
  return rep;
}

/// Dense n x p materialization. Throws budget_exceeded when n*p > max_entries.
inline ColumnMatrix devore_dense(const DeVoreParams& params, index_t max_entries = index_t{50'000'000}) {
  const index_t n = params.rows(), p = params.cols();
  if (p > max_entries / n) throw budget_exceeded("devore_dense: n*p exceeds the entry budget");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(Eigen::Index(n), Eigen::Index(p));
  for (index_t col = 0; col < p; ++col) {
    const ColumnSupport support = column_support(poly_from_index(col, params), params);
    for (index_t row : support.rows) m(Eigen::Index(row), Eigen::Index(col)) = support.value;
  }
  return ColumnMatrix(std::move(m), ColumnMatrix::NormPolicy::Reject);
}

/// Structural file: the single line `devore z=<z> r=<r>`.
inline void write_structural(std::ostream& os, const DeVoreParams& params) {
  os << "devore z=" << params.z() << " r=" << params.r() << '\n';
}

inline DeVoreParams read_structural(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("structural file: empty input");
  std::istringstream ss(line);
  std::string tag, zs, rs, extra;
  ss >> tag >> zs >> rs;
  if (tag != "devore" || zs.rfind("z=", 0) != 0 || rs.rfind("r=", 0) != 0 || (ss >> extra))
    throw std::runtime_error("structural file: expected `devore z=<z> r=<r>`, got `" + line + "`");
  try {
    return DeVoreParams(static_cast<std::uint32_t>(std::stoul(zs.substr(2))),
                        static_cast<std::uint32_t>(std::stoul(rs.substr(2))));
  } catch (const std::logic_error& e) {
    throw std::runtime_error(std::string("structural file: ") + e.what());
  }
}

}  // namespace ripramsey
