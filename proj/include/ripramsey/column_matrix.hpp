#pragma once

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ripramsey/common.hpp"

namespace ripramsey {

/// Real n x p matrix whose columns have unit Euclidean norm.
class ColumnMatrix {
public:
  enum class NormPolicy { Reject, Normalize };

  static constexpr double default_tol_norm = 1e-9;

  /// Throws std::invalid_argument when n < 1, p < 2, a column is zero, or
  /// (under Reject) a squared column norm is farther than tol_norm from 1.
  explicit ColumnMatrix(Eigen::MatrixXd entries, NormPolicy policy = NormPolicy::Reject,
                        double tol_norm = default_tol_norm)
      : entries_(std::move(entries)) {
    if (entries_.rows() < 1 || entries_.cols() < 2)
      throw std::invalid_argument("ColumnMatrix: need n >= 1 and p >= 2");
    for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
      const double sq = entries_.col(j).squaredNorm();
      if (!std::isfinite(sq) || sq == 0.0)
        throw std::invalid_argument("ColumnMatrix: column " + std::to_string(j) + " is zero or non-finite");
      if (policy == NormPolicy::Normalize) {
        entries_.col(j) /= std::sqrt(sq);
      } else if (std::abs(sq - 1.0) > tol_norm) {
        throw std::invalid_argument("ColumnMatrix: column " + std::to_string(j) +
                                    " has squared norm " + std::to_string(sq));
      }
    }
  }

  index_t rows() const { return static_cast<index_t>(entries_.rows()); }
  index_t cols() const { return static_cast<index_t>(entries_.cols()); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  double operator()(index_t i, index_t j) const { return entries_(Eigen::Index(i), Eigen::Index(j)); }

  /// <u_i, u_j> accumulated in long double.
  double dot(index_t i, index_t j) const {
    const double* a = entries_.col(Eigen::Index(i)).data();
    const double* b = entries_.col(Eigen::Index(j)).data();
    long double acc = 0.0L;
    for (Eigen::Index k = 0; k < entries_.rows(); ++k) acc += static_cast<long double>(a[k]) * b[k];
    return static_cast<double>(acc);
  }

  /// Full p x p Gram matrix, symmetric by construction.
  Eigen::MatrixXd gram() const {
    const Eigen::Index p = entries_.cols();
    Eigen::MatrixXd g(p, p);
    for (Eigen::Index i = 0; i < p; ++i) {
      g(i, i) = dot(index_t(i), index_t(i));
      for (Eigen::Index j = i + 1; j < p; ++j) g(i, j) = g(j, i) = dot(index_t(i), index_t(j));
    }
    return g;
  }

  bool nonnegative() const { return (entries_.array() >= 0.0).all(); }

  /// Copy with the columns listed in `flip` negated.
  ColumnMatrix with_flipped_columns(std::span<const index_t> flip) const {
    ColumnMatrix out = *this;
    for (index_t j : flip) out.entries_.col(Eigen::Index(j)) *= -1.0;
    return out;
  }

  /// Column j of the result is column perm[j] of this matrix.
  ColumnMatrix permuted(std::span<const index_t> perm) const {
    if (perm.size() != cols()) throw std::invalid_argument("ColumnMatrix::permuted: size mismatch");
    ColumnMatrix out = *this;
    for (index_t j = 0; j < cols(); ++j) out.entries_.col(Eigen::Index(j)) = entries_.col(Eigen::Index(perm[j]));
    return out;
  }

private:
  Eigen::MatrixXd entries_;
};

/// Dense text: `<n> <p>` then n lines of p values at 17 significant digits.
inline void write_dense(std::ostream& os, const Eigen::MatrixXd& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  char buf[32];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      if (j) os << ' ';
      os << buf;
    }
    os << '\n';
  }
}

inline void write_dense(std::ostream& os, const ColumnMatrix& m) { write_dense(os, m.entries()); }

inline Eigen::MatrixXd read_dense_entries(std::istream& is) {
  long long n = 0, p = 0;
  if (!(is >> n >> p) || n < 1 || p < 1) throw std::runtime_error("dense matrix: bad header");
  Eigen::MatrixXd m(n, p);
  for (long long i = 0; i < n; ++i)
    for (long long j = 0; j < p; ++j) {
      std::string tok;
      if (!(is >> tok)) throw std::runtime_error("dense matrix: truncated at row " + std::to_string(i));
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::logic_error&) {
        used = 0;
      }
      if (used != tok.size()) throw std::runtime_error("dense matrix: bad value `" + tok + "`");
      m(i, j) = v;
    }
  std::string extra;
  if (is >> extra) throw std::runtime_error("dense matrix: trailing data");
  return m;
}

inline ColumnMatrix read_dense(std::istream& is,
                               ColumnMatrix::NormPolicy policy = ColumnMatrix::NormPolicy::Reject,
                               double tol_norm = ColumnMatrix::default_tol_norm) {
  return ColumnMatrix(read_dense_entries(is), policy, tol_norm);
}

}  // namespace ripramsey
