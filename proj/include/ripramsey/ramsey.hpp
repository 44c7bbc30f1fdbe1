#pragma once

// Monochromatic clique bounds for the threshold coloring.
//
// For unit vectors in R^n, no 2n of them can be pairwise within
// 1/(2 sqrt(n)), so every White clique has fewer than 2n vertices. A Blue
// (or Red) clique C with |C| >= 2 sqrt(n) + 1 yields the uniform vector x on
// C with | ||Phi x||^2 - 1 | >= 1, so under (s, delta)-RIP with
// s >= 2 sqrt(n) + 1 and delta < 1 those cliques stay below 2 sqrt(n) + 1.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ripramsey/clique.hpp"
#include "ripramsey/coloring.hpp"
#include "ripramsey/column_matrix.hpp"
#include "ripramsey/rip.hpp"

namespace ripramsey {

struct ColorCliqueReport {
  Color color = Color::White;
  std::size_t max_size = 0;
  std::vector<std::size_t> witness;
  bool exact = true;
  double bound = 0.0;         // size must stay strictly below this
  bool within_bound = true;   // max_size < bound
  bool asserted = false;      // a violation is a contradiction, not an observation
  std::uint64_t nodes = 0;
};

enum class Verdict { Pass, Fail, Observed, Unresolved };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Observed: return "observed";
    case Verdict::Unresolved: return "unresolved";
  }
  return "?";
}

inline Verdict verdict_of(const ColorCliqueReport& c) {
  if (!c.asserted) return Verdict::Observed;
  if (!c.within_bound) return Verdict::Fail;
  return c.exact ? Verdict::Pass : Verdict::Unresolved;
}

struct RamseyReport {
  index_t p = 0;
  index_t n = 0;
  Palette palette = Palette::ThreeColor;
  double white_bound = 0.0;   // 2n, strict
  double signed_bound = 0.0;  // 2 sqrt(n) + 1, strict
  std::vector<ColorCliqueReport> colors;
  std::optional<RipCertificate> rip_context;
  bool rip_asserted = false;
  bool partial = false;

  const ColorCliqueReport& color(Color c) const {
    for (const auto& r : colors)
      if (r.color == c) return r;
    throw std::out_of_range(std::string("RamseyReport: no entry for ") + color_name(c));
  }
  bool has_violation() const {
    for (const auto& r : colors)
      if (verdict_of(r) == Verdict::Fail) return true;
    return false;
  }
  /// Crude form of the White bound: max_white <= 2n.
  bool white_crude_ok() const { return static_cast<double>(color(Color::White).max_size) <= white_bound; }
};

/// True when `cert` establishes RIP strong enough for the Blue/Red bound:
/// an upper-bound certificate (exhaustive or coherence) with delta < 1 at
/// sparsity s >= 2 sqrt(n) + 1.
inline bool certifies_signed_bound(const RipCertificate& cert, index_t n) {
  return cert.method != RipMethod::Sampled && cert.valid &&
         static_cast<double>(cert.s) >= 2.0 * std::sqrt(static_cast<double>(n)) + 1.0;
}

struct RamseyOptions {
  CliqueOptions clique;
};

inline RamseyReport verify_ramsey(const EdgeColoring& coloring, index_t n,
                                  const std::optional<RipCertificate>& rip_cert = std::nullopt,
                                  const RamseyOptions& opts = {}) {
  if (n < 1) throw std::invalid_argument("verify_ramsey: n must be >= 1");
  RamseyReport rep;
  rep.p = coloring.vertices();
  rep.n = n;
  rep.palette = coloring.palette();
  rep.white_bound = 2.0 * static_cast<double>(n);
  rep.signed_bound = 2.0 * std::sqrt(static_cast<double>(n)) + 1.0;
  rep.rip_context = rip_cert;
  rep.rip_asserted = rip_cert && certifies_signed_bound(*rip_cert, n);

  std::vector<Color> palette{Color::White, Color::Blue};
  if (coloring.palette() == Palette::ThreeColor) palette.push_back(Color::Red);
  for (Color c : palette) {
    const CliqueResult res = max_clique_exact(ColorClassGraph::from_coloring(coloring, c), opts.clique);
    ColorCliqueReport cr;
    cr.color = c;
    cr.max_size = res.size;
    cr.witness = res.witness;
    cr.exact = res.exact;
    cr.nodes = res.nodes;
    cr.bound = (c == Color::White) ? rep.white_bound : rep.signed_bound;
    cr.within_bound = static_cast<double>(res.size) < cr.bound;
    cr.asserted = (c == Color::White) || rep.rip_asserted;
    rep.partial = rep.partial || !res.exact;
    rep.colors.push_back(std::move(cr));
  }
  return rep;
}

struct ContradictionCheck {
  double lhs = 0.0;  // Blue: ||Phi x||^2 - 1, Red: 1 - ||Phi x||^2
  double rhs = 0.0;  // (|C| - 1) / (2 sqrt(n))
  bool holds = false;
  bool contradicts_rip = false;  // |C| >= 2 sqrt(n) + 1, so rhs >= 1
};

/// For a Blue clique C (or Red with `color` = Red) builds x uniform on C and
/// compares the deviation of ||Phi x||^2 from 1 against (|C|-1)/(2 sqrt(n)).
/// ||Phi x|| is formed from Phi x directly, not from the pairwise sum.
inline ContradictionCheck signed_clique_contradiction_check(const ColumnMatrix& matrix,
                                                            const std::vector<std::size_t>& clique,
                                                            const EdgeColoring& coloring, Color color,
                                                            double tol_num = 1e-9) {
  if (color == Color::White) throw std::invalid_argument("contradiction check: color must be Blue or Red");
  if (clique.size() < 2) throw std::invalid_argument("contradiction check: clique needs at least 2 vertices");
  if (coloring.vertices() != matrix.cols()) throw std::invalid_argument("contradiction check: size mismatch");
  for (std::size_t a = 0; a < clique.size(); ++a)
    for (std::size_t b = a + 1; b < clique.size(); ++b)
      if (coloring.get(clique[a], clique[b]) != color)
        throw std::invalid_argument(std::string("contradiction check: vertex set is not monochromatic ") +
                                    color_name(color));

  const double size = static_cast<double>(clique.size());
  const double weight = 1.0 / std::sqrt(size);
  const Eigen::Index n = Eigen::Index(matrix.rows());
  std::vector<long double> y(static_cast<std::size_t>(n), 0.0L);
  for (std::size_t v : clique)
    for (Eigen::Index k = 0; k < n; ++k) y[std::size_t(k)] += static_cast<long double>(weight) * matrix(index_t(k), v);
  long double norm2 = 0.0L;
  for (long double v : y) norm2 += v * v;

  ContradictionCheck out;
  const double deviation = static_cast<double>(norm2 - 1.0L);
  out.lhs = (color == Color::Blue) ? deviation : -deviation;
  out.rhs = (size - 1.0) / (2.0 * std::sqrt(static_cast<double>(matrix.rows())));
  out.holds = out.lhs >= out.rhs - tol_num;
  out.contradicts_rip = size >= 2.0 * std::sqrt(static_cast<double>(matrix.rows())) + 1.0;
  return out;
}

inline ContradictionCheck blue_clique_contradiction_check(const ColumnMatrix& matrix,
                                                          const std::vector<std::size_t>& clique,
                                                          const EdgeColoring& coloring, double tol_num = 1e-9) {
  return signed_clique_contradiction_check(matrix, clique, coloring, Color::Blue, tol_num);
}

}  // namespace ripramsey
