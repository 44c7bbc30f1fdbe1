#pragma once

#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ripramsey/column_matrix.hpp"
#include "ripramsey/common.hpp"
#include "ripramsey/devore.hpp"

namespace ripramsey {

enum class Color : std::uint8_t { White = 0, Blue = 1, Red = 2 };
enum class Palette : std::uint8_t { TwoColor = 2, ThreeColor = 3 };

inline char color_code(Color c) {
  switch (c) {
    case Color::White: return 'W';
    case Color::Blue: return 'B';
    case Color::Red: return 'R';
  }
  return '?';
}

inline const char* color_name(Color c) {
  switch (c) {
    case Color::White: return "white";
    case Color::Blue: return "blue";
    case Color::Red: return "red";
  }
  return "?";
}

inline Color color_from_code(char c) {
  switch (c) {
    case 'W': return Color::White;
    case 'B': return Color::Blue;
    case 'R': return Color::Red;
  }
  throw std::invalid_argument(std::string("unknown color code `") + c + "`");
}

/// Edge coloring of the complete graph on p vertices, stored as a packed
/// upper triangle.
class EdgeColoring {
public:
  EdgeColoring(index_t p, Palette palette) : p_(p), palette_(palette) {
    if (p < 2) throw std::invalid_argument("EdgeColoring: need p >= 2");
    colors_.assign(edge_count(), Color::White);
  }

  index_t vertices() const { return p_; }
  Palette palette() const { return palette_; }
  index_t edge_count() const { return p_ * (p_ - 1) / 2; }

  Color get(index_t i, index_t j) const { return colors_[slot(i, j)]; }

  void set(index_t i, index_t j, Color c) {
    if (palette_ == Palette::TwoColor && c == Color::Red)
      throw std::invalid_argument("EdgeColoring: Red is not in the two-color palette");
    colors_[slot(i, j)] = c;
  }

  index_t count(Color c) const {
    index_t k = 0;
    for (Color x : colors_) k += (x == c);
    return k;
  }

  /// Edges whose inner product was within tolerance of the threshold.
  const std::vector<std::pair<index_t, index_t>>& boundary_edges() const { return boundary_; }
  void flag_boundary(index_t i, index_t j) { boundary_.emplace_back(std::min(i, j), std::max(i, j)); }

  /// Colors only; boundary flags are audit metadata.
  friend bool operator==(const EdgeColoring& a, const EdgeColoring& b) {
    return a.p_ == b.p_ && a.palette_ == b.palette_ && a.colors_ == b.colors_;
  }

private:
  index_t slot(index_t i, index_t j) const {
    if (i == j || i >= p_ || j >= p_) throw std::out_of_range("EdgeColoring: bad edge");
    if (i > j) std::swap(i, j);
    return i * (2 * p_ - i - 1) / 2 + (j - i - 1);
  }

  index_t p_;
  Palette palette_;
  std::vector<Color> colors_;
  std::vector<std::pair<index_t, index_t>> boundary_;
};

/// 1 / (2 sqrt(n))
inline double threshold(index_t n) {
  if (n < 1) throw std::invalid_argument("threshold: n must be >= 1");
  return 1.0 / (2.0 * std::sqrt(static_cast<double>(n)));
}

struct ColoringOptions {
  Palette palette = Palette::ThreeColor;
  double tol_edge = 1e-12;
  unsigned threads = 1;
};

/// White when |<u_i,u_j>| <= tau (closed), Blue above +tau, Red below -tau.
/// Values within tol_edge of +-tau are White and flagged. The two-color
/// palette requires a matrix with nonnegative entries.
inline EdgeColoring color_edges(const ColumnMatrix& matrix, const ColoringOptions& opts = {}) {
  if (opts.palette == Palette::TwoColor && !matrix.nonnegative())
    throw std::invalid_argument("color_edges: two-color palette needs nonnegative entries");
  const index_t p = matrix.cols();
  const double tau = threshold(matrix.rows());
  EdgeColoring coloring(p, opts.palette);
  std::vector<std::vector<std::pair<index_t, index_t>>> flagged(std::max(1u, opts.threads));
  parallel_chunks(p, opts.threads, [&](unsigned w, index_t begin, index_t end) {
    for (index_t i = begin; i < end; ++i)
      for (index_t j = i + 1; j < p; ++j) {
        const double ip = matrix.dot(i, j);
        const double gap = std::abs(ip) - tau;
        Color c = Color::White;
        if (gap > opts.tol_edge) c = ip > 0 ? Color::Blue : Color::Red;
        if (std::abs(gap) <= opts.tol_edge) flagged[w].emplace_back(i, j);
        coloring.set(i, j, c);  // distinct slots per worker
      }
  });
  for (const auto& list : flagged)
    for (const auto& [i, j] : list) coloring.flag_boundary(i, j);
  return coloring;
}

/// Two-color DeVore coloring in integers: with tau = 1/(2z) and
/// <u_i,u_j> = m/z, the edge is Blue iff 2m > 1.
inline EdgeColoring color_edges_exact_devore(const DeVoreParams& params,
                                             index_t edge_budget = index_t{200'000'000}) {
  const index_t p = params.cols();
  if (binomial_saturating(p, 2) > edge_budget)
    throw budget_exceeded("color_edges_exact_devore: edge count exceeds budget");
  const EvaluationTable table(params);
  EdgeColoring coloring(p, Palette::TwoColor);
  for (index_t i = 0; i < p; ++i)
    for (index_t j = i + 1; j < p; ++j)
      if (2 * table.agreements(i, j) > 1) coloring.set(i, j, Color::Blue);
  return coloring;
}

/// `coloring p=<p> palette=<2|3>` then `i j <W|B|R>` per edge, i < j,
/// lexicographic.
inline void write_coloring(std::ostream& os, const EdgeColoring& coloring) {
  const index_t p = coloring.vertices();
  os << "coloring p=" << p << " palette=" << static_cast<int>(coloring.palette()) << '\n';
  std::string line;
  for (index_t i = 0; i < p; ++i)
    for (index_t j = i + 1; j < p; ++j) {
      line.clear();
      line += std::to_string(i);
      line += ' ';
      line += std::to_string(j);
      line += ' ';
      line += color_code(coloring.get(i, j));
      line += '\n';
      os << line;
    }
}

inline EdgeColoring read_coloring(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw std::runtime_error("coloring file: empty input");
  std::istringstream hs(header);
  std::string tag, ps, pals;
  hs >> tag >> ps >> pals;
  if (tag != "coloring" || ps.rfind("p=", 0) != 0 || pals.rfind("palette=", 0) != 0)
    throw std::runtime_error("coloring file: bad header `" + header + "`");
  index_t p = 0;
  int pal = 0;
  try {
    p = std::stoull(ps.substr(2));
    pal = std::stoi(pals.substr(8));
  } catch (const std::logic_error&) {
    throw std::runtime_error("coloring file: bad header `" + header + "`");
  }
  if (pal != 2 && pal != 3) throw std::runtime_error("coloring file: palette must be 2 or 3");
  EdgeColoring coloring(p, pal == 2 ? Palette::TwoColor : Palette::ThreeColor);
  for (index_t i = 0; i < p; ++i)
    for (index_t j = i + 1; j < p; ++j) {
      index_t a = 0, b = 0;
      std::string code;
      if (!(is >> a >> b >> code)) throw std::runtime_error("coloring file: truncated");
      if (a != i || b != j || code.size() != 1)
        throw std::runtime_error("coloring file: expected edge " + std::to_string(i) + " " + std::to_string(j));
      try {
        coloring.set(i, j, color_from_code(code[0]));
      } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("coloring file: ") + e.what());
      }
    }
  std::string extra;
  if (is >> extra) throw std::runtime_error("coloring file: trailing data");
  return coloring;
}

}  // namespace ripramsey
