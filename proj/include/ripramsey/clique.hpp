#pragma once

// Maximum clique search on one color class of an edge coloring.
//
// The exact solver is a bitset branch and bound in the MCQ/BBMC family:
// vertices are relabelled by degree (descending, ties by index) and every
// node is bounded by a greedy sequential coloring of the candidate set.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "ripramsey/coloring.hpp"
#include "ripramsey/common.hpp"

namespace ripramsey {

class Bitset {
public:
  Bitset() = default;
  explicit Bitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t size() const { return bits_; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  /// Lowest set bit, or size() when empty.
  std::size_t first() const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k]) return k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k]));
    return bits_;
  }
  Bitset& operator&=(const Bitset& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  /// this &= ~o
  Bitset& subtract(const Bitset& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }

private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Simple undirected graph; for a coloring, the edges of one color.
class ColorClassGraph {
public:
  explicit ColorClassGraph(std::size_t p) : adj_(p, Bitset(p)) {}

  static ColorClassGraph from_coloring(const EdgeColoring& coloring, Color color) {
    const auto p = static_cast<std::size_t>(coloring.vertices());
    ColorClassGraph g(p);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i + 1; j < p; ++j)
        if (coloring.get(i, j) == color) g.add_edge(i, j);
    return g;
  }

  std::size_t vertices() const { return adj_.size(); }
  void add_edge(std::size_t i, std::size_t j) {
    if (i == j) throw std::invalid_argument("ColorClassGraph: self-loop");
    adj_[i].set(j);
    adj_[j].set(i);
  }
  bool has_edge(std::size_t i, std::size_t j) const { return i != j && adj_[i].test(j); }
  std::size_t degree(std::size_t i) const { return adj_[i].count(); }
  const Bitset& neighbours(std::size_t i) const { return adj_[i]; }

  bool is_clique(const std::vector<std::size_t>& vs) const {
    for (std::size_t a = 0; a < vs.size(); ++a)
      for (std::size_t b = a + 1; b < vs.size(); ++b)
        if (!has_edge(vs[a], vs[b])) return false;
    return true;
  }

private:
  std::vector<Bitset> adj_;
};

struct CliqueResult {
  std::size_t size = 0;
  std::vector<std::size_t> witness;  // ascending vertex ids
  bool exact = true;
  std::uint64_t nodes = 0;
};

struct CliqueOptions {
  std::uint64_t node_budget = 50'000'000;
};

namespace detail {

class CliqueSearch {
public:
  CliqueSearch(const ColorClassGraph& g, std::uint64_t budget) : budget_(budget) {
    const std::size_t p = g.vertices();
    order_.resize(p);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::vector<std::size_t> deg(p);
    for (std::size_t v = 0; v < p; ++v) deg[v] = g.degree(v);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return deg[a] > deg[b]; });
    adj_.assign(p, Bitset(p));
    for (std::size_t a = 0; a < p; ++a)
      for (std::size_t b = a + 1; b < p; ++b)
        if (g.has_edge(order_[a], order_[b])) {
          adj_[a].set(b);
          adj_[b].set(a);
        }
  }

  CliqueResult run() {
    const std::size_t p = adj_.size();
    CliqueResult res;
    if (p == 0) return res;
    Bitset all(p);
    for (std::size_t v = 0; v < p; ++v) all.set(v);
    expand(all);
    res.size = best_.size();
    for (std::size_t v : best_) res.witness.push_back(order_[v]);
    std::sort(res.witness.begin(), res.witness.end());
    res.exact = !exhausted_;
    res.nodes = nodes_;
    return res;
  }

private:
  void expand(Bitset cand) {
    if (exhausted_) return;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    // Greedy sequential coloring of cand; vertices come out grouped by
    // color, and color[k] bounds the clique within the first k+1 of them.
    std::vector<std::size_t> verts;
    std::vector<std::size_t> colors;
    verts.reserve(cand.count());
    Bitset uncolored = cand;
    std::size_t k = 0;
    while (!uncolored.none()) {
      ++k;
      Bitset avail = uncolored;
      while (!avail.none()) {
        const std::size_t v = avail.first();
        avail.reset(v);
        avail.subtract(adj_[v]);
        uncolored.reset(v);
        verts.push_back(v);
        colors.push_back(k);
      }
    }
    for (std::size_t idx = verts.size(); idx-- > 0;) {
      if (current_.size() + colors[idx] <= best_.size()) return;
      const std::size_t v = verts[idx];
      current_.push_back(v);
      Bitset next = cand & adj_[v];
      if (next.none()) {
        if (current_.size() > best_.size()) best_ = current_;
      } else {
        expand(std::move(next));
      }
      current_.pop_back();
      if (exhausted_) return;
      cand.reset(v);
    }
  }

  std::vector<std::size_t> order_;
  std::vector<Bitset> adj_;
  std::vector<std::size_t> current_, best_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace detail

/// Exact maximum clique. On budget exhaustion the best clique found so far
/// is returned with exact = false.
inline CliqueResult max_clique_exact(const ColorClassGraph& graph, const CliqueOptions& opts = {}) {
  return detail::CliqueSearch(graph, opts.node_budget).run();
}

/// Multi-restart greedy clique. Restart 0 grows from the highest-degree
/// vertex; later restarts grow from a random vertex with random tie-breaks.
inline CliqueResult greedy_clique_lower_bound(const ColorClassGraph& graph, unsigned restarts,
                                              std::uint64_t seed) {
  const std::size_t p = graph.vertices();
  CliqueResult best;
  best.exact = false;
  if (p == 0) return best;
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (unsigned t = 0; t < std::max(1u, restarts); ++t) {
    if (t > 0) std::shuffle(order.begin(), order.end(), rng);
    std::size_t start = order[0];
    if (t == 0)
      for (std::size_t v = 0; v < p; ++v)
        if (graph.degree(v) > graph.degree(start)) start = v;
    std::vector<std::size_t> clique{start};
    Bitset cand = graph.neighbours(start);
    while (!cand.none()) {
      // candidate with most neighbours inside cand; ties follow `order`
      std::size_t pick = p, pick_deg = 0;
      for (std::size_t v : order) {
        if (!cand.test(v)) continue;
        const std::size_t d = (cand & graph.neighbours(v)).count();
        if (pick == p || d > pick_deg) {
          pick = v;
          pick_deg = d;
        }
      }
      clique.push_back(pick);
      cand &= graph.neighbours(pick);
    }
    if (clique.size() > best.size) {
      best.size = clique.size();
      best.witness = clique;
    }
  }
  std::sort(best.witness.begin(), best.witness.end());
  return best;
}

}  // namespace ripramsey
