#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace ripramsey {

using index_t = std::uint64_t;

/// Raised when an enumeration would exceed its configured work budget.
/// Callers are expected to fall back to a bound or to a sampled mode.
class budget_exceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// base^exp, or nullopt on overflow of index_t.
inline std::optional<index_t> checked_pow(index_t base, unsigned exp) {
  index_t result = 1;
  for (unsigned k = 0; k < exp; ++k) {
    if (base != 0 && result > std::numeric_limits<index_t>::max() / base)
      return std::nullopt;
    result *= base;
  }
  return result;
}

/// C(n, k) saturating at the maximum of index_t.
inline index_t binomial_saturating(index_t n, index_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  index_t result = 1;
  for (index_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i is exact at every step
    const index_t num = n - k + i;
    const index_t g = std::gcd(result, i);
    const index_t a = result / g;
    const index_t b = i / g;
    const index_t c = num / b;
    if (c != 0 && a > std::numeric_limits<index_t>::max() / c)
      return std::numeric_limits<index_t>::max();
    result = a * c;
  }
  return result;
}

/// Deterministic trial division.
inline bool is_prime(std::uint64_t z) {
  if (z < 2) return false;
  if (z < 4) return true;
  if (z % 2 == 0) return false;
  for (std::uint64_t d = 3; d <= z / d; d += 2)
    if (z % d == 0) return false;
  return true;
}

/// Thread count from RIPRAMSEY_THREADS, else 1.
inline unsigned default_thread_count() {
  if (const char* env = std::getenv("RIPRAMSEY_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

/// Splits [0, count) into `threads` contiguous chunks and runs
/// fn(worker, begin, end) on each. Chunk boundaries depend only on
/// (count, threads), so any per-chunk reduction merged in worker order is
/// deterministic.
template <class Fn>
void parallel_chunks(index_t count, unsigned threads, Fn&& fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || count < 2 * threads) {
    fn(0u, index_t{0}, count);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  const index_t step = count / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const index_t begin = w * step;
    const index_t end = (w + 1 == threads) ? count : begin + step;
    pool.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
  }
}

}  // namespace ripramsey
