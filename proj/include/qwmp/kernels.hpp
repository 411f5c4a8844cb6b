#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "qwmp/errors.hpp"

namespace qwmp {

/// Execution policy for the combinatorial kernels. Parallel runs split
/// work into a fixed chunk grid independent of the thread count and
/// accumulate chunk partials in grid order, so results do not depend on
/// how many threads execute them.
enum class Exec { serial, parallel };

namespace detail {

inline constexpr std::size_t kChunkGrid = 64;

inline std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t t = 2; t <= n; ++t) f *= t;
  return f;
}

// Lexicographic unranking: returns the r-th permutation of {0,...,n-1}.
inline std::vector<int> perm_unrank(std::size_t n, std::uint64_t r) {
  std::vector<int> avail(n);
  std::iota(avail.begin(), avail.end(), 0);
  std::vector<int> p;
  p.reserve(n);
  for (std::size_t t = n; t > 0; --t) {
    const std::uint64_t f = factorial(t - 1);
    const std::size_t d = static_cast<std::size_t>(r / f);
    r %= f;
    p.push_back(avail[d]);
    avail.erase(avail.begin() + static_cast<std::ptrdiff_t>(d));
  }
  return p;
}

// Deterministic chunked reduction over [0, count). partial(b, e) must
// return the sum of terms b..e-1; chunk results are added in chunk order.
template <class T, class F>
T chunked_sum(std::uint64_t count, T zero, Exec exec, F&& partial) {
  if (count == 0) return zero;
  if (exec == Exec::serial) return partial(std::uint64_t{0}, count);

  const std::uint64_t chunks = std::min<std::uint64_t>(kChunkGrid, count);
  std::vector<T> parts(chunks, zero);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
    const std::uint64_t b = count * static_cast<std::uint64_t>(c) / chunks;
    const std::uint64_t e = count * (static_cast<std::uint64_t>(c) + 1) / chunks;
    parts[static_cast<std::size_t>(c)] = partial(b, e);
  }
  T total = zero;
  for (const T& p : parts) total += p;
  return total;
}

}  // namespace detail

/// All k-element subsets of {0,...,n-1} in lexicographic order.
inline std::vector<std::vector<int>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<int>> out;
  if (k > n) return out;
  std::vector<int> c(k);
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    out.push_back(c);
    std::size_t t = k;
    while (t > 0 && c[t - 1] == static_cast<int>(n - k + t - 1)) --t;
    if (t == 0) break;
    ++c[t - 1];
    for (std::size_t s = t; s < k; ++s) c[s] = c[s - 1] + 1;
  }
  return out;
}

/// The k-element subsets of {0,...,n-1} that contain `fixed`.
inline std::vector<std::vector<int>> combinations_containing(std::size_t n,
                                                             std::size_t k,
                                                             std::size_t fixed) {
  if (fixed >= n) throw IndexOutOfRange("fixed index outside the ground set");
  std::vector<std::vector<int>> out;
  if (k == 0 || k > n) return out;
  for (auto& c : combinations(n - 1, k - 1)) {
    std::vector<int> full;
    full.reserve(k);
    bool placed = false;
    for (int v : c) {
      const int shifted = v < static_cast<int>(fixed) ? v : v + 1;
      if (!placed && shifted > static_cast<int>(fixed)) {
        full.push_back(static_cast<int>(fixed));
        placed = true;
      }
      full.push_back(shifted);
    }
    if (!placed) full.push_back(static_cast<int>(fixed));
    out.push_back(std::move(full));
  }
  return out;
}

}  // namespace qwmp
