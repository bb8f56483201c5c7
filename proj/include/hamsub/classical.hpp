#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "hamsub/counting.hpp"
#include "hamsub/graph.hpp"
#include "hamsub/numeric.hpp"

namespace hamsub {

struct PosaVerdict {
  bool passes = false;
  int witness_index = 0;  // 1-based index into the sorted degree sequence; 0 when passing
};

// Sorted degrees d_1 <= ... <= d_n: d_i >= i+1 for all i < (n-1)/2, and for
// odd n also d_{ceil(n/2)} >= ceil(n/2).
inline PosaVerdict posa_check(const Graph& g) {
  const int n = g.order();
  if (n < 3) throw std::invalid_argument("posa_check: need n >= 3");
  auto d = g.degrees();
  std::sort(d.begin(), d.end());
  for (int i = 1; 2 * i < n - 1; ++i)
    if (d[i - 1] < i + 1) return {false, i};
  if (n % 2 == 1) {
    const int h = (n + 1) / 2;
    if (d[h - 1] < h) return {false, h};
  }
  return {true, 0};
}

// Repeatedly deletes the lowest-index vertex among those of minimum degree
// while that degree is below d/2. The result may be empty.
inline Induced min_degree_core(const Graph& g, const Rational& d) {
  if (d <= 0) throw std::invalid_argument("min_degree_core: d must be positive");
  const int n = g.order();
  std::vector<int> deg = g.degrees();
  std::vector<char> gone(static_cast<std::size_t>(n), 0);
  std::set<std::pair<int, Vertex>> queue;
  for (Vertex v = 0; v < n; ++v) queue.emplace(deg[v], v);
  const Rational half = d / 2;
  while (!queue.empty()) {
    auto [k, v] = *queue.begin();
    if (Rational(k) >= half) break;
    queue.erase(queue.begin());
    gone[v] = 1;
    for (Vertex w : g.neighbors(v)) {
      if (gone[w]) continue;
      queue.erase({deg[w], w});
      --deg[w];
      queue.emplace(deg[w], w);
    }
  }
  VertexSet keep;
  for (Vertex v = 0; v < n; ++v)
    if (!gone[v]) keep.push_back(v);
  return induced_subgraph(g, keep);
}

// A longest cycle as a vertex sequence in g's labels; empty when g is a
// forest. Uses the largest Hamiltonian subset found by the subset DP.
inline std::vector<Vertex> longest_cycle(const Graph& g) {
  detail::require_cap(g, kDeskCap, "longest cycle");
  std::uint32_t best = 0;
  int best_size = 0;
  for_each_hamiltonian_subset(g, [&](std::uint32_t s) {
    const int k = std::popcount(s);
    if (k > best_size) {
      best_size = k;
      best = s;
    }
  });
  if (best == 0) return {};
  VertexSet keep;
  for (std::uint32_t m = best; m; m &= m - 1) keep.push_back(std::countr_zero(m));
  auto sub = induced_subgraph(g, keep);
  auto local = hamiltonian_cycle(sub.graph);
  std::vector<Vertex> out;
  out.reserve(local.size());
  for (Vertex v : local) out.push_back(sub.to_parent[v]);
  return out;
}

inline constexpr std::int64_t kBinomAssertFrom = 672;

struct BinomBoundCheck {
  std::int64_t n = 0;
  std::int64_t m = 0;     // floor(n/4 - 1)
  bool first = false;     // C(n, m) >= 2^{4n/5}
  bool second = false;    // C(n, 2m) >= 2^{n - log2 n}
  bool asserted = false;  // n is in the range where both must hold
};

// Both comparisons are done on integers: C(n,m)^5 >= 2^{4n} and
// n * C(n,2m) >= 2^n.
inline BinomBoundCheck binom_bound_check(std::int64_t n, std::int64_t assert_from = kBinomAssertFrom) {
  if (n < 1) throw std::invalid_argument("binom_bound_check: n must be >= 1");
  BinomBoundCheck r;
  r.n = n;
  r.m = n / 4 - 1;  // floor(n/4 - 1) for n >= 1
  if (r.m >= 0) {
    BigInt c1 = binomial(n, r.m);
    r.first = boost::multiprecision::pow(c1, 5) >= pow2(static_cast<unsigned>(4 * n));
    r.second = BigInt(n) * binomial(n, 2 * r.m) >= pow2(static_cast<unsigned>(n));
  }
  r.asserted = n >= assert_from;
  return r;
}

}  // namespace hamsub
