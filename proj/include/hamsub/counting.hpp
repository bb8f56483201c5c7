#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hamsub/graph.hpp"
#include "hamsub/numeric.hpp"
#include "hamsub/random.hpp"

namespace hamsub {

struct CountReport {
  BigInt c;                         // Hamiltonian subsets
  std::map<int, BigInt> by_size;    // |A| -> count, keys >= 3
  BigInt weak;                      // c + e + n + 1
  std::optional<BigInt> nu;         // number of cycles, when requested
  int n = 0;
  std::size_t e = 0;
};

struct PathCount {
  Vertex x = 0;
  Vertex y = 0;
  BigInt p;
};

namespace detail {

inline void require_cap(const Graph& g, int cap, const char* what) {
  if (g.order() > cap) throw CapExceeded(what, g.order(), cap);
}

inline std::vector<std::uint32_t> rows32(const Graph& g) {
  std::vector<std::uint32_t> r(static_cast<std::size_t>(g.order()));
  for (Vertex v = 0; v < g.order(); ++v) r[v] = static_cast<std::uint32_t>(g.row(v));
  return r;
}

}  // namespace detail

// Anchored subset DP. ends[S] holds, as a bit row, the vertices u such that
// G[S] has a Hamiltonian path from min(S) to u. S is Hamiltonian iff |S| >= 3
// and some such u is adjacent to min(S).
//
// The visitor is called as visit(S) for every Hamiltonian S, in increasing
// order of S.
template <typename Visit>
void for_each_hamiltonian_subset(const Graph& g, Visit&& visit, int cap = kDeskCap) {
  detail::require_cap(g, std::min(cap, kDeskCap), "hamiltonian subset DP");
  const int n = g.order();
  if (n < 3) return;
  const auto rows = detail::rows32(g);
  const std::uint32_t full = n == 32 ? ~0U : ((1U << n) - 1);
  std::vector<std::uint32_t> ends(std::size_t{1} << n, 0);
  for (std::uint32_t s = 1; s <= full && s != 0; ++s) {
    const int a = std::countr_zero(s);
    const std::uint32_t rest = s & (s - 1);
    if (rest == 0) {
      ends[s] = s;
      continue;
    }
    std::uint32_t r = 0;
    for (std::uint32_t m = rest; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      if (rows[v] & ends[s ^ (1U << v)]) r |= 1U << v;
    }
    ends[s] = r;
    if ((rest & (rest - 1)) != 0 && (r & rows[a])) visit(s);
    if (s == full) break;
  }
}

inline CountReport ham_subsets_count(const Graph& g, int cap = kDeskCap) {
  CountReport rep;
  rep.n = g.order();
  rep.e = g.size();
  std::vector<std::uint64_t> by_size(static_cast<std::size_t>(g.order()) + 1, 0);
  for_each_hamiltonian_subset(
      g, [&](std::uint32_t s) { ++by_size[static_cast<std::size_t>(std::popcount(s))]; }, cap);
  for (std::size_t k = 3; k < by_size.size(); ++k) {
    if (by_size[k] == 0) continue;
    rep.by_size[static_cast<int>(k)] = by_size[k];
    rep.c += by_size[k];
  }
  rep.weak = rep.c + rep.e + rep.n + 1;
  return rep;
}

inline bool is_hamiltonian(const Graph& g) {
  const int n = g.order();
  if (n < 3) return false;
  detail::require_cap(g, kDeskCap, "hamiltonicity test");
  const std::uint32_t full = n == 32 ? ~0U : ((1U << n) - 1);
  // Anchor at vertex 0; only subsets containing 0 are needed.
  const auto rows = detail::rows32(g);
  std::vector<std::uint32_t> ends(std::size_t{1} << (n - 1), 0);
  auto idx = [](std::uint32_t s) { return s >> 1; };
  ends[0] = 1;
  for (std::uint32_t s = 3; s <= full; s += 2) {
    std::uint32_t r = 0;
    for (std::uint32_t m = s & ~1U; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      if (rows[v] & ends[idx(s ^ (1U << v))]) r |= 1U << v;
    }
    ends[idx(s)] = r;
    if (s == full) return (r & rows[0]) != 0;
  }
  return false;
}

// A Hamiltonian cycle of g as a vertex sequence (first vertex 0, not
// repeated at the end), or empty when none exists.
inline std::vector<Vertex> hamiltonian_cycle(const Graph& g) {
  const int n = g.order();
  if (n < 3) return {};
  detail::require_cap(g, kDeskCap, "hamiltonian cycle search");
  const auto rows = detail::rows32(g);
  const std::uint32_t full = n == 32 ? ~0U : ((1U << n) - 1);
  std::vector<std::uint32_t> ends(std::size_t{1} << (n - 1), 0);
  auto idx = [](std::uint32_t s) { return s >> 1; };
  ends[0] = 1;
  for (std::uint32_t s = 3; s <= full; s += 2) {
    std::uint32_t r = 0;
    for (std::uint32_t m = s & ~1U; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      if (rows[v] & ends[idx(s ^ (1U << v))]) r |= 1U << v;
    }
    ends[idx(s)] = r;
    if (s == full) break;
  }
  std::uint32_t last = ends[idx(full)] & rows[0];
  if (!last) return {};
  std::vector<Vertex> seq;
  std::uint32_t s = full;
  Vertex v = std::countr_zero(last);
  while (v != 0) {
    seq.push_back(v);
    s ^= 1U << v;
    const std::uint32_t prev = s == 1 ? 1U : ends[idx(s)];
    v = std::countr_zero(prev & rows[v]);
  }
  seq.push_back(0);
  std::reverse(seq.begin(), seq.end());
  return seq;
}

// Number of U containing x and y such that G[U] has a Hamiltonian x,y-path.
// U = {x, y} counts exactly when xy is an edge.
inline PathCount path_subsets_count(const Graph& g, Vertex x, Vertex y, int cap = kDeskCap) {
  if (x == y) throw std::invalid_argument("path_subsets_count: x and y must differ");
  if (x < 0 || y < 0 || x >= g.order() || y >= g.order())
    throw std::out_of_range("path_subsets_count: vertex out of range");
  detail::require_cap(g, std::min(cap, kDeskCap), "spanning path DP");
  const int n = g.order();
  const auto rows = detail::rows32(g);
  const std::uint32_t xb = 1U << x, yb = 1U << y;
  const std::uint32_t full = n == 32 ? ~0U : ((1U << n) - 1);
  // ends[S] for S containing x: endpoints u of Hamiltonian x,u-paths in G[S].
  std::vector<std::uint32_t> ends(std::size_t{1} << n, 0);
  ends[xb] = xb;
  std::uint64_t p = 0;
  for (std::uint32_t s = 1; s <= full && s != 0; ++s) {
    if (!(s & xb) || s == xb) {
      if (s == full) break;
      continue;
    }
    std::uint32_t r = 0;
    for (std::uint32_t m = s & ~xb; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      if (rows[v] & ends[s ^ (1U << v)]) r |= 1U << v;
    }
    ends[s] = r;
    if ((s & yb) && (r & yb)) ++p;
    if (s == full) break;
  }
  return {x, y, BigInt(p)};
}

inline BigInt weak_ham_count(const Graph& g, int cap = kDeskCap) {
  return ham_subsets_count(g, cap).weak;
}

// Total number of cycles. For each anchor a, cnt[T][v] counts Hamiltonian
// a,v-paths of G[{a} + T] with T above a; closing edges to a give each cycle
// twice (once per direction).
inline BigInt count_all_cycles(const Graph& g, int cap = kCycleCensusCap) {
  detail::require_cap(g, std::min(cap, kCycleCensusCap), "cycle census");
  const int n = g.order();
  BigInt total = 0;
  for (Vertex a = 0; a + 2 < n; ++a) {
    const int m = n - 1 - a;  // vertices a+1..n-1 mapped to bits 0..m-1
    std::vector<std::uint32_t> nb(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) nb[j] = static_cast<std::uint32_t>(g.row(a + 1 + j) >> (a + 1));
    const auto from_a = static_cast<std::uint32_t>(g.row(a) >> (a + 1));
    const std::size_t cells = (std::size_t{1} << m) * static_cast<std::size_t>(m);
    std::vector<std::uint64_t> cnt(cells, 0);
    auto at = [&](std::uint32_t t, int v) -> std::uint64_t& {
      return cnt[static_cast<std::size_t>(t) * m + v];
    };
    unsigned __int128 twice = 0;
    const std::uint32_t full = (1U << m) - 1;
    for (std::uint32_t t = 1; t <= full; ++t) {
      for (std::uint32_t mm = t; mm; mm &= mm - 1) {
        const int v = std::countr_zero(mm);
        const std::uint32_t prev = t ^ (1U << v);
        std::uint64_t c = 0;
        if (prev == 0) {
          c = (from_a >> v) & 1U;
        } else {
          for (std::uint32_t w = prev & nb[v]; w; w &= w - 1) c += at(prev, std::countr_zero(w));
        }
        at(t, v) = c;
        if (std::popcount(t) >= 2 && ((from_a >> v) & 1U)) twice += c;
      }
      if (t == full) break;
    }
    BigInt part = static_cast<std::uint64_t>(twice >> 64);
    part <<= 64;
    part += static_cast<std::uint64_t>(twice);
    total += part / 2;
  }
  return total;
}

// Naive oracle: enumerate every subset and test it on its own.
inline BigInt ham_subsets_count_naive(const Graph& g) {
  detail::require_cap(g, 20, "naive enumeration");
  const int n = g.order();
  BigInt c = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s)
    if (std::popcount(s) >= 3 && is_hamiltonian(induced_by_mask(g, s))) ++c;
  return c;
}

// ---------------------------------------------------------------------------
// Closed forms

// c(K_{d+1}) = 2^{d+1} - C(d+1,2) - d - 2
inline BigInt closed_form_complete(int d) {
  return pow2(static_cast<unsigned>(d + 1)) - binomial(d + 1, 2) - d - 2;
}

// c(K_{d+1} * K_d) = (3/2) 2^{d+1} - d^2 - 2d - 3
inline BigInt closed_form_glued(int d) {
  BigInt dd = d;
  return 3 * pow2(static_cast<unsigned>(d)) - dd * dd - 2 * dd - 3;
}

// c(K_{a,b}) = C(a+b,a) - (ab+1), for 2 <= a <= b and a = b... the formula
// counts balanced subsets of both sides with at least two vertices per side.
inline BigInt closed_form_bipartite(int a, int b) {
  return binomial(a + b, a) - (BigInt(a) * b + 1);
}

// ceil(2^{d/2})
inline BigInt tuza_floor(int d) {
  if (d % 2 == 0) return pow2(static_cast<unsigned>(d / 2));
  // 2^{d/2} = 2^{(d-1)/2} * sqrt(2); ceil via integer sqrt of 2^d.
  BigInt sq = pow2(static_cast<unsigned>(d));
  BigInt r = boost::multiprecision::sqrt(sq);
  if (r * r < sq) ++r;
  return r;
}

// ---------------------------------------------------------------------------
// Monte Carlo fraction of Hamiltonian subsets

struct FractionEstimate {
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
  Rational estimate;
  double half_width = 0;  // 95% normal-approximation half-width
};

inline FractionEstimate ham_fraction_estimate(const Graph& g, std::uint64_t samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("ham_fraction_estimate: samples must be >= 1");
  detail::require_cap(g, kDeskCap, "per-subset Hamiltonicity");
  const CounterRng rng{seed};
  const int n = g.order();
  FractionEstimate out;
  out.samples = samples;
  for (std::uint64_t i = 0; i < samples; ++i) {
    std::uint64_t mask = rng.at(0, i);
    if (n < 64) mask &= (std::uint64_t{1} << n) - 1;
    if (std::popcount(mask) >= 3 && is_hamiltonian(induced_by_mask(g, mask))) ++out.hits;
  }
  out.estimate = Rational(out.hits, samples);
  const double p = static_cast<double>(out.hits) / static_cast<double>(samples);
  out.half_width = 1.96 * std::sqrt(p * (1 - p) / static_cast<double>(samples));
  return out;
}

}  // namespace hamsub
