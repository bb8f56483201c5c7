#pragma once

// Independent oracles and generators for the test suites. Nothing here calls
// the library's DP, canonical form or search code.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hamsub/graph.hpp"

namespace oracle {

using hamsub::Edge;
using hamsub::Graph;
using hamsub::Vertex;

using Matrix = std::vector<std::vector<char>>;

inline Matrix matrix(const Graph& g) {
  Matrix m(static_cast<std::size_t>(g.order()), std::vector<char>(static_cast<std::size_t>(g.order()), 0));
  for (auto [u, v] : g.edges()) m[u][v] = m[v][u] = 1;
  return m;
}

inline std::vector<Vertex> members(std::uint32_t s) {
  std::vector<Vertex> out;
  for (Vertex v = 0; s >> v; ++v)
    if ((s >> v) & 1U) out.push_back(v);
  return out;
}

// Backtracking from the first member; true when a spanning cycle closes.
inline bool hamiltonian_subset(const Matrix& a, const std::vector<Vertex>& s) {
  if (s.size() < 3) return false;
  std::vector<char> used(a.size(), 0);
  const Vertex root = s.front();
  std::function<bool(Vertex, std::size_t)> go = [&](Vertex v, std::size_t depth) {
    if (depth == s.size()) return static_cast<bool>(a[v][root]);
    for (Vertex w : s)
      if (!used[w] && a[v][w]) {
        used[w] = 1;
        if (go(w, depth + 1)) return true;
        used[w] = 0;
      }
    return false;
  };
  used[root] = 1;
  return go(root, 1);
}

inline std::uint64_t count_hamiltonian_subsets(const Graph& g) {
  const auto a = matrix(g);
  std::uint64_t c = 0;
  for (std::uint32_t s = 1; s < (1U << g.order()); ++s) c += hamiltonian_subset(a, members(s));
  return c;
}

// Subsets containing x and y with a spanning x,y-path.
inline std::uint64_t count_path_subsets(const Graph& g, Vertex x, Vertex y) {
  const auto a = matrix(g);
  std::uint64_t c = 0;
  for (std::uint32_t s = 1; s < (1U << g.order()); ++s) {
    if (!((s >> x) & 1U) || !((s >> y) & 1U)) continue;
    const auto m = members(s);
    std::vector<char> used(a.size(), 0);
    std::function<bool(Vertex, std::size_t)> go = [&](Vertex v, std::size_t depth) {
      if (depth == m.size()) return v == y;
      for (Vertex w : m)
        if (!used[w] && a[v][w] && (w != y || depth + 1 == m.size())) {
          used[w] = 1;
          if (go(w, depth + 1)) return true;
          used[w] = 0;
        }
      return false;
    };
    used[x] = 1;
    c += go(x, 1);
  }
  return c;
}

// Cycles as edge sets: closed walks from their smallest vertex, both
// directions, halved.
inline std::uint64_t count_cycles(const Graph& g) {
  const auto a = matrix(g);
  const int n = g.order();
  std::uint64_t twice = 0;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  for (Vertex root = 0; root < n; ++root) {
    std::function<void(Vertex, int)> go = [&](Vertex v, int len) {
      for (Vertex w = root + 1; w < n; ++w) {
        if (!a[v][w] || used[w]) continue;
        used[w] = 1;
        go(w, len + 1);
        used[w] = 0;
      }
      if (len >= 3 && a[v][root]) ++twice;
    };
    used[root] = 1;
    go(root, 1);
    used[root] = 0;
  }
  return twice / 2;
}

inline int longest_cycle_length(const Graph& g) {
  const auto a = matrix(g);
  int best = 0;
  for (std::uint32_t s = 1; s < (1U << g.order()); ++s) {
    const auto m = members(s);
    if (static_cast<int>(m.size()) > best && hamiltonian_subset(a, m)) best = static_cast<int>(m.size());
  }
  return best;
}

inline bool connected_without(const Matrix& a, std::uint32_t removed) {
  const int n = static_cast<int>(a.size());
  int start = -1, alive = 0;
  for (int v = 0; v < n; ++v)
    if (!((removed >> v) & 1U)) {
      ++alive;
      if (start < 0) start = v;
    }
  if (alive <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{start};
  seen[start] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w = 0; w < n; ++w)
      if (a[v][w] && !seen[w] && !((removed >> w) & 1U)) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
  }
  return reached == alive;
}

// Smallest vertex set whose removal disconnects g; n-1 for complete graphs.
inline int vertex_connectivity(const Graph& g) {
  const int n = g.order();
  const auto a = matrix(g);
  if (!connected_without(a, 0)) return 0;
  int best = std::max(n - 1, 0);
  for (std::uint32_t s = 1; s < (1U << n); ++s) {
    const int k = __builtin_popcount(s);
    if (k >= best || n - k < 2) continue;
    if (!connected_without(a, s)) best = k;
  }
  return best;
}

inline int component_count(const Matrix& a, std::uint32_t removed = 0) {
  const int n = static_cast<int>(a.size());
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  int comps = 0;
  for (int s = 0; s < n; ++s) {
    if (seen[s] || ((removed >> s) & 1U)) continue;
    ++comps;
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w = 0; w < n; ++w)
        if (a[v][w] && !seen[w] && !((removed >> w) & 1U)) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
  }
  return comps;
}

// graph6 written out directly from the format description.
inline std::string graph6(int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> a(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (auto [u, v] : edges) a[u][v] = a[v][u] = 1;
  std::string out;
  if (n <= 62) {
    out += static_cast<char>(63 + n);
  } else if (n <= 258047) {
    out += '~';
    for (int sh : {12, 6, 0}) out += static_cast<char>(63 + ((n >> sh) & 63));
  }
  std::vector<int> bits;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) bits.push_back(a[i][j]);
  while (bits.size() % 6) bits.push_back(0);
  for (std::size_t k = 0; k < bits.size(); k += 6) {
    int x = 0;
    for (int b = 0; b < 6; ++b) x = (x << 1) | bits[k + b];
    out += static_cast<char>(63 + x);
  }
  return out;
}

inline Graph random_graph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) e.emplace_back(u, v);
  return Graph(n, e);
}

inline Graph permuted(const Graph& g, std::mt19937_64& rng) {
  std::vector<Vertex> p(static_cast<std::size_t>(g.order()));
  for (Vertex v = 0; v < g.order(); ++v) p[v] = v;
  std::shuffle(p.begin(), p.end(), rng);
  std::vector<Edge> e;
  for (auto [u, v] : g.edges()) e.emplace_back(p[u], p[v]);
  return Graph(g.order(), e);
}

inline bool is_cycle_in(const Graph& g, const std::vector<Vertex>& c) {
  if (c.size() < 3) return false;
  auto s = c;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!g.adjacent(c[i], c[(i + 1) % c.size()])) return false;
  return true;
}

inline std::string data_file(const char* name) { return std::string(HAMSUB_TEST_DATA) + "/" + name; }

}  // namespace oracle
