#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hamsub/numeric.hpp"

namespace hamsub {

using Vertex = int;
// Vertex sets are sorted, duplicate-free index lists.
using VertexSet = std::vector<Vertex>;
using Edge = std::pair<Vertex, Vertex>;

inline VertexSet normalized(VertexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline bool contains(const VertexSet& s, Vertex v) {
  return std::binary_search(s.begin(), s.end(), v);
}

inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Immutable simple undirected graph on vertices 0..n-1.
//
// Adjacency is kept as sorted neighbour lists for every order, plus one
// 64-bit row per vertex when n <= 64 so that subset dynamic programs can
// work word-parallel.
class Graph {
 public:
  static constexpr int kRowBits = 64;

  Graph() = default;
  explicit Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n)) {
    if (n < 0) throw std::invalid_argument("graph order must be nonnegative");
    build_rows();
  }

  // Duplicate edges are merged; self-loops and out-of-range endpoints throw.
  Graph(int n, std::span<const Edge> edges) : Graph(n) {
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || u >= n || v >= n)
        throw std::out_of_range("edge endpoint out of range");
      if (u == v) throw std::invalid_argument("self-loops are not allowed");
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    for (auto& row : adj_) {
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
      m_ += row.size();
    }
    m_ /= 2;
    build_rows();
  }

  Graph(int n, std::initializer_list<Edge> edges)
      : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  int order() const noexcept { return n_; }
  std::size_t size() const noexcept { return m_; }
  bool empty() const noexcept { return n_ == 0; }

  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

  bool adjacent(Vertex u, Vertex v) const {
    if (has_rows()) return (rows_[u] >> v) & 1U;
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    Vertex other = &a == &adj_[u] ? v : u;
    return std::binary_search(a.begin(), a.end(), other);
  }

  bool has_rows() const noexcept { return n_ <= kRowBits; }
  // Neighbourhood of v as a bit mask; only valid when has_rows().
  std::uint64_t row(Vertex v) const { return rows_[v]; }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  std::vector<int> degrees() const {
    std::vector<int> d(static_cast<std::size_t>(n_));
    for (Vertex v = 0; v < n_; ++v) d[v] = degree(v);
    return d;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_;
  }

 private:
  void build_rows() {
    rows_.clear();
    if (!has_rows()) return;
    rows_.assign(static_cast<std::size_t>(n_), 0);
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v : adj_[u]) rows_[u] |= std::uint64_t{1} << v;
  }

  int n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint64_t> rows_;
};

// ---------------------------------------------------------------------------
// graph6

class Graph6Error : public std::runtime_error {
 public:
  Graph6Error(const std::string& what, std::size_t offset)
      : std::runtime_error("graph6: " + what + " at byte " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

inline constexpr int kGraph6MaxOrder = 1 << 18;

inline Graph from_graph6(std::string_view text) {
  std::size_t base = 0;
  constexpr std::string_view kHeader = ">>graph6<<";
  if (text.starts_with(kHeader)) base = kHeader.size();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);

  auto sextet = [&](std::size_t pos) -> std::uint32_t {
    if (pos >= text.size()) throw Graph6Error("truncated record", pos);
    auto c = static_cast<unsigned char>(text[pos]);
    if (c < 63 || c > 126) throw Graph6Error("character out of range", pos);
    return c - 63U;
  };

  std::size_t pos = base;
  if (pos >= text.size()) throw Graph6Error("empty record", pos);
  std::uint64_t n = sextet(pos);
  if (n < 63) {
    pos += 1;
  } else {
    if (pos + 1 < text.size() && static_cast<unsigned char>(text[pos + 1]) == 126) {
      n = 0;
      for (int i = 0; i < 6; ++i) n = (n << 6) | sextet(pos + 2 + i);
      pos += 8;
    } else {
      n = 0;
      for (int i = 0; i < 3; ++i) n = (n << 6) | sextet(pos + 1 + i);
      pos += 4;
    }
  }
  if (n > static_cast<std::uint64_t>(kGraph6MaxOrder))
    throw Graph6Error("order " + std::to_string(n) + " exceeds supported maximum", base);

  const std::uint64_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::uint64_t body = (bits + 5) / 6;
  if (text.size() - pos < body) throw Graph6Error("truncated bit body", text.size());
  if (text.size() - pos > body) throw Graph6Error("trailing data after bit body", pos + body);

  // Column-major upper triangle: (0,1),(0,2),(1,2),(0,3),...
  std::vector<Edge> edges;
  std::uint64_t k = 0, i = 0, j = 1;
  for (std::uint64_t b = 0; b < body; ++b) {
    std::uint32_t s = sextet(pos + b);
    for (int bit = 5; bit >= 0 && k < bits; --bit, ++k) {
      if ((s >> bit) & 1U) edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
      if (++i == j) {
        ++j;
        i = 0;
      }
    }
  }
  return Graph(static_cast<int>(n), edges);
}

inline std::string to_graph6(const Graph& g) {
  std::string out;
  const auto n = static_cast<std::uint64_t>(g.order());
  if (n < 63) {
    out.push_back(static_cast<char>(63 + n));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int i = 2; i >= 0; --i) out.push_back(static_cast<char>(63 + ((n >> (6 * i)) & 63)));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int i = 5; i >= 0; --i) out.push_back(static_cast<char>(63 + ((n >> (6 * i)) & 63)));
  }
  std::uint32_t acc = 0;
  int filled = 0;
  for (std::uint64_t j = 1; j < n; ++j) {
    for (std::uint64_t i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(static_cast<Vertex>(i), static_cast<Vertex>(j)) ? 1U : 0U);
      if (++filled == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>(63 + (acc << (6 - filled))));
  return out;
}

// ---------------------------------------------------------------------------
// Degree statistics

struct DegreeStats {
  Rational average;  // 2e/n, exact
  int min = 0;
  int second_min = 0;  // second entry of the sorted degree sequence
  int max = 0;
  std::size_t edges = 0;
};

inline DegreeStats degree_stats(const Graph& g) {
  if (g.order() == 0) throw std::invalid_argument("degree_stats: empty graph");
  auto d = g.degrees();
  std::sort(d.begin(), d.end());
  DegreeStats s;
  s.edges = g.size();
  s.average = Rational(2 * static_cast<std::int64_t>(g.size()), g.order());
  s.min = d.front();
  s.second_min = d.size() > 1 ? d[1] : d[0];
  s.max = d.back();
  return s;
}

inline Rational average_degree(const Graph& g) {
  if (g.order() == 0) return 0;
  return Rational(2 * static_cast<std::int64_t>(g.size()), g.order());
}

// ---------------------------------------------------------------------------
// Induced subgraphs

struct Induced {
  Graph graph;
  std::vector<Vertex> to_parent;  // local index -> parent index
};

inline Induced induced_subgraph(const Graph& g, const VertexSet& keep) {
  std::vector<Vertex> local(static_cast<std::size_t>(g.order()), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= g.order()) throw std::out_of_range("induced_subgraph: vertex out of range");
    local[keep[i]] = static_cast<Vertex>(i);
  }
  std::vector<Edge> edges;
  for (Vertex u : keep)
    for (Vertex v : g.neighbors(u))
      if (local[v] >= 0 && u < v) edges.emplace_back(local[u], local[v]);
  return {Graph(static_cast<int>(keep.size()), edges), keep};
}

inline Induced remove_vertices(const Graph& g, const VertexSet& drop) {
  VertexSet keep;
  keep.reserve(static_cast<std::size_t>(g.order()));
  std::vector<char> gone(static_cast<std::size_t>(g.order()), 0);
  for (Vertex v : drop) gone[v] = 1;
  for (Vertex v = 0; v < g.order(); ++v)
    if (!gone[v]) keep.push_back(v);
  return induced_subgraph(g, keep);
}

inline Graph induced_by_mask(const Graph& g, std::uint64_t mask) {
  VertexSet keep;
  for (std::uint64_t m = mask; m; m &= m - 1) keep.push_back(std::countr_zero(m));
  return induced_subgraph(g, keep).graph;
}

// ---------------------------------------------------------------------------
// Traversal

inline constexpr int kUnreached = std::numeric_limits<int>::max();

// Multi-source BFS. Vertices flagged in `blocked` are never entered (sources
// are still used even if blocked). Stops expanding beyond `max_radius`.
inline std::vector<int> bfs_distances(const Graph& g, const VertexSet& sources,
                                      const std::vector<char>* blocked = nullptr,
                                      int max_radius = kUnreached) {
  std::vector<int> dist(static_cast<std::size_t>(g.order()), kUnreached);
  std::vector<Vertex> frontier;
  for (Vertex s : sources) {
    if (dist[s] == kUnreached) {
      dist[s] = 0;
      frontier.push_back(s);
    }
  }
  std::size_t head = 0;
  while (head < frontier.size()) {
    Vertex u = frontier[head++];
    if (dist[u] >= max_radius) continue;
    for (Vertex v : g.neighbors(u)) {
      if (dist[v] != kUnreached) continue;
      if (blocked && (*blocked)[v]) continue;
      dist[v] = dist[u] + 1;
      frontier.push_back(v);
    }
  }
  return dist;
}

// Shortest path from any vertex of `from` to any vertex of `to`, avoiding
// `blocked` vertices (endpoints included). Lowest-index tie-breaking: sources
// are seeded in increasing order and neighbour lists are sorted.
inline std::vector<Vertex> shortest_path(const Graph& g, const VertexSet& from, const VertexSet& to,
                                         const std::vector<char>* blocked = nullptr,
                                         int max_length = kUnreached) {
  const auto n = static_cast<std::size_t>(g.order());
  std::vector<char> target(n, 0);
  for (Vertex v : to)
    if (!blocked || !(*blocked)[v]) target[v] = 1;
  std::vector<Vertex> parent(n, -2);
  std::vector<int> dist(n, kUnreached);
  std::vector<Vertex> queue;
  for (Vertex s : from) {
    if (blocked && (*blocked)[s]) continue;
    if (parent[s] != -2) continue;
    parent[s] = -1;
    dist[s] = 0;
    queue.push_back(s);
  }
  std::size_t head = 0;
  Vertex hit = -1;
  for (Vertex s : queue)
    if (target[s]) {
      hit = s;
      break;
    }
  while (hit < 0 && head < queue.size()) {
    Vertex u = queue[head++];
    if (dist[u] >= max_length) continue;
    for (Vertex v : g.neighbors(u)) {
      if (parent[v] != -2) continue;
      if (blocked && (*blocked)[v]) continue;
      parent[v] = u;
      dist[v] = dist[u] + 1;
      if (target[v]) {
        hit = v;
        break;
      }
      queue.push_back(v);
    }
  }
  std::vector<Vertex> path;
  if (hit < 0) return path;
  for (Vertex v = hit; v >= 0; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

inline std::vector<VertexSet> components(const Graph& g) {
  std::vector<int> comp(static_cast<std::size_t>(g.order()), -1);
  std::vector<VertexSet> out;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (comp[s] >= 0) continue;
    VertexSet c{s};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t i = 0; i < c.size(); ++i)
      for (Vertex v : g.neighbors(c[i]))
        if (comp[v] < 0) {
          comp[v] = comp[s];
          c.push_back(v);
        }
    std::sort(c.begin(), c.end());
    out.push_back(std::move(c));
  }
  return out;
}

inline bool is_connected(const Graph& g) { return g.order() <= 1 || components(g).size() == 1; }

// ---------------------------------------------------------------------------
// Balls

struct Ball {
  VertexSet center_set;
  int radius = 0;
  VertexSet members;  // distance <= radius
  VertexSet sphere;   // distance == radius
};

inline Ball ball(const Graph& g, VertexSet center, int radius,
                 const std::vector<char>* blocked = nullptr) {
  center = normalized(std::move(center));
  if (center.empty()) throw std::invalid_argument("ball: empty centre set");
  if (radius < 0) throw std::invalid_argument("ball: negative radius");
  for (Vertex v : center)
    if (v < 0 || v >= g.order()) throw std::out_of_range("ball: centre vertex out of range");
  auto dist = bfs_distances(g, center, blocked, radius);
  Ball b;
  b.center_set = center;
  b.radius = radius;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (dist[v] <= radius) b.members.push_back(v);
    if (dist[v] == radius) b.sphere.push_back(v);
  }
  return b;
}

// ---------------------------------------------------------------------------
// Blocks

struct BlockDecomposition {
  std::vector<VertexSet> blocks;
  VertexSet cut_vertices;
  // Block-cut forest: nodes 0..B-1 are blocks, B+i is cut_vertices[i].
  std::vector<std::vector<int>> block_graph;
  std::vector<int> leaf_blocks;  // blocks containing exactly one cut vertex
  VertexSet isolated;
};

// Iterative lowpoint DFS; blocks partition the edge set.
inline BlockDecomposition blocks(const Graph& g) {
  const int n = g.order();
  BlockDecomposition out;
  std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  std::vector<char> is_cut(static_cast<std::size_t>(n), 0);
  std::vector<Edge> edge_stack;
  int timer = 0;

  struct Frame {
    Vertex v;
    Vertex parent;
    std::size_t next;
  };

  for (Vertex root = 0; root < n; ++root) {
    if (disc[root] >= 0) continue;
    if (g.degree(root) == 0) {
      disc[root] = timer++;
      out.isolated.push_back(root);
      continue;
    }
    int root_children = 0;
    std::vector<Frame> stack{{root, -1, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& nb = g.neighbors(f.v);
      if (f.next < nb.size()) {
        Vertex w = nb[f.next++];
        if (disc[w] < 0) {
          edge_stack.emplace_back(f.v, w);
          disc[w] = low[w] = timer++;
          if (f.v == root) ++root_children;
          stack.push_back({w, f.v, 0});
        } else if (w != f.parent && disc[w] < disc[f.v]) {
          edge_stack.emplace_back(f.v, w);
          low[f.v] = std::min(low[f.v], disc[w]);
        }
        continue;
      }
      Vertex v = f.v, p = f.parent;
      stack.pop_back();
      if (p < 0) continue;
      low[p] = std::min(low[p], low[v]);
      if (low[v] >= disc[p]) {
        if (p != root) is_cut[p] = 1;
        VertexSet blk;
        while (!edge_stack.empty()) {
          Edge e = edge_stack.back();
          edge_stack.pop_back();
          blk.push_back(e.first);
          blk.push_back(e.second);
          if (e == Edge{p, v}) break;
        }
        out.blocks.push_back(normalized(std::move(blk)));
      }
    }
    if (root_children > 1) is_cut[root] = 1;
  }

  for (Vertex v = 0; v < n; ++v)
    if (is_cut[v]) out.cut_vertices.push_back(v);
  const int nb = static_cast<int>(out.blocks.size());
  out.block_graph.assign(static_cast<std::size_t>(nb) + out.cut_vertices.size(), {});
  for (int b = 0; b < nb; ++b) {
    int cuts = 0;
    for (std::size_t c = 0; c < out.cut_vertices.size(); ++c) {
      if (contains(out.blocks[b], out.cut_vertices[c])) {
        const int node = nb + static_cast<int>(c);
        out.block_graph[b].push_back(node);
        out.block_graph[node].push_back(b);
        ++cuts;
      }
    }
    if (cuts == 1) out.leaf_blocks.push_back(b);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Vertex connectivity

namespace detail {

// Unit vertex-capacity max flow between non-adjacent s and t, stopping once
// `limit` disjoint paths are found.
inline int local_connectivity(const Graph& g, Vertex s, Vertex t, int limit) {
  const int n = g.order();
  // Split node v into in = 2v, out = 2v+1. Residual capacities in a map-free
  // adjacency: arcs stored in flat arrays.
  struct Arc {
    int to;
    int cap;
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> out(static_cast<std::size_t>(2 * n));
  auto add = [&](int a, int b, int cap) {
    out[a].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({b, cap});
    out[b].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({a, 0});
  };
  const int big = n + 1;
  for (Vertex v = 0; v < n; ++v) add(2 * v, 2 * v + 1, (v == s || v == t) ? big : 1);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v : g.neighbors(u)) add(2 * u + 1, 2 * v, 1);

  const int source = 2 * s + 1, sink = 2 * t;
  int flow = 0;
  std::vector<int> via(static_cast<std::size_t>(2 * n));
  while (flow < limit) {
    std::fill(via.begin(), via.end(), -1);
    std::vector<int> queue{source};
    via[source] = -2;
    for (std::size_t h = 0; h < queue.size() && via[sink] == -1; ++h) {
      int x = queue[h];
      for (int a : out[x]) {
        if (arcs[a].cap > 0 && via[arcs[a].to] == -1) {
          via[arcs[a].to] = a;
          queue.push_back(arcs[a].to);
        }
      }
    }
    if (via[sink] == -1) break;
    for (int x = sink; x != source;) {
      int a = via[x];
      arcs[a].cap -= 1;
      arcs[a ^ 1].cap += 1;
      x = arcs[a ^ 1].to;
    }
    ++flow;
  }
  return flow;
}

}  // namespace detail

// Size of a minimum vertex cut (n-1 for complete graphs).
inline int vertex_connectivity(const Graph& g) {
  const int n = g.order();
  if (n < 2) throw std::invalid_argument("vertex_connectivity: needs at least 2 vertices");
  if (g.size() == static_cast<std::size_t>(n) * (n - 1) / 2) return n - 1;
  if (!is_connected(g)) return 0;
  // Esfahanian-Hakimi: a minimum-degree vertex v is either outside some
  // minimum cut (then pair it with a non-neighbour) or inside it (then two
  // of its non-adjacent neighbours are separated).
  Vertex v = 0;
  for (Vertex u = 1; u < n; ++u)
    if (g.degree(u) < g.degree(v)) v = u;
  int best = g.degree(v);
  for (Vertex w = 0; w < n && best > 0; ++w)
    if (w != v && !g.adjacent(v, w)) best = std::min(best, detail::local_connectivity(g, v, w, best));
  const auto& nb = g.neighbors(v);
  for (std::size_t i = 0; i < nb.size(); ++i)
    for (std::size_t j = i + 1; j < nb.size(); ++j)
      if (!g.adjacent(nb[i], nb[j]))
        best = std::min(best, detail::local_connectivity(g, nb[i], nb[j], best));
  return best;
}

}  // namespace hamsub
