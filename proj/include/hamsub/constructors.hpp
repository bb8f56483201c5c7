#pragma once

#include <stdexcept>
#include <vector>

#include "hamsub/graph.hpp"

namespace hamsub {

inline Graph complete(int n) {
  if (n < 1) throw std::invalid_argument("complete: n must be >= 1");
  std::vector<Edge> e;
  e.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph(n, e);
}

// Sides are 0..a-1 and a..a+b-1.
inline Graph complete_bipartite(int a, int b) {
  if (a < 1 || b < 1) throw std::invalid_argument("complete_bipartite: sides must be >= 1");
  std::vector<Edge> e;
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = 0; v < b; ++v) e.emplace_back(u, a + v);
  return Graph(a + b, e);
}

inline Graph cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle: n must be >= 3");
  std::vector<Edge> e;
  for (Vertex v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
  return Graph(n, e);
}

inline Graph path_graph(int n) {
  if (n < 1) throw std::invalid_argument("path_graph: n must be >= 1");
  std::vector<Edge> e;
  for (Vertex v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return Graph(n, e);
}

inline Graph star(int leaves) {
  std::vector<Edge> e;
  for (Vertex v = 1; v <= leaves; ++v) e.emplace_back(0, v);
  return Graph(leaves + 1, e);
}

inline Graph petersen() {
  std::vector<Edge> e;
  for (Vertex i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return Graph(10, e);
}

// g2's vertices follow g1's.
inline Graph disjoint_union(const Graph& g1, const Graph& g2) {
  auto e = g1.edges();
  for (auto [u, v] : g2.edges()) e.emplace_back(u + g1.order(), v + g1.order());
  return Graph(g1.order() + g2.order(), e);
}

// Identifies v1 of g1 with v2 of g2. The glued vertex keeps index v1; the
// remaining vertices of g2 are appended after g1's in their original order.
inline Graph glue_at_vertex(const Graph& g1, Vertex v1, const Graph& g2, Vertex v2) {
  if (v1 < 0 || v1 >= g1.order()) throw std::out_of_range("glue_at_vertex: v1 out of range");
  if (v2 < 0 || v2 >= g2.order()) throw std::out_of_range("glue_at_vertex: v2 out of range");
  std::vector<Vertex> map(static_cast<std::size_t>(g2.order()));
  Vertex next = g1.order();
  for (Vertex v = 0; v < g2.order(); ++v) map[v] = v == v2 ? v1 : next++;
  auto e = g1.edges();
  for (auto [u, v] : g2.edges()) e.emplace_back(map[u], map[v]);
  return Graph(g1.order() + g2.order() - 1, e);
}

// A chain of cliques glued one vertex at a time.
struct GlueSpec {
  struct Attachment {
    Vertex existing;  // vertex of the graph built so far
    Vertex incoming;  // vertex of the next clique
  };
  std::vector<int> cliques;              // clique orders; the first one is the seed
  std::vector<Attachment> attachments;  // attachments[i] glues cliques[i+1]
};

inline Graph build(const GlueSpec& spec) {
  if (spec.cliques.empty()) throw std::invalid_argument("GlueSpec: no cliques");
  if (spec.attachments.size() + 1 != spec.cliques.size())
    throw std::invalid_argument("GlueSpec: need exactly one attachment per additional clique");
  Graph g = complete(spec.cliques[0]);
  for (std::size_t i = 0; i < spec.attachments.size(); ++i)
    g = glue_at_vertex(g, spec.attachments[i].existing, complete(spec.cliques[i + 1]),
                       spec.attachments[i].incoming);
  return g;
}

// K_{d+1} glued to K_d at one vertex.
inline Graph clique_pair(int d) { return build({{d + 1, d}, {{0, 0}}}); }

// The four graphs of average degree exactly d built from one K_{d+1} and
// cliques of order d or d+1:
//   0: K_{d+1} + K_{d+1} (disjoint)
//   1: K_{d+1} with two K_d sharing one common vertex of it
//   2: chain K_{d+1} * K_d * K_d
//   3: chain K_d * K_{d+1} * K_d
inline std::vector<Graph> figure1_family(int d) {
  if (d < 2) throw std::invalid_argument("figure1_family: d must be >= 2");
  std::vector<Graph> out;
  out.push_back(disjoint_union(complete(d + 1), complete(d + 1)));
  out.push_back(build({{d + 1, d, d}, {{0, 0}, {0, 0}}}));
  // Second K_d hangs off a non-glued vertex of the first K_d (index d+1).
  out.push_back(build({{d + 1, d, d}, {{0, 0}, {d + 1, 0}}}));
  out.push_back(build({{d, d + 1, d}, {{0, 0}, {d, 0}}}));
  return out;
}

}  // namespace hamsub
