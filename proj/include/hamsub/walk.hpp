#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hamsub/graph.hpp"
#include "hamsub/sun.hpp"

namespace hamsub {

enum class ShapeKind { cycle, path, sun };

inline const char* to_string(ShapeKind k) {
  switch (k) {
    case ShapeKind::cycle: return "cycle";
    case ShapeKind::path: return "path";
    case ShapeKind::sun: return "sun";
  }
  return "?";
}

// A cycle or path given by its vertex sequence in the host graph, or a sun.
struct Shape {
  ShapeKind kind = ShapeKind::cycle;
  std::vector<Vertex> sequence;  // cycle and path
  Sun sun;

  VertexSet vertices() const { return kind == ShapeKind::sun ? sun.vertices() : normalized(sequence); }
};

struct Walk {
  std::vector<Vertex> vertices;
  std::map<Vertex, long long> multiplicity;
};

inline Walk make_walk(std::vector<Vertex> seq) {
  Walk w;
  w.vertices = std::move(seq);
  for (Vertex v : w.vertices) ++w.multiplicity[v];
  return w;
}

inline Verdict validate_shape(const Shape& s, const Graph& g) {
  switch (s.kind) {
    case ShapeKind::cycle: {
      const auto& c = s.sequence;
      if (c.size() < 3) return Verdict::fail("cycle length");
      for (Vertex v : c)
        if (!detail::in_range(g, v)) return Verdict::fail("vertex range");
      if (!detail::all_distinct(c)) return Verdict::fail("cycle vertices distinct");
      for (std::size_t i = 0; i < c.size(); ++i)
        if (!g.adjacent(c[i], c[(i + 1) % c.size()])) return Verdict::fail("cycle edges");
      return Verdict::pass();
    }
    case ShapeKind::path: {
      const auto& p = s.sequence;
      if (p.size() < 2) return Verdict::fail("path length");
      for (Vertex v : p)
        if (!detail::in_range(g, v)) return Verdict::fail("vertex range");
      if (!detail::all_distinct(p)) return Verdict::fail("path simple");
      for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (!g.adjacent(p[i], p[i + 1])) return Verdict::fail("path edges");
      return Verdict::pass();
    }
    case ShapeKind::sun:
      return validate_sun(s.sun, g);
  }
  return Verdict::fail("shape kind");
}

// Closed walk R through every vertex of the shape, and the factor N applied
// to it: cycle R = (x_1..x_a), N = 2n; path R = (x_1..x_a, x_{a-1}..x_2),
// N = n; sun R = the cycle followed by the cycle with each x_i (i a ray
// index) replaced by y_i, N = n.
inline std::vector<Vertex> shape_circuit(const Shape& s) {
  switch (s.kind) {
    case ShapeKind::cycle:
      return s.sequence;
    case ShapeKind::path: {
      std::vector<Vertex> r = s.sequence;
      for (std::size_t i = s.sequence.size() - 1; i-- > 1;) r.push_back(s.sequence[i]);
      return r;
    }
    case ShapeKind::sun: {
      const auto& c = s.sun.cycle;
      const int a = s.sun.a();
      const int start = s.sun.ray_indices.empty() ? 0 : s.sun.ray_indices.front();
      std::vector<Vertex> r;
      for (int k = 0; k < a; ++k) r.push_back(c[(start + k) % a]);
      std::map<int, Vertex> ray_at;
      for (std::size_t j = 0; j < s.sun.rays.size(); ++j) ray_at[s.sun.ray_indices[j]] = s.sun.rays[j];
      for (int k = 0; k < a; ++k) {
        const int i = (start + k) % a;
        auto it = ray_at.find(i);
        r.push_back(it == ray_at.end() ? c[i] : it->second);
      }
      return r;
    }
  }
  return {};
}

// Class k of each vertex: the walk should visit it kn, kn+1 or kn+2 times.
inline std::map<Vertex, int> shape_classes(const Shape& s) {
  std::map<Vertex, int> cls;
  switch (s.kind) {
    case ShapeKind::cycle:
      for (Vertex v : s.sequence) cls[v] = 2;
      break;
    case ShapeKind::path:
      for (Vertex v : s.sequence) cls[v] = 2;
      cls[s.sequence.front()] = 1;
      cls[s.sequence.back()] = 1;
      break;
    case ShapeKind::sun: {
      for (Vertex v : s.sun.vertices()) cls[v] = 2;
      for (Vertex v : s.sun.corona()) cls[v] = 1;
      break;
    }
  }
  return cls;
}

// Concatenation (y_t..y_l)(y_1..y_l)^N(y_1..y_s), or with N-1 repetitions
// when s = t, over the circuit R; reversed when needed so it runs u -> v.
inline Walk build_walk(const Graph& g, const Shape& shape, Vertex u, Vertex v, int n) {
  if (n < 1) throw std::invalid_argument("build_walk: n must be >= 1");
  if (auto verdict = validate_shape(shape, g); !verdict.ok)
    throw std::invalid_argument("build_walk: shape invalid (" + verdict.clause + ")");
  const auto r = shape_circuit(shape);
  const int big_n = shape.kind == ShapeKind::cycle ? 2 * n : n;
  auto position = [&](Vertex x) {
    auto it = std::find(r.begin(), r.end(), x);
    if (it == r.end()) throw std::invalid_argument("build_walk: endpoint not in shape");
    return static_cast<std::size_t>(it - r.begin());
  };
  const std::size_t pu = position(u), pv = position(v);
  // The construction runs from y_t back around to y_s with s <= t.
  const std::size_t s = std::min(pu, pv), t = std::max(pu, pv);
  std::vector<Vertex> seq;
  for (std::size_t i = t; i < r.size(); ++i) seq.push_back(r[i]);
  const int reps = s < t ? big_n : big_n - 1;
  for (int k = 0; k < reps; ++k) seq.insert(seq.end(), r.begin(), r.end());
  for (std::size_t i = 0; i <= s; ++i) seq.push_back(r[i]);
  // seq runs from r[t] to r[s]; flip when u sits at the earlier position.
  if (pu <= pv) std::reverse(seq.begin(), seq.end());
  return make_walk(std::move(seq));
}

// Checks the walk against the host adjacency and the multiplicity windows.
inline Verdict check_walk(const Graph& g, const Shape& shape, const Walk& w, Vertex u, Vertex v, int n) {
  if (w.vertices.empty()) return Verdict::fail("walk nonempty");
  if (w.vertices.front() != u || w.vertices.back() != v) return Verdict::fail("walk endpoints");
  for (std::size_t i = 0; i + 1 < w.vertices.size(); ++i)
    if (!g.adjacent(w.vertices[i], w.vertices[i + 1])) return Verdict::fail("walk edges");
  long long total = 0;
  for (auto [x, m] : w.multiplicity) total += m;
  if (total != static_cast<long long>(w.vertices.size())) return Verdict::fail("multiplicity sum");
  for (auto [x, k] : shape_classes(shape)) {
    auto it = w.multiplicity.find(x);
    const long long m = it == w.multiplicity.end() ? 0 : it->second;
    const long long lo = static_cast<long long>(k) * n;
    if (m < lo || m > lo + 2)
      return Verdict::fail("multiplicity window", "vertex " + std::to_string(x) + " visited " + std::to_string(m) +
                                                      " times, class " + std::to_string(k));
  }
  for (auto [x, m] : w.multiplicity)
    if (!shape_classes(shape).count(x)) return Verdict::fail("walk stays in shape");
  return Verdict::pass();
}

}  // namespace hamsub
