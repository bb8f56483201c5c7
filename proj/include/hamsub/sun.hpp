#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hamsub/classical.hpp"
#include "hamsub/graph.hpp"
#include "hamsub/numeric.hpp"

namespace hamsub {

// Outcome of a structural validator: the first violated clause, if any.
struct Verdict {
  bool ok = true;
  std::string clause;
  std::string detail;

  static Verdict pass() { return {}; }
  static Verdict fail(std::string clause, std::string detail = {}) {
    return {false, std::move(clause), std::move(detail)};
  }
};

// Cycle x_0..x_{a-1}; for each ray index i the ray y_i is adjacent to the two
// cycle neighbours x_{i-1}, x_{i+1} of x_i (indices mod a).
struct Sun {
  std::vector<Vertex> cycle;
  std::vector<int> ray_indices;  // increasing, 0-based positions on the cycle
  std::vector<Vertex> rays;      // rays[j] is y_{ray_indices[j]}

  int a() const { return static_cast<int>(cycle.size()); }
  int b() const { return static_cast<int>(rays.size()); }

  VertexSet corona() const {
    VertexSet c;
    for (std::size_t j = 0; j < rays.size(); ++j) {
      c.push_back(cycle[static_cast<std::size_t>(ray_indices[j])]);
      c.push_back(rays[j]);
    }
    return normalized(std::move(c));
  }

  VertexSet vertices() const { return normalized(set_union(normalized(cycle), normalized(rays))); }
};

inline int cyclic_distance(int i, int j, int a) {
  const int diff = std::abs(i - j) % a;
  return std::min(diff, a - diff);
}

namespace detail {

inline bool in_range(const Graph& g, Vertex v) { return v >= 0 && v < g.order(); }

inline bool all_distinct(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

}  // namespace detail

inline Verdict validate_sun(const Sun& s, const Graph& g) {
  const int a = s.a();
  if (a < 3) return Verdict::fail("cycle length", "a = " + std::to_string(a));
  for (Vertex v : s.cycle)
    if (!detail::in_range(g, v)) return Verdict::fail("vertex range");
  if (!detail::all_distinct(s.cycle)) return Verdict::fail("cycle vertices distinct");
  for (int i = 0; i < a; ++i)
    if (!g.adjacent(s.cycle[i], s.cycle[(i + 1) % a]))
      return Verdict::fail("cycle edges", "x" + std::to_string(i) + " x" + std::to_string((i + 1) % a));
  if (s.ray_indices.size() != s.rays.size()) return Verdict::fail("one ray per index");
  for (std::size_t j = 0; j < s.ray_indices.size(); ++j) {
    const int i = s.ray_indices[j];
    if (i < 0 || i >= a) return Verdict::fail("ray indices increasing", "index out of range");
    if (j > 0 && i <= s.ray_indices[j - 1]) return Verdict::fail("ray indices increasing");
  }
  const int b = s.b();
  for (int j = 1; j < b; ++j)
    if (s.ray_indices[j] - s.ray_indices[j - 1] < 2) return Verdict::fail("ray spacing");
  if (b >= 2 && s.ray_indices.front() + a - s.ray_indices.back() < 2) return Verdict::fail("ray spacing", "wrap-around");
  if (2 * b > a) return Verdict::fail("ray count", "b > a/2");
  for (Vertex y : s.rays) {
    if (!detail::in_range(g, y)) return Verdict::fail("vertex range");
    if (std::find(s.cycle.begin(), s.cycle.end(), y) != s.cycle.end()) return Verdict::fail("rays off cycle");
  }
  if (!detail::all_distinct(s.rays)) return Verdict::fail("rays off cycle", "repeated ray");
  for (int j = 0; j < b; ++j) {
    const int i = s.ray_indices[j];
    const Vertex prev = s.cycle[(i + a - 1) % a], next = s.cycle[(i + 1) % a];
    if (!g.adjacent(s.rays[j], prev) || !g.adjacent(s.rays[j], next))
      return Verdict::fail("ray edges", "ray at index " + std::to_string(i));
  }
  return Verdict::pass();
}

// For each candidate z in order, picks the smallest cycle index i with both
// cycle neighbours of x_i adjacent to z and cyclic distance >= 2 from every
// index already used. Stops after `target` rays.
inline Sun grow_sun(const Graph& g, const std::vector<Vertex>& cycle, const std::vector<Vertex>& candidates,
                    int target) {
  const int a = static_cast<int>(cycle.size());
  Sun s;
  s.cycle = cycle;
  std::vector<std::pair<int, Vertex>> picked;
  for (Vertex z : candidates) {
    if (static_cast<int>(picked.size()) >= target) break;
    if (std::find(cycle.begin(), cycle.end(), z) != cycle.end()) continue;
    for (int i = 0; i < a; ++i) {
      if (!g.adjacent(z, cycle[(i + a - 1) % a]) || !g.adjacent(z, cycle[(i + 1) % a])) continue;
      bool spaced = true;
      for (auto [j, y] : picked)
        if (cyclic_distance(i, j, a) < 2) {
          spaced = false;
          break;
        }
      if (!spaced) continue;
      picked.emplace_back(i, z);
      break;
    }
  }
  std::sort(picked.begin(), picked.end());
  for (auto [i, z] : picked) {
    s.ray_indices.push_back(i);
    s.rays.push_back(z);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Two cycles, a long path, or a sun

enum class StructureKind { two_cycles, long_path, sun };

inline const char* to_string(StructureKind k) {
  switch (k) {
    case StructureKind::two_cycles: return "two_cycles";
    case StructureKind::long_path: return "long_path";
    case StructureKind::sun: return "sun";
  }
  return "?";
}

struct StructureWitness {
  StructureKind kind = StructureKind::long_path;
  std::vector<Vertex> cycle1, cycle2;  // two_cycles
  std::vector<Vertex> path;            // long_path
  Sun sun;                             // sun
};

struct StructureReport {
  bool hypotheses_ok = false;
  std::vector<std::string> unmet;  // hypotheses that failed
  std::optional<StructureWitness> witness;
  std::string note;                // which branch of the argument produced the outcome
};

// |C1| + |C2| >= 1.8 d, |P| >= 1.01 d, or a >= d and b >= d/20.
inline bool meets_threshold(const StructureWitness& w, const Rational& d) {
  switch (w.kind) {
    case StructureKind::two_cycles:
      return Rational(static_cast<long long>(w.cycle1.size() + w.cycle2.size())) >= Rational(9, 5) * d;
    case StructureKind::long_path:
      return Rational(static_cast<long long>(w.path.size())) >= Rational(101, 100) * d;
    case StructureKind::sun:
      return Rational(w.sun.a()) >= d && Rational(w.sun.b()) >= d / 20;
  }
  return false;
}

inline Verdict validate_witness(const StructureWitness& w, const Graph& g, const Rational& d) {
  auto check_cycle = [&](const std::vector<Vertex>& c, const char* name) -> Verdict {
    if (c.size() < 3) return Verdict::fail(std::string(name) + " length");
    for (Vertex v : c)
      if (!detail::in_range(g, v)) return Verdict::fail("vertex range");
    if (!detail::all_distinct(c)) return Verdict::fail(std::string(name) + " simple");
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!g.adjacent(c[i], c[(i + 1) % c.size()])) return Verdict::fail(std::string(name) + " edges");
    return Verdict::pass();
  };
  switch (w.kind) {
    case StructureKind::two_cycles: {
      if (auto v = check_cycle(w.cycle1, "first cycle"); !v.ok) return v;
      if (auto v = check_cycle(w.cycle2, "second cycle"); !v.ok) return v;
      if (!set_intersection(normalized(w.cycle1), normalized(w.cycle2)).empty())
        return Verdict::fail("cycles disjoint");
      break;
    }
    case StructureKind::long_path: {
      for (Vertex v : w.path)
        if (!detail::in_range(g, v)) return Verdict::fail("vertex range");
      if (!detail::all_distinct(w.path)) return Verdict::fail("path simple");
      for (std::size_t i = 0; i + 1 < w.path.size(); ++i)
        if (!g.adjacent(w.path[i], w.path[i + 1])) return Verdict::fail("path edges");
      break;
    }
    case StructureKind::sun:
      if (auto v = validate_sun(w.sun, g); !v.ok) return v;
      break;
  }
  if (!meets_threshold(w, d)) return Verdict::fail("threshold");
  return Verdict::pass();
}

namespace detail {

inline std::vector<Vertex> lift(const std::vector<Vertex>& local, const std::vector<Vertex>& to_parent) {
  std::vector<Vertex> out;
  out.reserve(local.size());
  for (Vertex v : local) out.push_back(to_parent[v]);
  return out;
}

// Longest cycle of g[keep], in g's labels.
inline std::vector<Vertex> longest_cycle_in(const Graph& g, const VertexSet& keep) {
  auto sub = induced_subgraph(g, keep);
  return lift(longest_cycle(sub.graph), sub.to_parent);
}

// Cycle rotated so that it ends at `last`.
inline std::vector<Vertex> rotate_to_end(std::vector<Vertex> c, Vertex last) {
  auto it = std::find(c.begin(), c.end(), last);
  std::rotate(c.begin(), it + 1, c.end());
  return c;
}

}  // namespace detail

// Case analysis on the densest component H: two cycles when the rest is
// dense or large, then a longest cycle C of H, a second cycle in H - C
// joined to C by a path, or a sun grown from the vertices of H - C with few
// neighbours off C.
inline StructureReport find_structure(const Graph& g, const Rational& d) {
  detail::require_cap(g, kDeskCap, "find_structure");
  StructureReport rep;
  if (g.order() == 0) {
    rep.unmet.push_back("nonempty graph");
    return rep;
  }
  const auto stats = degree_stats(g);
  if (Rational(g.order()) < Rational(118, 100) * d) rep.unmet.push_back("n >= 1.18 d");
  if (stats.average < d) rep.unmet.push_back("d(G) >= d");
  if (Rational(2 * stats.min) < d) rep.unmet.push_back("delta(G) >= d/2");
  rep.hypotheses_ok = rep.unmet.empty();

  auto comps = components(g);
  std::size_t best = 0;
  Rational best_d = -1;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const Rational di = average_degree(induced_subgraph(g, comps[i]).graph);
    if (di > best_d) {
      best_d = di;
      best = i;
    }
  }
  const VertexSet h_vertices = comps[best];
  const VertexSet rest = set_difference(
      [&] {
        VertexSet all(static_cast<std::size_t>(g.order()));
        for (Vertex v = 0; v < g.order(); ++v) all[v] = v;
        return all;
      }(),
      h_vertices);
  const Rational d1 = best_d;
  const Rational d2 = rest.empty() ? Rational(0) : average_degree(induced_subgraph(g, rest).graph);
  const auto n = static_cast<long long>(g.order());
  const auto n1 = static_cast<long long>(h_vertices.size());

  auto try_two_cycles = [&](const char* why) -> bool {
    StructureWitness w;
    w.kind = StructureKind::two_cycles;
    w.cycle1 = detail::longest_cycle_in(g, h_vertices);
    w.cycle2 = detail::longest_cycle_in(g, rest);
    rep.note = why;
    if (w.cycle1.size() >= 3 && w.cycle2.size() >= 3 && meets_threshold(w, d)) {
      rep.witness = std::move(w);
      return true;
    }
    return false;
  };

  if (!rest.empty() && d2 >= d && try_two_cycles("rest of the graph is dense")) return rep;

  const auto c = detail::longest_cycle_in(g, h_vertices);
  if (d1 >= Rational(101, 100) * d) {
    StructureWitness w;
    w.kind = StructureKind::long_path;
    w.path = c;
    rep.note = "dense component";
    if (meets_threshold(w, d)) {
      rep.witness = std::move(w);
      return rep;
    }
  }
  if (!rest.empty() && Rational(n, n1) >= Rational(22, 21) && try_two_cycles("large remainder")) return rep;

  if (Rational(static_cast<long long>(c.size())) >= Rational(101, 100) * d) {
    StructureWitness w;
    w.kind = StructureKind::long_path;
    w.path = c;
    rep.note = "long longest cycle";
    rep.witness = std::move(w);
    return rep;
  }

  const VertexSet u = set_difference(h_vertices, normalized(c));
  if (!u.empty() && c.size() >= 3) {
    const auto hu = induced_subgraph(g, u);
    const Rational du = average_degree(hu.graph);
    if (du >= d1 / 100) {
      const auto c2 = detail::lift(longest_cycle(hu.graph), hu.to_parent);
      if (c2.size() >= 3) {
        const auto link = shortest_path(g, normalized(c), normalized(c2));
        if (!link.empty()) {
          StructureWitness w;
          w.kind = StructureKind::long_path;
          w.path = detail::rotate_to_end(c, link.front());
          w.path.insert(w.path.end(), link.begin() + 1, link.end() - 1);
          auto second = detail::rotate_to_end(c2, link.back());
          std::rotate(second.begin(), second.end() - 1, second.end());
          w.path.insert(w.path.end(), second.begin(), second.end());
          rep.note = "second cycle off the longest cycle";
          if (meets_threshold(w, d)) {
            rep.witness = std::move(w);
            return rep;
          }
        }
      }
    }
    std::vector<Vertex> low;
    for (std::size_t j = 0; j < u.size(); ++j)
      if (Rational(hu.graph.degree(static_cast<Vertex>(j))) <= d1 / 40) low.push_back(u[j]);
    const int target = static_cast<int>(floor_nonneg(d1 / 20)) + 1;
    StructureWitness w;
    w.kind = StructureKind::sun;
    w.sun = grow_sun(g, c, low, std::max(target, static_cast<int>(low.size())));
    rep.note = "sun";
    if (meets_threshold(w, d)) {
      rep.witness = std::move(w);
      return rep;
    }
  }
  rep.note = "no witness found";
  return rep;
}

}  // namespace hamsub
