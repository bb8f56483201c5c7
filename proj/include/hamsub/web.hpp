#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "hamsub/graph.hpp"
#include "hamsub/sun.hpp"

namespace hamsub {

struct Star {
  Vertex centre = 0;
  std::vector<Vertex> leaves;
};

// Core u joined by internally disjoint paths to branch vertices x_i, each
// carrying a star S(x_i).
struct Unit {
  int h1 = 0, h2 = 0, h3 = 0;
  Vertex core = 0;
  std::vector<Vertex> branches;
  std::vector<std::vector<Vertex>> paths;  // paths[i] runs core -> branches[i]
  std::vector<Star> stars;                 // stars[i].centre == branches[i]

  VertexSet exterior() const {
    VertexSet e;
    for (const auto& s : stars) e.insert(e.end(), s.leaves.begin(), s.leaves.end());
    return normalized(std::move(e));
  }
  VertexSet vertices() const {
    VertexSet v{core};
    for (const auto& p : paths) v.insert(v.end(), p.begin(), p.end());
    for (const auto& s : stars) {
      v.push_back(s.centre);
      v.insert(v.end(), s.leaves.begin(), s.leaves.end());
    }
    return normalized(std::move(v));
  }
  VertexSet interior() const { return set_difference(vertices(), exterior()); }

  // The core -> w path through the unit, for w in the exterior; empty otherwise.
  std::vector<Vertex> path_to(Vertex w) const {
    for (std::size_t i = 0; i < stars.size(); ++i)
      if (std::find(stars[i].leaves.begin(), stars[i].leaves.end(), w) != stars[i].leaves.end()) {
        auto p = paths[i];
        p.push_back(w);
        return p;
      }
    return {};
  }
};

// Core v joined by internally disjoint spokes to the cores of disjoint units.
struct Web {
  int h0 = 0, h1 = 0, h2 = 0, h3 = 0;
  Vertex core = 0;
  std::vector<std::vector<Vertex>> spokes;  // spokes[i] runs core -> units[i].core
  std::vector<Unit> units;

  VertexSet exterior() const {
    VertexSet e;
    for (const auto& u : units) {
      auto x = u.exterior();
      e.insert(e.end(), x.begin(), x.end());
    }
    return normalized(std::move(e));
  }
  VertexSet vertices() const {
    VertexSet v{core};
    for (const auto& s : spokes) v.insert(v.end(), s.begin(), s.end());
    for (const auto& u : units) {
      auto x = u.vertices();
      v.insert(v.end(), x.begin(), x.end());
    }
    return normalized(std::move(v));
  }
  VertexSet interior() const { return set_difference(vertices(), exterior()); }
  VertexSet centre() const {
    VertexSet c;
    for (const auto& s : spokes) c.insert(c.end(), s.begin(), s.end());
    return normalized(std::move(c));
  }

  std::vector<Vertex> path_to(Vertex w) const {
    for (std::size_t i = 0; i < units.size(); ++i) {
      auto tail = units[i].path_to(w);
      if (tail.empty()) continue;
      auto p = spokes[i];
      p.insert(p.end(), tail.begin() + 1, tail.end());
      return p;
    }
    return {};
  }

  // Longest core -> exterior path, in edges.
  int depth() const {
    int best = 0;
    for (std::size_t i = 0; i < units.size(); ++i)
      for (const auto& p : units[i].paths)
        best = std::max(best, static_cast<int>(spokes[i].size() + p.size()) - 1);
    return best;
  }
};

// ---------------------------------------------------------------------------
// Validators

namespace detail {

inline Verdict check_path(const Graph& g, const std::vector<Vertex>& p, Vertex from, Vertex to, int max_len,
                          const std::string& what) {
  for (Vertex v : p)
    if (!in_range(g, v)) return Verdict::fail("vertex range");
  if (p.empty() || p.front() != from || p.back() != to) return Verdict::fail(what + " endpoints");
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (!g.adjacent(p[i], p[i + 1])) return Verdict::fail(what + " edges");
  if (!all_distinct(p)) return Verdict::fail(what + " simple");
  if (static_cast<int>(p.size()) - 1 > max_len) return Verdict::fail(what + " length");
  return Verdict::pass();
}

}  // namespace detail

inline Verdict validate_unit(const Unit& u, const Graph& g) {
  if (!detail::in_range(g, u.core)) return Verdict::fail("vertex range");
  if (static_cast<int>(u.branches.size()) != u.h1 || u.paths.size() != u.branches.size() ||
      u.stars.size() != u.branches.size())
    return Verdict::fail("branch count");
  {
    std::vector<Vertex> heads{u.core};
    heads.insert(heads.end(), u.branches.begin(), u.branches.end());
    if (!detail::all_distinct(heads)) return Verdict::fail("core and branches distinct");
  }
  for (std::size_t i = 0; i < u.paths.size(); ++i)
    if (auto v = detail::check_path(g, u.paths[i], u.core, u.branches[i], u.h3, "path"); !v.ok) return v;
  {
    std::vector<Vertex> off_core;
    for (const auto& p : u.paths) off_core.insert(off_core.end(), p.begin() + 1, p.end());
    if (!detail::all_distinct(off_core)) return Verdict::fail("paths internally disjoint");
  }
  VertexSet on_paths;
  for (const auto& p : u.paths) on_paths.insert(on_paths.end(), p.begin(), p.end());
  on_paths = normalized(on_paths);
  std::vector<Vertex> star_vertices;
  for (std::size_t i = 0; i < u.stars.size(); ++i) {
    const auto& s = u.stars[i];
    if (s.centre != u.branches[i]) return Verdict::fail("star centres");
    if (static_cast<int>(s.leaves.size()) != u.h2) return Verdict::fail("star size");
    for (Vertex w : s.leaves) {
      if (!detail::in_range(g, w)) return Verdict::fail("vertex range");
      if (!g.adjacent(s.centre, w)) return Verdict::fail("star edges");
    }
    star_vertices.push_back(s.centre);
    star_vertices.insert(star_vertices.end(), s.leaves.begin(), s.leaves.end());
  }
  if (!detail::all_distinct(star_vertices)) return Verdict::fail("stars vertex-disjoint");
  for (const auto& s : u.stars)
    for (Vertex w : s.leaves)
      if (contains(on_paths, w)) return Verdict::fail("leaves disjoint from paths");
  return Verdict::pass();
}

inline Verdict validate_web(const Web& w, const Graph& g) {
  if (!detail::in_range(g, w.core)) return Verdict::fail("vertex range");
  if (static_cast<int>(w.units.size()) != w.h0 || w.spokes.size() != w.units.size())
    return Verdict::fail("unit count");
  {
    std::vector<Vertex> heads{w.core};
    for (const auto& u : w.units) heads.push_back(u.core);
    if (!detail::all_distinct(heads)) return Verdict::fail("core and unit cores distinct");
  }
  for (std::size_t i = 0; i < w.spokes.size(); ++i)
    if (auto v = detail::check_path(g, w.spokes[i], w.core, w.units[i].core, w.h3, "spoke"); !v.ok) return v;
  {
    std::vector<Vertex> inner;
    for (const auto& s : w.spokes)
      if (s.size() > 2) inner.insert(inner.end(), s.begin() + 1, s.end() - 1);
    for (const auto& u : w.units) inner.push_back(u.core);
    if (!detail::all_distinct(inner)) return Verdict::fail("spokes internally disjoint");
  }
  for (const auto& u : w.units) {
    if (u.h1 != w.h1 || u.h2 != w.h2 || u.h3 != w.h3) return Verdict::fail("unit parameters");
    if (auto v = validate_unit(u, g); !v.ok) return Verdict::fail("unit: " + v.clause, v.detail);
  }
  {
    std::vector<Vertex> all;
    for (const auto& u : w.units) {
      auto x = u.vertices();
      all.insert(all.end(), x.begin(), x.end());
    }
    if (!detail::all_distinct(all)) return Verdict::fail("vertex-disjoint units");
  }
  const VertexSet centre = w.centre();
  for (const auto& u : w.units)
    for (Vertex x : u.vertices())
      if (x != u.core && contains(centre, x)) return Verdict::fail("units disjoint from spokes");
  return Verdict::pass();
}

// ---------------------------------------------------------------------------
// Stars

struct StarSearch {
  std::vector<Star> stars;
  std::string diagnostic;  // set when fewer than requested were found
};

// Greedy in index order: a free vertex with enough free neighbours becomes a
// centre and takes its lowest-index free neighbours as leaves.
inline StarSearch find_disjoint_stars(const Graph& g, int count, int leaves, const VertexSet& avoid = {}) {
  StarSearch out;
  if (leaves < 1 || count < 1) return out;
  std::vector<char> used(static_cast<std::size_t>(g.order()), 0);
  for (Vertex v : avoid) used[v] = 1;
  for (Vertex v = 0; v < g.order() && static_cast<int>(out.stars.size()) < count; ++v) {
    if (used[v]) continue;
    Star s{v, {}};
    for (Vertex w : g.neighbors(v)) {
      if (used[w]) continue;
      s.leaves.push_back(w);
      if (static_cast<int>(s.leaves.size()) == leaves) break;
    }
    if (static_cast<int>(s.leaves.size()) < leaves) continue;
    used[v] = 1;
    for (Vertex w : s.leaves) used[w] = 1;
    out.stars.push_back(std::move(s));
  }
  if (static_cast<int>(out.stars.size()) < count) {
    std::size_t free_edges = 0, free_vertices = 0;
    for (Vertex v = 0; v < g.order(); ++v) {
      if (used[v]) continue;
      ++free_vertices;
      for (Vertex w : g.neighbors(v))
        if (!used[w] && v < w) ++free_edges;
    }
    const double avg = free_vertices ? 2.0 * static_cast<double>(free_edges) / static_cast<double>(free_vertices) : 0;
    out.diagnostic = "greedy stalled after " + std::to_string(out.stars.size()) + " stars; remaining graph has " +
                     std::to_string(free_vertices) + " vertices, average degree " + std::to_string(avg) +
                     ", no vertex with " + std::to_string(leaves) + " free neighbours";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Units

struct UnitOptions {
  int star_leaves = 0;  // 0: use 2*h2
  int max_stars = 0;    // 0: no limit
};

struct UnitGrowth {
  std::optional<Unit> unit;
  std::string stage;  // "star", "path" or "prune" on failure
  std::string detail;
};

namespace detail {

inline std::vector<char> mark(std::size_t n, const VertexSet& s) {
  std::vector<char> m(n, 0);
  for (Vertex v : s) m[v] = 1;
  return m;
}

}  // namespace detail

// Greedy disjoint stars split into centres V and U; a maximal family of
// short V -> U paths through a star edge at the U end, with interiors
// avoiding `avoid`, the centres and each other; a V centre with at least h1
// partners becomes the core; U-star leaves hit by the chosen paths are
// dropped and h2 of the rest are kept.
inline UnitGrowth grow_unit(const Graph& g, int h1, int h2, int h3, const VertexSet& avoid = {},
                            const UnitOptions& opt = {}) {
  UnitGrowth out;
  if (h1 < 1 || h2 < 1 || h3 < 3) {
    out.stage = "star";
    out.detail = "need h1, h2 >= 1 and h3 >= 3";
    return out;
  }
  const auto n = static_cast<std::size_t>(g.order());
  const int leaves = opt.star_leaves > 0 ? opt.star_leaves : 2 * h2;
  const int limit = opt.max_stars > 0 ? opt.max_stars : g.order();
  auto found = find_disjoint_stars(g, limit, leaves, avoid);
  const int k = static_cast<int>(found.stars.size());
  if (k < h1 + 1) {
    out.stage = "star";
    out.detail = std::to_string(k) + " disjoint " + std::to_string(leaves) + "-stars, need " + std::to_string(h1 + 1);
    if (!found.diagnostic.empty()) out.detail += "; " + found.diagnostic;
    return out;
  }
  const int nv = std::max(1, (k + h1) / (h1 + 1));
  std::vector<Star> vs(found.stars.begin(), found.stars.begin() + nv);
  std::vector<Star> us(found.stars.begin() + nv, found.stars.end());
  if (static_cast<int>(us.size()) < h1) {
    out.stage = "star";
    out.detail = "too few stars for the U side";
    return out;
  }

  std::vector<char> blocked = detail::mark(n, avoid);
  for (const auto& s : found.stars) blocked[s.centre] = 1;
  std::vector<int> v_of_leaf(n, -1), u_of_leaf(n, -1);
  VertexSet a_side;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (Vertex w : vs[i].leaves) {
      v_of_leaf[w] = static_cast<int>(i);
      a_side.push_back(w);
    }
  for (std::size_t j = 0; j < us.size(); ++j)
    for (Vertex w : us[j].leaves) u_of_leaf[w] = static_cast<int>(j);
  std::vector<char> untouched(us.size(), 1);
  std::vector<std::vector<std::pair<int, std::vector<Vertex>>>> partners(vs.size());

  for (;;) {
    VertexSet b_side;
    for (std::size_t j = 0; j < us.size(); ++j)
      if (untouched[j]) b_side.insert(b_side.end(), us[j].leaves.begin(), us[j].leaves.end());
    if (b_side.empty()) break;
    auto q = shortest_path(g, a_side, b_side, &blocked, h3 - 2);
    if (q.empty()) break;
    const int i = v_of_leaf[q.front()];
    const int j = u_of_leaf[q.back()];
    std::vector<Vertex> p{vs[i].centre};
    p.insert(p.end(), q.begin(), q.end());
    p.push_back(us[j].centre);
    for (Vertex x : q) {
      blocked[x] = 1;
      if (u_of_leaf[x] >= 0) untouched[u_of_leaf[x]] = 0;
    }
    untouched[j] = 0;
    partners[i].emplace_back(j, std::move(p));
  }

  int pivot = -1;
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (static_cast<int>(partners[i].size()) >= h1) {
      pivot = static_cast<int>(i);
      break;
    }
  if (pivot < 0) {
    std::size_t most = 0;
    for (const auto& p : partners) most = std::max(most, p.size());
    out.stage = "path";
    out.detail = "no centre reached " + std::to_string(h1) + " partners (best " + std::to_string(most) + ")";
    return out;
  }

  Unit u;
  u.h1 = h1;
  u.h2 = h2;
  u.h3 = h3;
  u.core = vs[pivot].centre;
  std::vector<char> used_inside(n, 0);
  for (int t = 0; t < h1; ++t) {
    const auto& p = partners[pivot][t].second;
    for (std::size_t x = 1; x + 1 < p.size(); ++x) used_inside[p[x]] = 1;
  }
  for (int t = 0; t < h1; ++t) {
    const auto& [j, p] = partners[pivot][t];
    Star s{us[j].centre, {}};
    for (Vertex w : us[j].leaves)
      if (!used_inside[w] && static_cast<int>(s.leaves.size()) < h2) s.leaves.push_back(w);
    if (static_cast<int>(s.leaves.size()) < h2) {
      out.stage = "prune";
      out.detail = "star at " + std::to_string(s.centre) + " kept only " + std::to_string(s.leaves.size()) + " leaves";
      return out;
    }
    u.branches.push_back(us[j].centre);
    u.paths.push_back(p);
    u.stars.push_back(std::move(s));
  }
  out.unit = std::move(u);
  return out;
}

// ---------------------------------------------------------------------------
// Webs

struct WebOptions {
  int v_units = 2;         // units offered as web cores
  int u_units = 0;         // 0: 2*h0
  int unit_branches = 0;   // branches grown per unit before pruning; 0: 2*h1
  int unit_path_length = 0;  // path bound inside the grown units; 0: max(3, h3/4 + 2)
  UnitOptions unit{};
};

struct WebGrowth {
  std::vector<Web> webs;
  std::vector<std::string> diagnostics;  // one per failed attempt
};

namespace detail {

inline std::vector<Vertex> shortcut(const Graph& g, const std::vector<Vertex>& walk, Vertex from, Vertex to) {
  std::vector<char> blocked(static_cast<std::size_t>(g.order()), 1);
  for (Vertex v : walk) blocked[v] = 0;
  return shortest_path(g, {from}, {to}, &blocked);
}

}  // namespace detail

// Builds webs one at a time in g minus the interiors of the earlier webs:
// units first, then a maximal family of spokes from V-unit exteriors to
// untouched U-unit exteriors (each shortcut inside its own vertex set and
// kept when at most h3 long), then a core with h0 partners; every partner
// unit drops the branches its spokes run through.
inline WebGrowth grow_webs(const Graph& g, int h0, int h1, int h2, int h3, int count, const WebOptions& opt = {}) {
  WebGrowth out;
  const auto n = static_cast<std::size_t>(g.order());
  if (h0 < 1 || h1 < 1 || h2 < 1 || h3 < 3) {
    out.diagnostics.push_back("parameters must be positive with h3 >= 3");
    return out;
  }
  const int u_units = opt.u_units > 0 ? opt.u_units : 2 * h0;
  const int branches = opt.unit_branches > 0 ? opt.unit_branches : 2 * h1;
  const int unit_h3 = opt.unit_path_length > 0 ? opt.unit_path_length : std::max(3, h3 / 4 + 2);
  VertexSet prior_interiors;

  for (int t = 0; t < count; ++t) {
    std::string tag = "web " + std::to_string(t) + ": ";
    std::vector<Unit> units;
    VertexSet taken = prior_interiors;
    std::string unit_failure;
    for (int i = 0; i < opt.v_units + u_units; ++i) {
      auto grown = grow_unit(g, branches, h2, std::min(unit_h3, h3), taken, opt.unit);
      if (!grown.unit) {
        unit_failure = grown.stage + " (" + grown.detail + ")";
        break;
      }
      taken = set_union(taken, grown.unit->vertices());
      units.push_back(std::move(*grown.unit));
    }
    if (static_cast<int>(units.size()) < opt.v_units + h0) {
      out.diagnostics.push_back(tag + "only " + std::to_string(units.size()) + " units; stalled at " + unit_failure);
      break;
    }
    const int nv = opt.v_units;
    const int nu = static_cast<int>(units.size()) - nv;

    std::vector<char> blocked = detail::mark(n, prior_interiors);
    std::vector<int> v_owner(n, -1), u_owner(n, -1);
    for (int i = 0; i < nv; ++i) {
      for (Vertex x : units[i].interior()) blocked[x] = 1;
      for (Vertex x : units[i].exterior()) v_owner[x] = i;
    }
    for (int j = 0; j < nu; ++j) {
      blocked[units[nv + j].core] = 1;
      for (Vertex x : units[nv + j].vertices()) u_owner[x] = j;
    }
    std::vector<char> available(static_cast<std::size_t>(nu), 1);
    std::vector<char> used(n, 0);  // spoke interiors so far
    std::vector<std::vector<std::pair<int, std::vector<Vertex>>>> partners(static_cast<std::size_t>(nv));

    for (;;) {
      VertexSet a_side, b_side;
      for (int i = 0; i < nv; ++i)
        for (Vertex w : units[i].exterior()) {
          const auto p = units[i].path_to(w);
          if (std::none_of(p.begin(), p.end(), [&](Vertex x) { return used[x]; })) a_side.push_back(w);
        }
      for (int j = 0; j < nu; ++j)
        if (available[j]) {
          auto e = units[nv + j].exterior();
          b_side.insert(b_side.end(), e.begin(), e.end());
        }
      if (a_side.empty() || b_side.empty()) break;
      auto q = shortest_path(g, a_side, normalized(b_side), &blocked, h3);
      if (q.empty()) break;
      const int i = v_owner[q.front()];
      const int j = u_owner[q.back()];
      const Unit& fv = units[i];
      const Unit& fu = units[nv + j];
      std::vector<Vertex> raw = fv.path_to(q.front());
      raw.insert(raw.end(), q.begin() + 1, q.end());
      auto tail = fu.path_to(q.back());
      raw.insert(raw.end(), tail.rbegin() + 1, tail.rend());
      auto spoke = detail::shortcut(g, raw, fv.core, fu.core);
      available[j] = 0;
      if (spoke.empty() || static_cast<int>(spoke.size()) - 1 > h3) continue;
      for (std::size_t x = 1; x + 1 < spoke.size(); ++x) {
        used[spoke[x]] = 1;
        blocked[spoke[x]] = 1;
        if (u_owner[spoke[x]] >= 0) available[u_owner[spoke[x]]] = 0;
      }
      partners[i].emplace_back(j, std::move(spoke));
    }

    int pivot = -1;
    for (int i = 0; i < nv; ++i)
      if (static_cast<int>(partners[i].size()) >= h0) {
        pivot = i;
        break;
      }
    if (pivot < 0) {
      out.diagnostics.push_back(tag + "no core unit reached " + std::to_string(h0) + " spokes");
      break;
    }

    Web web;
    web.h0 = h0;
    web.h1 = h1;
    web.h2 = h2;
    web.h3 = h3;
    web.core = units[pivot].core;
    std::vector<char> hit(n, 0);
    for (int s = 0; s < h0; ++s) {
      const auto& sp = partners[pivot][s].second;
      for (Vertex x : sp) hit[x] = 1;
    }
    bool pruned_ok = true;
    for (int s = 0; s < h0 && pruned_ok; ++s) {
      const auto& [j, sp] = partners[pivot][s];
      const Unit& full = units[nv + j];
      Unit kept;
      kept.h1 = h1;
      kept.h2 = h2;
      kept.h3 = h3;
      kept.core = full.core;
      for (std::size_t b = 0; b < full.branches.size() && static_cast<int>(kept.branches.size()) < h1; ++b) {
        bool clean = true;
        for (std::size_t x = 1; x < full.paths[b].size(); ++x) clean = clean && !hit[full.paths[b][x]];
        for (Vertex x : full.stars[b].leaves) clean = clean && !hit[x];
        if (!clean) continue;
        kept.branches.push_back(full.branches[b]);
        kept.paths.push_back(full.paths[b]);
        kept.stars.push_back(full.stars[b]);
      }
      if (static_cast<int>(kept.branches.size()) < h1) {
        out.diagnostics.push_back(tag + "unit at " + std::to_string(full.core) + " kept only " +
                                  std::to_string(kept.branches.size()) + " branches");
        pruned_ok = false;
        break;
      }
      web.spokes.push_back(sp);
      web.units.push_back(std::move(kept));
    }
    if (!pruned_ok) break;
    prior_interiors = set_union(prior_interiors, web.interior());
    out.webs.push_back(std::move(web));
  }
  return out;
}

}  // namespace hamsub
