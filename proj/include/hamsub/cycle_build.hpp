#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hamsub/graph.hpp"
#include "hamsub/numeric.hpp"
#include "hamsub/random.hpp"
#include "hamsub/web.hpp"

namespace hamsub {

struct TraceStep {
  std::string stage;  // "connect", "close", "skip", "stall", "gate"
  int from_index = -1, to_index = -1;  // positions in U
  Vertex from = -1, to = -1;
  int length = -1;  // edges; -1 when no path was found
  double bound = 0;
  bool within_bound = false;
  std::string note;
};

struct CycleBuildReport {
  bool success = false;
  std::string reason;
  VertexSet Z;
  VertexSet U;  // vertices (cores for the dense builder)
  std::vector<Vertex> cycle;
  VertexSet intersection;  // V(C) and Z
  std::vector<TraceStep> trace;
  std::vector<std::string> notes;
};

// A cycle as a closed vertex sequence: at least 3 vertices, no repeats,
// consecutive (and last/first) entries adjacent.
inline bool is_simple_cycle(const Graph& g, const std::vector<Vertex>& c) {
  if (c.size() < 3) return false;
  for (Vertex v : c)
    if (v < 0 || v >= g.order()) return false;
  if (!detail::all_distinct(c)) return false;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!g.adjacent(c[i], c[(i + 1) % c.size()])) return false;
  return true;
}

namespace detail {

// Joins paths p_0..p_{k-1} where p_j ends where p_{j+1} starts, and the last
// ends where the first starts, into a closed sequence.
inline std::vector<Vertex> close_up(const std::vector<std::vector<Vertex>>& paths) {
  std::vector<Vertex> c;
  for (const auto& p : paths) c.insert(c.end(), p.begin(), p.end() - 1);
  return c;
}

inline int edges(const std::vector<Vertex>& p) { return static_cast<int>(p.size()) - 1; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Dense webs

struct DenseCycleParams {
  int connector_length = 0;   // bound on the exterior-to-exterior path; 0: deepest web
  int path_budget = 0;        // bound on each core-to-core path; 0: connector + 2 * deepest web
  long long overuse_budget = 0;  // a web is bad once |Int(W) and P'| reaches this; 0: 2 * budget^2
  double coverage = 0.9;      // required fraction of U met by the cycle
};

namespace detail {

struct DenseState {
  const Graph& g;
  const std::vector<Web>& webs;
  std::vector<VertexSet> interiors, centres;
  std::vector<char> in_z;
  std::vector<char> used;  // union of path interiors
  int connector = 0, budget = 0;

  DenseState(const Graph& graph, const std::vector<Web>& w) : g(graph), webs(w) {
    const auto n = static_cast<std::size_t>(g.order());
    in_z.assign(n, 0);
    used.assign(n, 0);
    for (const auto& web : webs) {
      interiors.push_back(web.interior());
      centres.push_back(web.centre());
      in_z[web.core] = 1;
    }
  }

  long long overuse(int web) const {
    long long k = 0;
    for (Vertex x : interiors[web]) k += used[x];
    return k;
  }

  // Core-to-core path of web j1 to web j2 with interior avoiding the used
  // interiors, Z, and the centres of every other web.
  std::vector<Vertex> connect(int j1, int j2, TraceStep& step) const {
    const auto n = static_cast<std::size_t>(g.order());
    std::vector<char> blocked = used;
    for (std::size_t v = 0; v < n; ++v)
      if (in_z[v]) blocked[v] = 1;
    for (std::size_t k = 0; k < webs.size(); ++k)
      if (static_cast<int>(k) != j1 && static_cast<int>(k) != j2)
        for (Vertex x : centres[k]) blocked[x] = 1;
    auto usable = [&](int j) {
      VertexSet a;
      for (Vertex w : webs[j].exterior()) {
        const auto p = webs[j].path_to(w);
        if (std::all_of(p.begin() + 1, p.end(), [&](Vertex x) { return !blocked[x]; })) a.push_back(w);
      }
      return a;
    };
    const VertexSet a1 = usable(j1), a2 = usable(j2);
    step.from = webs[j1].core;
    step.to = webs[j2].core;
    step.bound = budget;
    if (a1.empty() || a2.empty()) {
      step.note = "no free exterior vertex";
      return {};
    }
    auto q = shortest_path(g, a1, a2, &blocked, connector);
    if (q.empty()) {
      step.note = "no connector within " + std::to_string(connector);
      return {};
    }
    std::vector<Vertex> walk = webs[j1].path_to(q.front());
    walk.insert(walk.end(), q.begin(), q.end());
    auto tail = webs[j2].path_to(q.back());
    walk.insert(walk.end(), tail.begin(), tail.end());
    auto p = shortcut(g, walk, webs[j1].core, webs[j2].core);
    step.length = edges(p);
    step.within_bound = !p.empty() && step.length <= budget;
    if (!step.within_bound) {
      step.note = "path longer than the budget";
      return {};
    }
    return p;
  }

  void consume(const std::vector<Vertex>& p) {
    for (std::size_t i = 1; i + 1 < p.size(); ++i) used[p[i]] = 1;
  }
};

}  // namespace detail

// Chains good webs of U core to core, each new path avoiding earlier path
// interiors, Z and foreign centres; the next web must be barely used so far.
// The cycle starts at the first web that is still good at the end and is
// closed by one more connection.
inline CycleBuildReport build_cycle_dense(const Graph& g, const std::vector<Web>& webs, const std::vector<int>& u_index,
                                          const DenseCycleParams& params = {}) {
  CycleBuildReport rep;
  for (const auto& w : webs) rep.Z.push_back(w.core);
  rep.Z = normalized(rep.Z);
  for (int i : u_index) {
    if (i < 0 || i >= static_cast<int>(webs.size())) {
      rep.reason = "web index out of range";
      return rep;
    }
    rep.U.push_back(webs[i].core);
  }
  rep.U = normalized(rep.U);
  if (rep.U.size() != u_index.size()) {
    rep.reason = "repeated web index";
    return rep;
  }
  if (u_index.size() < 2) {
    rep.reason = "U needs at least two webs";
    return rep;
  }

  detail::DenseState st(g, webs);
  int depth = 1;
  for (const auto& w : webs) depth = std::max(depth, w.depth());
  st.connector = params.connector_length > 0 ? params.connector_length : depth;
  st.budget = params.path_budget > 0 ? params.path_budget : st.connector + 2 * depth;
  const long long bad_at = params.overuse_budget > 0 ? params.overuse_budget
                                                     : 2LL * st.budget * st.budget;
  rep.notes.push_back("connector " + std::to_string(st.connector) + ", path budget " + std::to_string(st.budget) +
                      ", over-use budget " + std::to_string(bad_at));

  std::vector<int> order{u_index.front()};
  std::vector<int> pos_of(webs.size(), -1);
  pos_of[u_index.front()] = 0;
  for (std::size_t i = 0; i < u_index.size(); ++i) pos_of[u_index[i]] = static_cast<int>(i);
  std::vector<std::vector<Vertex>> chain;
  std::vector<int> remaining(u_index.begin() + 1, u_index.end());

  while (!remaining.empty()) {
    const int cur = order.back();
    bool extended = false;
    for (std::size_t r = 0; r < remaining.size(); ++r) {
      const int cand = remaining[r];
      if (2 * st.overuse(cand) > bad_at) {
        rep.trace.push_back({"skip", pos_of[cur], pos_of[cand], webs[cur].core, webs[cand].core, -1, 0, false,
                             "interior over-used"});
        continue;
      }
      TraceStep step{"connect", pos_of[cur], pos_of[cand]};
      auto p = st.connect(cur, cand, step);
      rep.trace.push_back(step);
      if (p.empty()) continue;
      st.consume(p);
      chain.push_back(std::move(p));
      order.push_back(cand);
      remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(r));
      extended = true;
      break;
    }
    if (!extended) {
      rep.trace.push_back({"stall", pos_of[cur], -1, webs[cur].core, -1, -1, 0, false,
                           std::to_string(remaining.size()) + " webs of U not reached"});
      break;
    }
  }

  std::size_t start = 0;
  while (start < order.size() && st.overuse(order[start]) >= bad_at) ++start;
  if (order.size() - start < 2) {
    rep.reason = "fewer than two good webs on the chain";
    return rep;
  }
  // The closing path must avoid every chain interior; Cen and Z as before.
  TraceStep step{"close", pos_of[order[start]], pos_of[order.back()]};
  auto closing = st.connect(order[start], order.back(), step);
  rep.trace.push_back(step);
  if (closing.empty()) {
    rep.reason = "closing path not found";
    return rep;
  }
  std::vector<std::vector<Vertex>> loop(chain.begin() + static_cast<std::ptrdiff_t>(start), chain.end());
  std::reverse(closing.begin(), closing.end());
  loop.push_back(std::move(closing));
  rep.cycle = detail::close_up(loop);
  if (!is_simple_cycle(g, rep.cycle)) {
    rep.reason = "closed walk is not a simple cycle";
    return rep;
  }
  rep.intersection = set_intersection(normalized(rep.cycle), rep.Z);
  const auto need = static_cast<std::size_t>(std::ceil(params.coverage * static_cast<double>(rep.U.size()) - 1e-9));
  if (!set_difference(rep.intersection, rep.U).empty()) {
    rep.reason = "cycle meets a core outside U";
    return rep;
  }
  if (rep.intersection.size() < need) {
    rep.reason = "cycle meets " + std::to_string(rep.intersection.size()) + " cores of U, need " + std::to_string(need);
    return rep;
  }
  rep.success = true;
  return rep;
}

// ---------------------------------------------------------------------------
// Far-apart sets and sparse expanders

struct FarApartResult {
  VertexSet z;
  std::string diagnostic;
};

// Greedy in index order; each chosen vertex blocks its 2k-ball.
inline FarApartResult far_apart_set(const Graph& g, int k, int size) {
  FarApartResult out;
  std::vector<char> blocked(static_cast<std::size_t>(g.order()), 0);
  std::size_t covered = 0;
  for (Vertex v = 0; v < g.order() && static_cast<int>(out.z.size()) < size; ++v) {
    if (blocked[v]) continue;
    out.z.push_back(v);
    const auto dist = bfs_distances(g, {v}, nullptr, 2 * k);
    for (std::size_t x = 0; x < dist.size(); ++x)
      if (dist[x] != kUnreached && !blocked[x]) {
        blocked[x] = 1;
        ++covered;
      }
  }
  if (static_cast<int>(out.z.size()) < size)
    out.diagnostic = "stopped at " + std::to_string(out.z.size()) + ": the radius-" + std::to_string(2 * k) +
                     " balls cover " + std::to_string(covered) + " of " + std::to_string(g.order()) + " vertices";
  return out;
}

struct SparseCycleParams {
  int r = 1;                 // radius of the protected balls
  int k = 2;                 // radius of the search balls; Z must be pairwise more than 2k apart
  double length_bound = 0;   // 0: 2 ln^4 n
  long long ball_gate = 0;   // minimum |B^r| at the two ends of a new path; 0 disables the gate
};

// Adds paths P_j from v_j to v_{j+1} (indices mod |U|) in passes until no
// index can be added. Each P_j avoids earlier interiors, the r-balls of the
// other U-vertices and Z minus U: a shortest path between the k-balls of its
// ends in H - W, extended by shortest paths to the centres.
inline CycleBuildReport build_cycle_sparse(const Graph& g, const VertexSet& z, const std::vector<Vertex>& u,
                                           const SparseCycleParams& params = {}) {
  CycleBuildReport rep;
  rep.Z = normalized(z);
  rep.U = normalized(u);
  const auto n = static_cast<std::size_t>(g.order());
  const int m = static_cast<int>(u.size());
  if (m < 2) {
    rep.reason = "U needs at least two vertices";
    return rep;
  }
  if (rep.U.size() != u.size()) {
    rep.reason = "repeated vertex in U";
    return rep;
  }
  for (Vertex v : u)
    if (!contains(rep.Z, v)) {
      rep.reason = "U is not a subset of Z";
      return rep;
    }
  for (Vertex a : rep.Z) {
    const auto dist = bfs_distances(g, {a}, nullptr, 2 * params.k);
    for (Vertex b : rep.Z)
      if (b != a && dist[b] != kUnreached) {
        rep.reason = "Z is not far apart at radius " + std::to_string(params.k);
        return rep;
      }
  }
  const double logn = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
  const double bound = params.length_bound > 0 ? params.length_bound : 2 * std::pow(logn, 4);
  rep.notes.push_back("r " + std::to_string(params.r) + ", k " + std::to_string(params.k) + ", length bound " +
                      std::to_string(bound) +
                      (params.ball_gate > 0 ? ", ball gate " + std::to_string(params.ball_gate) : ", ball gate off"));

  std::vector<std::vector<Vertex>> r_balls;
  for (Vertex v : u) r_balls.push_back(ball(g, {v}, params.r).members);
  std::vector<char> outside_u(n, 0);
  for (Vertex x : set_difference(rep.Z, rep.U)) outside_u[x] = 1;

  std::vector<std::vector<Vertex>> paths(static_cast<std::size_t>(m));
  std::vector<char> have(static_cast<std::size_t>(m), 0);
  std::vector<char> used(n, 0);

  auto ball_ok = [&](Vertex centre, std::vector<char> block, TraceStep& step) {
    block[centre] = 0;
    const auto b = ball(g, {centre}, params.r, &block);
    if (params.ball_gate <= 0) return true;
    if (static_cast<long long>(b.members.size()) >= params.ball_gate) return true;
    step.note = "ball of " + std::to_string(centre) + " has " + std::to_string(b.members.size()) + " < " +
                std::to_string(params.ball_gate) + " vertices";
    return false;
  };

  bool progress = true;
  while (progress) {
    progress = false;
    for (int i = 0; i < m; ++i) {
      if (have[i]) continue;
      const int j = (i + 1) % m;
      const Vertex vi = u[i], vj = u[j];
      TraceStep step{"connect", i, j, vi, vj, -1, bound, false, {}};
      std::vector<char> w = used;
      for (std::size_t x = 0; x < n; ++x) w[x] = w[x] || outside_u[x];
      for (int p = 0; p < m; ++p)
        if (p != i && p != j)
          for (Vertex x : r_balls[p]) w[x] = 1;
      w[vi] = 0;
      w[vj] = 0;
      const auto xi = ball(g, {vi}, params.k, &w).members;
      const auto xj = ball(g, {vj}, params.k, &w).members;
      auto q = shortest_path(g, xi, xj, &w);
      if (q.empty()) {
        step.note = "balls not connected in H - W";
        rep.trace.push_back(step);
        continue;
      }
      auto head = shortest_path(g, {vi}, {q.front()}, &w);
      auto tail = shortest_path(g, {q.back()}, {vj}, &w);
      std::vector<Vertex> walk = head;
      walk.insert(walk.end(), q.begin() + 1, q.end());
      walk.insert(walk.end(), tail.begin() + 1, tail.end());
      auto p = detail::shortcut(g, walk, vi, vj);
      step.length = detail::edges(p);
      step.within_bound = !p.empty() && step.length <= bound;
      if (!step.within_bound) {
        step.note = "path longer than the bound";
        rep.trace.push_back(step);
        continue;
      }
      std::vector<char> after = used;
      for (std::size_t x = 1; x + 1 < p.size(); ++x) after[p[x]] = 1;
      TraceStep gate = step;
      if ((!have[(i + m - 1) % m] && !ball_ok(vi, after, gate)) || (!have[j] && !ball_ok(vj, after, gate))) {
        gate.stage = "gate";
        rep.trace.push_back(gate);
        continue;
      }
      rep.trace.push_back(step);
      used = std::move(after);
      paths[i] = std::move(p);
      have[i] = 1;
      progress = true;
    }
  }

  for (int i = 0; i < m; ++i)
    if (!have[i]) {
      rep.reason = "no path from index " + std::to_string(i) + " to " + std::to_string((i + 1) % m);
      return rep;
    }
  rep.cycle = detail::close_up(paths);
  if (!is_simple_cycle(g, rep.cycle)) {
    rep.reason = "closed walk is not a simple cycle";
    return rep;
  }
  rep.intersection = set_intersection(normalized(rep.cycle), rep.Z);
  if (rep.intersection != rep.U) {
    rep.reason = "cycle meets Z outside U";
    return rep;
  }
  rep.success = true;
  return rep;
}

// ---------------------------------------------------------------------------
// Counting distinct cycles over random U

struct DistinguishabilityReport {
  int samples = 0;
  int successes = 0;
  int distinct_u = 0;
  int distinct_cycles = 0;  // distinct vertex sets among successful cycles
  int guaranteed = 0;       // ceil(distinct_u / C(|Z| - k, |U| - k)), k = ceil(coverage |U|)
  BigInt ratio_denominator = 1;
};

// Each cycle's Z-intersection S has at least k cores, and at most
// C(|Z|-k, |U|-k) sets U contain a given S, so distinct U give at least
// distinct_u / C(|Z|-k, |U|-k) distinct cycles.
inline DistinguishabilityReport distinguishability(const Graph& g, const std::vector<Web>& webs, int u_size,
                                                   int samples, std::uint64_t seed,
                                                   const DenseCycleParams& params = {}) {
  DistinguishabilityReport rep;
  rep.samples = samples;
  const int z = static_cast<int>(webs.size());
  if (u_size < 2 || u_size > z) return rep;
  const int k = static_cast<int>(std::ceil(params.coverage * u_size - 1e-9));
  rep.ratio_denominator = binomial(z - k, u_size - k);
  std::set<std::vector<int>> us;
  std::set<VertexSet> cycles;
  CounterRng rng{seed};
  for (int s = 0; s < samples; ++s) {
    std::vector<int> idx(static_cast<std::size_t>(z));
    for (int i = 0; i < z; ++i) idx[i] = i;
    for (int i = z - 1; i > 0; --i) {
      const auto pick = static_cast<int>(rng.at(1, static_cast<std::uint64_t>(s) * 64 + i) % (i + 1));
      std::swap(idx[i], idx[pick]);
    }
    idx.resize(static_cast<std::size_t>(u_size));
    std::sort(idx.begin(), idx.end());
    us.insert(idx);
    auto r = build_cycle_dense(g, webs, idx, params);
    if (!r.success) continue;
    ++rep.successes;
    cycles.insert(normalized(r.cycle));
  }
  rep.distinct_u = static_cast<int>(us.size());
  rep.distinct_cycles = static_cast<int>(cycles.size());
  const BigInt num = rep.distinct_u;
  rep.guaranteed = static_cast<int>((num + rep.ratio_denominator - 1) / rep.ratio_denominator);
  return rep;
}

}  // namespace hamsub
