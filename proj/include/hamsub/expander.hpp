#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hamsub/classical.hpp"
#include "hamsub/graph.hpp"
#include "hamsub/numeric.hpp"

namespace hamsub {

inline constexpr double kExpansionSlack = 1e-9;

struct ExpansionProfile {
  double eps1 = 1.0 / 130;
  double t = 1.0;

  // eps(x) = 0 below t/5, eps1 / ln^2(15x/t) from t/5 on.
  double epsilon(double x) const {
    if (x <= 0) throw std::invalid_argument("epsilon: x must be positive");
    if (x < t / 5) return 0;
    const double l = std::log(15 * x / t);
    return eps1 / (l * l);
  }

  // Inclusive range of set sizes the definition constrains; empty when lo > hi.
  std::pair<int, int> window(int n) const {
    return {std::max(1, static_cast<int>(std::ceil(t / 2 - 1e-12))), n / 2};
  }

  void validate() const {
    if (!(eps1 > 0 && eps1 <= 1)) throw std::invalid_argument("profile: eps1 must lie in (0,1]");
    if (!(t > 0)) throw std::invalid_argument("profile: t must be positive");
  }
};

enum class CertMode { exact, heuristic };

inline const char* to_string(CertMode m) { return m == CertMode::exact ? "exact" : "heuristic"; }

struct ExpanderCertificate {
  ExpansionProfile profile;
  CertMode mode = CertMode::exact;
  bool pass = true;
  std::optional<VertexSet> violating_set;
  std::size_t boundary = 0;  // |Gamma(X)| of the violating set
};

// External neighbourhood N(X) \ X.
inline VertexSet external_neighbourhood(const Graph& g, const VertexSet& x) {
  std::vector<char> in(static_cast<std::size_t>(g.order()), 0), seen(in.size(), 0);
  for (Vertex v : x) in[v] = 1;
  VertexSet out;
  for (Vertex v : x)
    for (Vertex w : g.neighbors(v))
      if (!in[w] && !seen[w]) {
        seen[w] = 1;
        out.push_back(w);
      }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool violates(const ExpansionProfile& p, std::size_t size, std::size_t boundary) {
  const double need = p.epsilon(static_cast<double>(size)) * static_cast<double>(size);
  return static_cast<double>(boundary) < need - kExpansionSlack;
}

namespace detail {

inline std::optional<std::uint32_t> exact_scan(const Graph& g, const ExpansionProfile& p,
                                               std::uint32_t first, std::uint32_t last, int lo, int hi) {
  const int n = g.order();
  std::vector<std::uint32_t> rows(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) rows[v] = static_cast<std::uint32_t>(g.row(v));
  for (std::uint32_t s = first; s < last; ++s) {
    const int k = std::popcount(s);
    if (k < lo || k > hi) continue;
    std::uint32_t nb = 0;
    for (std::uint32_t m = s; m; m &= m - 1) nb |= rows[std::countr_zero(m)];
    const int boundary = std::popcount(nb & ~s);
    if (violates(p, static_cast<std::size_t>(k), static_cast<std::size_t>(boundary))) return s;
  }
  return std::nullopt;
}

// Grows a set while tracking |Gamma(X)|; each addition costs O(deg).
class BoundaryTracker {
 public:
  explicit BoundaryTracker(const Graph& g)
      : g_(g), in_(static_cast<std::size_t>(g.order()), 0), hits_(in_.size(), 0) {}

  void add(Vertex v) {
    in_[v] = 1;
    members_.push_back(v);
    if (hits_[v] > 0) --boundary_;
    for (Vertex w : g_.neighbors(v)) {
      if (hits_[w]++ == 0 && !in_[w]) ++boundary_;
    }
  }
  bool contains(Vertex v) const { return in_[v] != 0; }
  int hits(Vertex v) const { return hits_[v]; }
  std::size_t size() const { return members_.size(); }
  std::size_t boundary() const { return boundary_; }
  const VertexSet& members() const { return members_; }

 private:
  const Graph& g_;
  std::vector<char> in_;
  std::vector<int> hits_;
  VertexSet members_;
  std::size_t boundary_ = 0;
};

// Sweeps prefixes of `order`, returning the first prefix in the window that
// violates expansion.
inline std::optional<VertexSet> sweep(const Graph& g, const ExpansionProfile& p, const std::vector<Vertex>& order,
                                      int lo, int hi) {
  BoundaryTracker tr(g);
  for (Vertex v : order) {
    tr.add(v);
    const int k = static_cast<int>(tr.size());
    if (k > hi) break;
    if (k >= lo && violates(p, tr.size(), tr.boundary())) return normalized(tr.members());
  }
  return std::nullopt;
}

// Approximate Fiedler vector of the Laplacian by shifted power iteration,
// projected away from the constant vector.
inline std::vector<double> fiedler_vector(const Graph& g, std::uint64_t seed, int iterations = 300) {
  const int n = g.order();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<double> x(static_cast<std::size_t>(n)), y(x.size());
  for (auto& v : x) v = gauss(rng);
  int maxdeg = 0;
  for (Vertex v = 0; v < n; ++v) maxdeg = std::max(maxdeg, g.degree(v));
  const double shift = 2.0 * maxdeg + 1;
  auto center = [&](std::vector<double>& z) {
    const double mean = std::accumulate(z.begin(), z.end(), 0.0) / n;
    double norm = 0;
    for (auto& v : z) {
      v -= mean;
      norm += v * v;
    }
    norm = std::sqrt(norm);
    if (norm > 0)
      for (auto& v : z) v /= norm;
  };
  center(x);
  for (int it = 0; it < iterations; ++it) {
    for (Vertex v = 0; v < n; ++v) {
      double lx = g.degree(v) * x[v];
      for (Vertex w : g.neighbors(v)) lx -= x[w];
      y[v] = shift * x[v] - lx;
    }
    std::swap(x, y);
    center(x);
  }
  return x;
}

}  // namespace detail

struct HeuristicEffort {
  std::uint64_t seed = 1;
  int spectral_iterations = 300;
  int bfs_starts = 16;
  int greedy_starts = 16;
};

// Exact certification enumerates every subset in the size window.
// Heuristic mode searches unions of components, spectral sweep cuts, BFS
// sweeps and greedy boundary-minimizing growth from random starts; a pass
// only means no violation was found.
inline ExpanderCertificate is_expander(const Graph& g, const ExpansionProfile& p, CertMode mode,
                                       const HeuristicEffort& effort = {}, int threads = 1) {
  p.validate();
  ExpanderCertificate cert;
  cert.profile = p;
  cert.mode = mode;
  const int n = g.order();
  const auto [lo, hi] = p.window(n);
  if (lo > hi || n == 0) return cert;
  auto fail = [&](VertexSet x) {
    cert.pass = false;
    cert.boundary = external_neighbourhood(g, x).size();
    cert.violating_set = std::move(x);
    return cert;
  };

  if (mode == CertMode::exact) {
    if (n > kExactExpanderCap) throw CapExceeded("exact expander certification", n, kExactExpanderCap);
    const std::uint32_t total = 1U << n;
    threads = std::max(1, threads);
    const std::uint32_t chunk = total / static_cast<std::uint32_t>(threads) + 1;
    std::vector<std::optional<std::uint32_t>> found(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      const std::uint32_t a = std::min<std::uint64_t>(total, std::uint64_t{chunk} * w);
      const std::uint32_t b = std::min<std::uint64_t>(total, std::uint64_t{chunk} * (w + 1));
      if (threads == 1) {
        found[0] = detail::exact_scan(g, p, a, b, lo, hi);
      } else {
        pool.emplace_back([&, w, a, b, lo = lo, hi = hi] { found[w] = detail::exact_scan(g, p, a, b, lo, hi); });
      }
    }
    for (auto& t : pool) t.join();
    for (const auto& f : found)
      if (f) {
        VertexSet x;
        for (std::uint32_t m = *f; m; m &= m - 1) x.push_back(std::countr_zero(m));
        return fail(std::move(x));
      }
    return cert;
  }

  // Unions of whole components: Gamma is empty.
  auto comps = components(g);
  if (comps.size() > 1) {
    std::sort(comps.begin(), comps.end(), [](const VertexSet& a, const VertexSet& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    VertexSet acc;
    for (const auto& c : comps) {
      if (static_cast<int>(acc.size() + c.size()) > hi) break;
      acc = set_union(acc, c);
      if (static_cast<int>(acc.size()) >= lo && violates(p, acc.size(), 0)) return fail(acc);
    }
  }

  std::mt19937_64 rng(effort.seed);
  // Spectral sweep from both ends.
  if (n >= 2) {
    auto f = detail::fiedler_vector(g, effort.seed, effort.spectral_iterations);
    std::vector<Vertex> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return f[a] < f[b]; });
    if (auto x = detail::sweep(g, p, order, lo, hi)) return fail(*x);
    std::reverse(order.begin(), order.end());
    if (auto x = detail::sweep(g, p, order, lo, hi)) return fail(*x);
  }
  std::uniform_int_distribution<Vertex> pick(0, n - 1);
  // BFS-order sweeps.
  for (int s = 0; s < effort.bfs_starts; ++s) {
    const Vertex root = s == 0 ? 0 : pick(rng);
    auto dist = bfs_distances(g, {root});
    std::vector<Vertex> order;
    for (Vertex v = 0; v < n; ++v)
      if (dist[v] != kUnreached) order.push_back(v);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return dist[a] < dist[b]; });
    if (auto x = detail::sweep(g, p, order, lo, hi)) return fail(*x);
  }
  // Greedy growth: always absorb the boundary vertex adding the fewest new
  // boundary vertices (random tie-break).
  for (int s = 0; s < effort.greedy_starts; ++s) {
    detail::BoundaryTracker tr(g);
    tr.add(pick(rng));
    while (static_cast<int>(tr.size()) < hi) {
      if (static_cast<int>(tr.size()) >= lo && violates(p, tr.size(), tr.boundary()))
        return fail(normalized(tr.members()));
      Vertex best = -1;
      int best_cost = std::numeric_limits<int>::max();
      std::uint64_t best_key = 0;
      for (Vertex v : tr.members())
        for (Vertex w : g.neighbors(v)) {
          if (tr.contains(w)) continue;
          int cost = 0;
          for (Vertex z : g.neighbors(w))
            if (!tr.contains(z) && tr.hits(z) == 0) ++cost;
          const std::uint64_t key = CounterRng::mix(effort.seed ^ (static_cast<std::uint64_t>(w) << 20) ^ s);
          if (cost < best_cost || (cost == best_cost && key < best_key)) {
            best = w;
            best_cost = cost;
            best_key = key;
          }
        }
      if (best < 0) break;
      tr.add(best);
    }
    if (static_cast<int>(tr.size()) >= lo && static_cast<int>(tr.size()) <= hi &&
        violates(p, tr.size(), tr.boundary()))
      return fail(normalized(tr.members()));
  }
  return cert;
}

// Recomputes a violation claim from scratch.
inline bool recheck_violation(const Graph& g, const ExpansionProfile& p, const VertexSet& x) {
  const auto [lo, hi] = p.window(g.order());
  const int k = static_cast<int>(x.size());
  if (k < lo || k > hi) return false;
  return violates(p, x.size(), external_neighbourhood(g, x).size());
}

// ---------------------------------------------------------------------------
// Expander subgraph extraction

struct ExtractionParams {
  double eps1 = 1.0 / 130;
  double c_prime = 1.0 / 30;
  double C = 13;
  HeuristicEffort effort{};

  double eps0() const { return C * eps1 / std::log(3.0); }
  double nu() const {
    const double l = std::log(5 / c_prime);
    return eps1 / (6 * l * l);
  }
};

struct ExtractionPostconditions {
  bool average_ok = false;       // d(H) >= (1 - eps0) d
  bool min_degree_ok = false;    // delta(H) >= d(H)/2
  bool connectivity_checked = false;
  bool connectivity_ok = false;  // kappa(H) >= ceil(nu d(H))
  int connectivity = -1;
  int connectivity_needed = 0;
  ExpanderCertificate expansion;

  bool all_ok() const {
    return average_ok && min_degree_ok && (!connectivity_checked || connectivity_ok) && expansion.pass;
  }
};

struct ExtractionResult {
  Induced subgraph;
  Rational d_in;
  Rational d_out;
  ExtractionParams params;
  ExpansionProfile profile;
  ExtractionPostconditions post;
  int refinements = 0;
  bool heuristic = false;  // some clause was checked heuristically
};

inline constexpr int kConnectivityCheckCap = 200;

namespace detail {

// Peels with the current average degree until delta >= d/2 holds.
inline Induced settle_core(const Graph& g, const VertexSet& to_parent) {
  Induced cur{g, to_parent};
  while (cur.graph.order() > 0) {
    const Rational d = average_degree(cur.graph);
    if (d == 0) return {Graph(0), {}};
    auto next = min_degree_core(cur.graph, d);
    if (next.graph.order() == cur.graph.order()) break;
    VertexSet parent;
    for (Vertex v : next.to_parent) parent.push_back(cur.to_parent[v]);
    cur = {std::move(next.graph), std::move(parent)};
  }
  return cur;
}

}  // namespace detail

inline ExtractionResult extract_expander(const Graph& g, const ExtractionParams& params = {}) {
  if (g.size() == 0) throw std::invalid_argument("extract_expander: graph has no edges");
  if (!(params.C > 12)) throw std::invalid_argument("extract_expander: need C > 12");
  if (!(params.eps1 > 0 && params.eps1 <= 1 / (10 * params.C) + 1e-15))
    throw std::invalid_argument("extract_expander: need 0 < eps1 <= 1/(10C)");
  if (!(params.c_prime > 0 && params.c_prime < 0.5))
    throw std::invalid_argument("extract_expander: need 0 < c' < 1/2");

  ExtractionResult res;
  res.params = params;
  res.d_in = average_degree(g);
  res.profile = {params.eps1, params.c_prime * to_double(res.d_in)};

  VertexSet all(static_cast<std::size_t>(g.order()));
  std::iota(all.begin(), all.end(), 0);
  Induced h = detail::settle_core(g, all);

  auto cert_of = [&](const Graph& x) {
    const auto mode = x.order() <= kExactExpanderCap ? CertMode::exact : CertMode::heuristic;
    return is_expander(x, res.profile, mode, params.effort);
  };

  for (int step = 0; step < g.order() && h.graph.order() > 0; ++step) {
    auto cert = cert_of(h.graph);
    if (cert.pass) break;
    ++res.refinements;
    const VertexSet& x = *cert.violating_set;
    auto side_a = induced_subgraph(h.graph, x);
    auto side_b = remove_vertices(h.graph, x);
    // Keep the side of larger average degree; ties go to the larger side.
    const Rational da = average_degree(side_a.graph), db = average_degree(side_b.graph);
    bool keep_a = da > db || (da == db && side_a.graph.order() > side_b.graph.order());
    auto& side = keep_a ? side_a : side_b;
    VertexSet parent;
    for (Vertex v : side.to_parent) parent.push_back(h.to_parent[v]);
    h = detail::settle_core(side.graph, parent);
  }

  res.subgraph = h;
  const Graph& hg = h.graph;
  auto& post = res.post;
  if (hg.order() == 0) {
    res.d_out = 0;
    post.expansion.pass = false;
    return res;
  }
  res.d_out = average_degree(hg);
  const auto stats = degree_stats(hg);
  post.min_degree_ok = Rational(2 * stats.min) >= res.d_out;
  post.average_ok = to_double(res.d_out) >= (1 - params.eps0()) * to_double(res.d_in) - 1e-12;
  post.connectivity_needed = static_cast<int>(std::ceil(params.nu() * to_double(res.d_out) - 1e-12));
  if (hg.order() <= kConnectivityCheckCap) {
    post.connectivity_checked = true;
    post.connectivity = vertex_connectivity(hg);
    post.connectivity_ok = post.connectivity >= post.connectivity_needed;
  } else {
    res.heuristic = true;
  }
  post.expansion = cert_of(hg);
  if (post.expansion.mode == CertMode::heuristic) res.heuristic = true;
  return res;
}

// ---------------------------------------------------------------------------
// Short connecting paths

struct ConnectResult {
  std::vector<Vertex> path;  // empty when no path exists
  bool hypotheses_met = false;
  double bound = 0;          // (2/eps1) ln^3(15n/t), edges
  bool within_bound = true;  // only meaningful when hypotheses_met
  int length() const { return path.empty() ? -1 : static_cast<int>(path.size()) - 1; }
};

inline double connector_bound(const ExpansionProfile& p, int n) {
  const double l = std::log(15.0 * n / p.t);
  return 2 / p.eps1 * l * l * l;
}

// Shortest X -> X' path in g - W. The length bound is asserted only when
// |X|, |X'| >= x >= t/2, |W| <= eps(x) x / 4 and `cert` is a passing
// certificate for g at the same profile.
inline ConnectResult connect_avoiding(const Graph& g, const VertexSet& x, const VertexSet& x_prime,
                                      const VertexSet& w, const ExpansionProfile& p,
                                      const ExpanderCertificate* cert = nullptr) {
  if (x.empty() || x_prime.empty()) throw std::invalid_argument("connect_avoiding: X and X' must be nonempty");
  std::vector<char> blocked(static_cast<std::size_t>(g.order()), 0);
  for (Vertex v : w) blocked[v] = 1;
  ConnectResult r;
  r.path = shortest_path(g, x, x_prime, &blocked);
  r.bound = connector_bound(p, g.order());
  const auto xs = static_cast<double>(std::min(normalized(x).size(), normalized(x_prime).size()));
  const auto ws = static_cast<double>(normalized(w).size());
  const bool sizes = xs >= p.t / 2 && ws <= p.epsilon(xs) * xs / 4;
  const bool certified = cert && cert->pass && cert->profile.eps1 == p.eps1 && cert->profile.t == p.t;
  r.hypotheses_met = sizes && certified;
  if (r.hypotheses_met) r.within_bound = !r.path.empty() && r.length() <= r.bound;
  return r;
}

}  // namespace hamsub
