#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <istream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hamsub/counting.hpp"
#include "hamsub/graph.hpp"
#include "hamsub/numeric.hpp"

namespace hamsub {

// ---------------------------------------------------------------------------
// Canonical labelling for small graphs

inline constexpr int kCanonicalMaxOrder = 11;  // n(n-1)/2 <= 55 bits

struct CanonicalForm {
  std::uint64_t code = 0;       // upper triangle of the relabelled matrix, first pair most significant
  std::vector<Vertex> labeling;  // labeling[k] = original vertex placed at position k
};

namespace detail {

using Cells = std::vector<std::vector<Vertex>>;

inline int count_in(std::uint64_t row, const std::vector<Vertex>& cell) {
  int k = 0;
  for (Vertex w : cell) k += static_cast<int>((row >> w) & 1U);
  return k;
}

// Splits cells by neighbour counts into each cell until the partition is
// equitable. Pieces are ordered by count, so the result depends only on the
// structure and the incoming cell order.
inline void refine(const std::vector<std::uint64_t>& rows, Cells& cells) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t s = 0; s < cells.size() && !changed; ++s) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (cells[c].size() < 2) continue;
        std::vector<std::pair<int, Vertex>> keyed;
        for (Vertex v : cells[c]) keyed.emplace_back(count_in(rows[v], cells[s]), v);
        std::sort(keyed.begin(), keyed.end());
        if (keyed.front().first == keyed.back().first) continue;
        Cells pieces;
        for (std::size_t i = 0; i < keyed.size(); ++i) {
          if (i == 0 || keyed[i].first != keyed[i - 1].first) pieces.emplace_back();
          pieces.back().push_back(keyed[i].second);
        }
        cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(c));
        cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(c), pieces.begin(), pieces.end());
        changed = true;
        break;
      }
    }
  }
}

inline std::uint64_t code_of(const std::vector<std::uint64_t>& rows, const std::vector<Vertex>& lab) {
  const int n = static_cast<int>(lab.size());
  std::uint64_t code = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) code = (code << 1) | ((rows[lab[i]] >> lab[j]) & 1U);
  return code;
}

inline void search(const std::vector<std::uint64_t>& rows, Cells cells, CanonicalForm& best, bool& have) {
  refine(rows, cells);
  auto target = std::find_if(cells.begin(), cells.end(), [](const auto& c) { return c.size() > 1; });
  if (target == cells.end()) {
    std::vector<Vertex> lab;
    for (const auto& c : cells) lab.push_back(c.front());
    const auto code = code_of(rows, lab);
    if (!have || code > best.code) {
      best.code = code;
      best.labeling = lab;
      have = true;
    }
    return;
  }
  const auto at = static_cast<std::size_t>(target - cells.begin());
  const auto cell = *target;
  std::vector<Vertex> tried;
  for (Vertex v : cell) {
    // A twin of an already tried vertex gives an isomorphic subtree.
    bool twin = false;
    for (Vertex w : tried) {
      const std::uint64_t mask = ~((std::uint64_t{1} << v) | (std::uint64_t{1} << w));
      if ((rows[v] & mask) == (rows[w] & mask)) {
        twin = true;
        break;
      }
    }
    if (twin) continue;
    tried.push_back(v);
    Cells next = cells;
    std::vector<Vertex> rest;
    for (Vertex w : cell)
      if (w != v) rest.push_back(w);
    next[at] = {v};
    next.insert(next.begin() + static_cast<std::ptrdiff_t>(at) + 1, rest);
    search(rows, std::move(next), best, have);
  }
}

}  // namespace detail

inline CanonicalForm canonical_form(const Graph& g) {
  const int n = g.order();
  if (n > kCanonicalMaxOrder) throw CapExceeded("canonical form", n, kCanonicalMaxOrder);
  CanonicalForm best;
  if (n == 0) return best;
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) rows[v] = g.row(v);
  detail::Cells start(1);
  for (Vertex v = 0; v < n; ++v) start[0].push_back(v);
  bool have = false;
  detail::search(rows, std::move(start), best, have);
  return best;
}

inline Graph relabel(const Graph& g, const std::vector<Vertex>& labeling) {
  std::vector<Vertex> pos(labeling.size());
  for (std::size_t k = 0; k < labeling.size(); ++k) pos[labeling[k]] = static_cast<Vertex>(k);
  std::vector<Edge> e;
  for (auto [u, v] : g.edges()) e.emplace_back(pos[u], pos[v]);
  return Graph(g.order(), e);
}

inline Graph canonical_graph(const Graph& g) { return relabel(g, canonical_form(g).labeling); }

inline bool are_isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  return canonical_form(a).code == canonical_form(b).code;
}

// ---------------------------------------------------------------------------
// Isomorph-free generation by vertex augmentation

// All classes on n vertices with minimum degree >= k, given every class on
// n-1 vertices with minimum degree >= k-1 (deleting a vertex lowers degrees
// by at most one). The new vertex has degree >= k and is adjacent to every
// parent vertex of degree k-1. Output is canonical and sorted by code.
inline std::vector<Graph> augment_min_degree(const std::vector<Graph>& parents, int k) {
  std::set<std::uint64_t> seen;
  std::vector<std::pair<std::uint64_t, Graph>> out;
  for (const auto& p : parents) {
    const int m = p.order();
    if (m + 1 > kCanonicalMaxOrder) throw CapExceeded("augmentation", m + 1, kCanonicalMaxOrder);
    std::uint32_t forced = 0;
    bool usable = true;
    for (Vertex v = 0; v < m; ++v) {
      usable = usable && p.degree(v) >= k - 1;
      if (p.degree(v) == k - 1) forced |= 1U << v;
    }
    if (!usable) continue;
    for (std::uint32_t s = 0; s < (1U << m); ++s) {
      if ((s & forced) != forced || std::popcount(s) < k) continue;
      auto e = p.edges();
      for (Vertex v = 0; v < m; ++v)
        if ((s >> v) & 1U) e.emplace_back(v, m);
      Graph child(m + 1, e);
      auto cf = canonical_form(child);
      if (!seen.insert(cf.code).second) continue;
      out.emplace_back(cf.code, relabel(child, cf.labeling));
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Graph> graphs;
  graphs.reserve(out.size());
  for (auto& [code, g] : out) graphs.push_back(std::move(g));
  return graphs;
}

inline constexpr int kTinyMaxOrder = 8;

inline std::vector<Graph> tiny_generate_graphs(int n, int min_degree = 0) {
  if (n > kTinyMaxOrder) throw CapExceeded("tiny_generate", n, kTinyMaxOrder);
  if (n < 1) throw std::invalid_argument("tiny_generate: n must be >= 1");
  std::vector<Graph> level{Graph(1, {})};
  for (int m = 2; m <= n; ++m) level = augment_min_degree(level, 0);
  std::vector<Graph> out;
  for (auto& g : level)
    if (n == 1 ? min_degree <= 0 : degree_stats(g).min >= min_degree) out.push_back(std::move(g));
  return out;
}

// One canonical representative per isomorphism class, as graph6 lines.
inline std::vector<std::string> tiny_generate(int n, int min_degree = 0) {
  std::vector<std::string> out;
  for (const auto& g : tiny_generate_graphs(n, min_degree)) out.push_back(to_graph6(g));
  return out;
}

// ---------------------------------------------------------------------------
// Streams

struct StreamEntry {
  std::size_t line = 0;  // 1-based
  std::string text;
};

// Non-empty lines, with any ">>graph6<<" header stripped.
inline std::vector<StreamEntry> read_graph6_stream(std::istream& in) {
  std::vector<StreamEntry> out;
  std::string s;
  for (std::size_t line = 1; std::getline(in, s); ++line) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
    if (s.rfind(">>graph6<<", 0) == 0) s.erase(0, 10);
    if (s.empty()) continue;
    out.push_back({line, s});
  }
  return out;
}

inline std::vector<StreamEntry> as_stream(const std::vector<std::string>& lines) {
  std::vector<StreamEntry> out;
  for (std::size_t i = 0; i < lines.size(); ++i) out.push_back({i + 1, lines[i]});
  return out;
}

inline bool is_bipartite(const Graph& g) {
  std::vector<int> side(static_cast<std::size_t>(g.order()), -1);
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    queue.assign(1, s);
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (Vertex w : g.neighbors(queue[h])) {
        if (side[w] < 0) {
          side[w] = 1 - side[queue[h]];
          queue.push_back(w);
        } else if (side[w] == side[queue[h]]) {
          return false;
        }
      }
  }
  return true;
}

inline bool is_complete_graph(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.order());
  return g.size() == n * (n - 1) / 2;
}

// K_{d+1} and K_d sharing one vertex: a single cut vertex whose removal
// leaves cliques of orders d and d-1, each completed by the cut vertex.
inline bool is_clique_pair(const Graph& g, int d) {
  if (d < 2 || g.order() != 2 * d) return false;
  const auto bd = blocks(g);
  if (bd.cut_vertices.size() != 1 || bd.blocks.size() != 2) return false;
  std::vector<std::size_t> sizes;
  for (const auto& b : bd.blocks) {
    if (!is_complete_graph(induced_subgraph(g, b).graph)) return false;
    sizes.push_back(b.size());
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes[0] == static_cast<std::size_t>(d) && sizes[1] == static_cast<std::size_t>(d + 1);
}

// ---------------------------------------------------------------------------
// Reports

struct Finding {
  std::string graph6;
  BigInt c;
};

struct GraphRow {
  std::string graph6;
  int n = 0;
  std::size_t e = 0;
  int min_degree = 0;
  BigInt c;
  std::string status;  // "ok", "equality", "violation", "skipped", "excluded", "error"
};

struct VerificationReport {
  std::string mode;
  int d = 0;
  Rational alpha = 0;  // stability only
  BigInt target;
  int n_min = 0, n_max = 0;
  long long graphs_scanned = 0;  // graphs that passed the filter and were counted
  long long skipped = 0;
  std::vector<std::string> parse_errors;  // "line N: message"
  std::optional<BigInt> min_c;
  std::string min_witness;
  std::vector<Finding> violations;
  std::vector<std::string> equality_cases;
  std::vector<std::string> excluded;  // stability exceptions
  std::vector<GraphRow> rows;         // filled when requested
  double elapsed = 0;

  bool clean() const { return violations.empty(); }
};

enum class VerifyMode { komlos, bipartite, stability };

inline const char* to_string(VerifyMode m) {
  switch (m) {
    case VerifyMode::komlos: return "komlos";
    case VerifyMode::bipartite: return "bipartite";
    case VerifyMode::stability: return "stability";
  }
  return "?";
}

struct VerifyOptions {
  int threads = 1;
  bool rows = false;
  Rational alpha = Rational(1, 10);
};

namespace detail {

struct Shard {
  VerificationReport rep;
};

inline void scan_one(VerifyMode mode, int d, const BigInt& target, const Rational& alpha, const StreamEntry& entry,
                     VerificationReport& rep, bool keep_rows) {
  Graph g;
  try {
    g = from_graph6(entry.text);
  } catch (const std::exception& e) {
    rep.parse_errors.push_back("line " + std::to_string(entry.line) + ": " + e.what());
    if (keep_rows) rep.rows.push_back({entry.text, 0, 0, 0, 0, "error"});
    return;
  }
  GraphRow row{entry.text, g.order(), g.size(), g.order() ? degree_stats(g).min : 0, 0, "skipped"};
  bool pass_filter = g.order() > 0;
  if (pass_filter) {
    switch (mode) {
      case VerifyMode::komlos: pass_filter = row.min_degree >= d; break;
      case VerifyMode::bipartite: pass_filter = row.min_degree >= d && is_bipartite(g); break;
      case VerifyMode::stability: pass_filter = average_degree(g) >= Rational(d); break;
    }
  }
  if (!pass_filter || g.order() > kDeskCap) {
    if (pass_filter) rep.parse_errors.push_back("line " + std::to_string(entry.line) + ": order above the DP cap");
    ++rep.skipped;
    if (keep_rows) rep.rows.push_back(row);
    return;
  }
  ++rep.graphs_scanned;
  rep.n_min = rep.graphs_scanned == 1 ? g.order() : std::min(rep.n_min, g.order());
  rep.n_max = std::max(rep.n_max, g.order());
  row.c = ham_subsets_count(g).c;
  if (!rep.min_c || row.c < *rep.min_c) {
    rep.min_c = row.c;
    rep.min_witness = entry.text;
  }
  row.status = "ok";
  if (mode == VerifyMode::stability) {
    if ((g.order() == d + 1 && is_complete_graph(g)) || is_clique_pair(g, d)) {
      rep.excluded.push_back(entry.text);
      row.status = "excluded";
    } else if (Rational(row.c) < (2 - alpha) * Rational(pow2(static_cast<unsigned>(d + 1)))) {
      rep.violations.push_back({entry.text, row.c});
      row.status = "violation";
    }
  } else if (row.c < target) {
    rep.violations.push_back({entry.text, row.c});
    row.status = "violation";
  } else if (row.c == target) {
    rep.equality_cases.push_back(entry.text);
    row.status = "equality";
  }
  if (keep_rows) rep.rows.push_back(std::move(row));
}

inline void merge_into(VerificationReport& into, VerificationReport&& part) {
  if (part.graphs_scanned > 0) {
    into.n_min = into.graphs_scanned == 0 ? part.n_min : std::min(into.n_min, part.n_min);
    into.n_max = std::max(into.n_max, part.n_max);
  }
  into.graphs_scanned += part.graphs_scanned;
  into.skipped += part.skipped;
  if (part.min_c && (!into.min_c || *part.min_c < *into.min_c)) {
    into.min_c = part.min_c;
    into.min_witness = part.min_witness;
  }
  auto append = [](auto& a, auto& b) { a.insert(a.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end())); };
  append(into.parse_errors, part.parse_errors);
  append(into.violations, part.violations);
  append(into.equality_cases, part.equality_cases);
  append(into.excluded, part.excluded);
  append(into.rows, part.rows);
}

}  // namespace detail

// Shards the stream into contiguous blocks, one per worker, and merges the
// partial reports in block order; findings are then sorted by graph6.
inline VerificationReport verify_stream(VerifyMode mode, const std::vector<StreamEntry>& stream, int d,
                                        const VerifyOptions& opt = {}) {
  if (d < 1) throw std::invalid_argument("verify: d must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.mode = to_string(mode);
  rep.d = d;
  switch (mode) {
    case VerifyMode::komlos: rep.target = closed_form_complete(d); break;
    case VerifyMode::bipartite: rep.target = closed_form_bipartite(d, d); break;
    case VerifyMode::stability: {
      rep.alpha = opt.alpha;
      rep.target = floor_nonneg((2 - opt.alpha) * Rational(pow2(static_cast<unsigned>(d + 1))));
      break;
    }
  }
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::max(opt.threads, 1)), stream.size()));
  std::vector<VerificationReport> parts(workers);
  auto run = [&](std::size_t w) {
    const std::size_t lo = stream.size() * w / workers, hi = stream.size() * (w + 1) / workers;
    for (std::size_t i = lo; i < hi; ++i)
      detail::scan_one(mode, d, rep.target, opt.alpha, stream[i], parts[w], opt.rows);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  for (auto& p : parts) detail::merge_into(rep, std::move(p));
  std::sort(rep.violations.begin(), rep.violations.end(),
            [](const Finding& a, const Finding& b) { return a.graph6 < b.graph6; });
  std::sort(rep.equality_cases.begin(), rep.equality_cases.end());
  std::sort(rep.excluded.begin(), rep.excluded.end());
  rep.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

inline VerificationReport verify_komlos(const std::vector<StreamEntry>& stream, int d, const VerifyOptions& opt = {}) {
  return verify_stream(VerifyMode::komlos, stream, d, opt);
}

inline VerificationReport verify_bipartite(const std::vector<StreamEntry>& stream, int d,
                                           const VerifyOptions& opt = {}) {
  return verify_stream(VerifyMode::bipartite, stream, d, opt);
}

inline VerificationReport verify_stability(const std::vector<StreamEntry>& stream, int d, const Rational& alpha,
                                           VerifyOptions opt = {}) {
  opt.alpha = alpha;
  return verify_stream(VerifyMode::stability, stream, d, opt);
}

}  // namespace hamsub
