#pragma once

#include <json.hpp>

#include "hamsub/classical.hpp"
#include "hamsub/counting.hpp"
#include "hamsub/cycle_build.hpp"
#include "hamsub/expander.hpp"
#include "hamsub/sun.hpp"
#include "hamsub/verify.hpp"
#include "hamsub/web.hpp"

namespace hamsub::report {

using nlohmann::ordered_json;

// Integers that fit in 64 bits become JSON numbers, larger ones strings.
inline ordered_json big(const BigInt& x) {
  if (x >= 0 && x <= BigInt(std::numeric_limits<std::int64_t>::max())) return x.convert_to<std::int64_t>();
  if (x < 0 && x >= BigInt(std::numeric_limits<std::int64_t>::min())) return x.convert_to<std::int64_t>();
  return x.str();
}

inline ordered_json rational(const Rational& q) { return to_string(q); }

inline ordered_json count(const std::string& g6, const CountReport& r) {
  ordered_json j;
  j["graph6"] = g6;
  j["n"] = r.n;
  j["e"] = r.e;
  j["c"] = big(r.c);
  ordered_json sizes = ordered_json::object();
  for (const auto& [k, v] : r.by_size) sizes[std::to_string(k)] = big(v);
  j["by_size"] = sizes;
  j["weak"] = big(r.weak);
  if (r.nu) j["nu"] = big(*r.nu);
  return j;
}

inline ordered_json verdict(const Verdict& v) {
  ordered_json j{{"ok", v.ok}};
  if (!v.ok) {
    j["clause"] = v.clause;
    if (!v.detail.empty()) j["detail"] = v.detail;
  }
  return j;
}

inline ordered_json certificate(const ExpanderCertificate& c) {
  ordered_json j{{"mode", to_string(c.mode)}, {"pass", c.pass}, {"eps1", c.profile.eps1}, {"t", c.profile.t}};
  if (c.violating_set) {
    j["violating_set"] = *c.violating_set;
    j["boundary"] = c.boundary;
  }
  return j;
}

inline ordered_json extraction(const ExtractionResult& r) {
  ordered_json j;
  j["vertices"] = r.subgraph.to_parent;
  j["order"] = r.subgraph.graph.order();
  j["d_in"] = rational(r.d_in);
  j["d_out"] = rational(r.d_out);
  j["eps0"] = r.params.eps0();
  j["nu"] = r.params.nu();
  j["refinements"] = r.refinements;
  j["heuristic"] = r.heuristic;
  ordered_json post{{"average_ok", r.post.average_ok},
                    {"min_degree_ok", r.post.min_degree_ok},
                    {"connectivity_checked", r.post.connectivity_checked}};
  if (r.post.connectivity_checked) {
    post["connectivity"] = r.post.connectivity;
    post["connectivity_needed"] = r.post.connectivity_needed;
    post["connectivity_ok"] = r.post.connectivity_ok;
  }
  post["expansion"] = certificate(r.post.expansion);
  post["all_ok"] = r.post.all_ok();
  j["postconditions"] = post;
  return j;
}

inline ordered_json sun(const Sun& s) {
  return {{"cycle", s.cycle}, {"ray_indices", s.ray_indices}, {"rays", s.rays}, {"a", s.a()}, {"b", s.b()}};
}

inline ordered_json structure(const StructureReport& r) {
  ordered_json j{{"hypotheses_ok", r.hypotheses_ok}, {"unmet", r.unmet}, {"note", r.note}};
  if (r.witness) {
    const auto& w = *r.witness;
    ordered_json wj{{"kind", to_string(w.kind)}};
    switch (w.kind) {
      case StructureKind::two_cycles:
        wj["cycle1"] = w.cycle1;
        wj["cycle2"] = w.cycle2;
        break;
      case StructureKind::long_path: wj["path"] = w.path; break;
      case StructureKind::sun: wj["sun"] = sun(w.sun); break;
    }
    j["witness"] = wj;
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

inline ordered_json unit(const Unit& u) {
  ordered_json stars = ordered_json::array();
  for (const auto& s : u.stars) stars.push_back({{"centre", s.centre}, {"leaves", s.leaves}});
  return {{"core", u.core}, {"branches", u.branches}, {"paths", u.paths}, {"stars", stars}};
}

inline ordered_json web(const Web& w) {
  ordered_json units = ordered_json::array();
  for (const auto& u : w.units) units.push_back(unit(u));
  return {{"core", w.core}, {"spokes", w.spokes}, {"units", units}, {"interior_size", w.interior().size()},
          {"exterior_size", w.exterior().size()}};
}

inline ordered_json cycle_report(const CycleBuildReport& r) {
  ordered_json trace = ordered_json::array();
  for (const auto& s : r.trace) {
    ordered_json t{{"stage", s.stage}, {"from_index", s.from_index}, {"to_index", s.to_index},
                   {"from", s.from},   {"to", s.to},                 {"length", s.length},
                   {"bound", s.bound}, {"within_bound", s.within_bound}};
    if (!s.note.empty()) t["note"] = s.note;
    trace.push_back(t);
  }
  ordered_json j{{"success", r.success}, {"Z", r.Z}, {"U", r.U}, {"cycle", r.cycle},
                 {"intersection", r.intersection}, {"trace", trace}, {"notes", r.notes}};
  if (!r.success) j["reason"] = r.reason;
  return j;
}

inline ordered_json verification(const VerificationReport& r, bool timing) {
  ordered_json j;
  j["mode"] = r.mode;
  j["d"] = r.d;
  if (r.mode == "stability") j["alpha"] = rational(r.alpha);
  j["target"] = big(r.target);
  j["n_range"] = {r.n_min, r.n_max};
  j["graphs_scanned"] = r.graphs_scanned;
  j["skipped"] = r.skipped;
  j["parse_errors"] = r.parse_errors;
  if (r.min_c) {
    j["min_c"] = big(*r.min_c);
    j["min_witness"] = r.min_witness;
  } else {
    j["min_c"] = nullptr;
  }
  ordered_json v = ordered_json::array();
  for (const auto& f : r.violations) v.push_back({{"graph6", f.graph6}, {"c", big(f.c)}});
  j[r.mode == "stability" ? "below_threshold" : "violations"] = v;
  if (r.mode != "stability") j["equality_cases"] = r.equality_cases;
  if (r.mode == "stability") j["excluded"] = r.excluded;
  if (timing) j["elapsed"] = r.elapsed;
  return j;
}

}  // namespace hamsub::report
