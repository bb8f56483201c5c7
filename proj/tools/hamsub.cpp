#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "hamsub/classical.hpp"
#include "hamsub/constructors.hpp"
#include "hamsub/counting.hpp"
#include "hamsub/cycle_build.hpp"
#include "hamsub/expander.hpp"
#include "hamsub/random.hpp"
#include "hamsub/sun.hpp"
#include "hamsub/verify.hpp"
#include "hamsub/web.hpp"
#include "report_json.hpp"

namespace {

using hamsub::Graph;
using nlohmann::ordered_json;
namespace report = hamsub::report;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  bool json = false;
  bool strict = false;
  bool timing = false;
  std::uint64_t seed = 1;
  int threads = 1;
  int cap = hamsub::kDeskCap;
  double eps1 = 1.0 / 130;
  double cprime = 1.0 / 30;
  std::string input;
  std::string csv;
};

// Per-subcommand options; unused ones stay at their defaults.
struct Options {
  bool nu = false;
  int x = 0, y = 1;
  int d = 3;
  std::string d_rational = "3";
  std::string alpha = "1/10";
  double t = 1.0;
  std::string mode = "auto";
  double big_c = 13;
  int h0 = 2, h1 = 2, h2 = 3, h3 = 4, count = 1;
  std::string u_list;
  double coverage = 0.9;
  int path_budget = 0, connector = 0;
  long long overuse = 0;
  int k = 2, r = 1, z_size = 10, u_size = 0;
  double length_bound = 0;
  long long ball_gate = 0;
  std::string model = "gnp";
  int n = 10;
  double p = 0.5;
  int min_degree = 0;
};

class Output {
 public:
  Output(const Settings& s, std::string command, ordered_json config) : s_(s) {
    config["command"] = std::move(command);
    if (s_.json) {
      emit({{"config", config}});
    } else {
      std::string line = "# config";
      for (auto& [k, v] : config.items()) line += " " + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
      std::cout << line << "\n";
    }
  }

  void emit(const ordered_json& j) {
    if (s_.json) {
      std::cout << j.dump() << "\n";
      return;
    }
    std::string line;
    for (auto& [k, v] : j.items()) {
      if (!line.empty()) line += " ";
      line += k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
    }
    std::cout << line << "\n";
  }

  void raw(const std::string& line) { std::cout << line << "\n"; }

 private:
  const Settings& s_;
};

std::vector<hamsub::StreamEntry> read_input(const Settings& s) {
  if (s.input.empty() || s.input == "-") return hamsub::read_graph6_stream(std::cin);
  std::ifstream in(s.input);
  if (!in) throw UsageError("cannot open input " + s.input);
  return hamsub::read_graph6_stream(in);
}

// Comment lines (the text-mode header of `gen`) are not graphs.
std::vector<hamsub::StreamEntry> graphs_only(std::vector<hamsub::StreamEntry> v) {
  std::erase_if(v, [](const auto& e) { return e.text.front() == '#'; });
  return v;
}

Graph parse(const hamsub::StreamEntry& e) {
  try {
    return hamsub::from_graph6(e.text);
  } catch (const hamsub::Graph6Error& err) {
    throw UsageError("line " + std::to_string(e.line) + ": malformed graph6: " + err.what());
  }
}

Graph single_graph(const Settings& s) {
  auto in = graphs_only(read_input(s));
  if (in.empty()) throw UsageError("no graph on input");
  return parse(in.front());
}

// Runs f over the inputs on `threads` workers; results keep input order.
std::vector<ordered_json> parallel_map(const std::vector<hamsub::StreamEntry>& in, int threads,
                                       const std::function<ordered_json(const hamsub::StreamEntry&)>& f) {
  std::vector<ordered_json> out(in.size());
  std::vector<std::exception_ptr> errors(in.size());
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::max(threads, 1), in.size()));
  auto run = [&](std::size_t w) {
    for (std::size_t i = w; i < in.size(); i += workers) {
      try {
        out[i] = f(in[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

hamsub::Rational parse_rational(const std::string& text, const char* what) {
  try {
    return hamsub::Rational(text);
  } catch (const std::exception&) {
    throw UsageError(std::string("cannot parse ") + what + " '" + text + "' as a rational");
  }
}

std::vector<int> parse_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw UsageError("bad list entry '" + item + "'");
    }
  }
  return out;
}

ordered_json base_config(const Settings& s) {
  return {{"seed", s.seed}, {"threads", s.threads}, {"cap", s.cap}, {"eps1", s.eps1}, {"cprime", s.cprime}};
}

int cmd_count(const Settings& s, const Options& o) {
  auto cfg = base_config(s);
  cfg["nu"] = o.nu;
  Output out(s, "count", cfg);
  const auto in = graphs_only(read_input(s));
  auto rows = parallel_map(in, s.threads, [&](const hamsub::StreamEntry& e) {
    const Graph g = parse(e);
    auto rep = hamsub::ham_subsets_count(g, s.cap);
    if (o.nu) rep.nu = hamsub::count_all_cycles(g);
    return report::count(e.text, rep);
  });
  for (const auto& r : rows) out.emit(r);
  return 0;
}

int cmd_pxy(const Settings& s, const Options& o) {
  auto cfg = base_config(s);
  cfg["x"] = o.x;
  cfg["y"] = o.y;
  Output out(s, "pxy", cfg);
  const auto in = graphs_only(read_input(s));
  auto rows = parallel_map(in, s.threads, [&](const hamsub::StreamEntry& e) {
    const Graph g = parse(e);
    if (o.x < 0 || o.y < 0 || o.x >= g.order() || o.y >= g.order() || o.x == o.y)
      throw UsageError("line " + std::to_string(e.line) + ": x and y must be distinct vertices");
    const auto pc = hamsub::path_subsets_count(g, o.x, o.y, s.cap);
    return ordered_json{{"graph6", e.text}, {"x", pc.x}, {"y", pc.y}, {"p", report::big(pc.p)}};
  });
  for (const auto& r : rows) out.emit(r);
  return 0;
}

int cmd_formulas(const Settings& s, const Options& o) {
  if (o.d < 1) throw UsageError("--d must be >= 1");
  auto cfg = base_config(s);
  cfg["d"] = o.d;
  Output out(s, "formulas", cfg);
  out.emit({{"d", o.d},
            {"complete", report::big(hamsub::closed_form_complete(o.d))},
            {"glued", report::big(hamsub::closed_form_glued(o.d))},
            {"bipartite_dd", report::big(hamsub::closed_form_bipartite(o.d, o.d))},
            {"tuza_floor", report::big(hamsub::tuza_floor(o.d))}});
  return 0;
}

int cmd_analyze(const Settings& s, const Options&) {
  Output out(s, "analyze", base_config(s));
  const auto in = graphs_only(read_input(s));
  auto rows = parallel_map(in, s.threads, [&](const hamsub::StreamEntry& e) {
    const Graph g = parse(e);
    ordered_json j{{"graph6", e.text}, {"n", g.order()}, {"e", g.size()}};
    if (g.order() == 0) return j;
    const auto st = hamsub::degree_stats(g);
    j["average_degree"] = report::rational(st.average);
    j["min_degree"] = st.min;
    j["max_degree"] = st.max;
    j["components"] = hamsub::components(g).size();
    j["connectivity"] = hamsub::vertex_connectivity(g);
    const auto bd = hamsub::blocks(g);
    j["blocks"] = bd.blocks.size();
    j["cut_vertices"] = bd.cut_vertices;
    if (g.order() >= 3) {
      const auto pv = hamsub::posa_check(g);
      j["posa"] = {{"passes", pv.passes}, {"witness_index", pv.witness_index}};
    }
    if (g.order() <= s.cap) {
      j["hamiltonian"] = hamsub::is_hamiltonian(g);
      j["longest_cycle"] = hamsub::longest_cycle(g);
    }
    return j;
  });
  for (const auto& r : rows) out.emit(r);
  return 0;
}

hamsub::CertMode cert_mode(const std::string& m, int n) {
  if (m == "exact") return hamsub::CertMode::exact;
  if (m == "heuristic") return hamsub::CertMode::heuristic;
  return n <= hamsub::kExactExpanderCap ? hamsub::CertMode::exact : hamsub::CertMode::heuristic;
}

int cmd_certify(const Settings& s, const Options& o) {
  auto cfg = base_config(s);
  cfg["t"] = o.t;
  cfg["mode"] = o.mode;
  Output out(s, "certify", cfg);
  const auto in = graphs_only(read_input(s));
  hamsub::ExpansionProfile prof{s.eps1, o.t};
  hamsub::HeuristicEffort effort;
  effort.seed = s.seed;
  for (const auto& e : in) {
    const Graph g = parse(e);
    const auto mode = cert_mode(o.mode, g.order());
    if (mode == hamsub::CertMode::exact && g.order() > hamsub::kExactExpanderCap)
      throw hamsub::CapExceeded("exact expander certification", g.order(), hamsub::kExactExpanderCap);
    auto j = report::certificate(hamsub::is_expander(g, prof, mode, effort, s.threads));
    j["graph6"] = e.text;
    out.emit(j);
  }
  return 0;
}

int cmd_extract(const Settings& s, const Options& o) {
  auto cfg = base_config(s);
  cfg["C"] = o.big_c;
  Output out(s, "extract-expander", cfg);
  const auto in = graphs_only(read_input(s));
  hamsub::ExtractionParams params;
  params.eps1 = s.eps1;
  params.c_prime = s.cprime;
  params.C = o.big_c;
  params.effort.seed = s.seed;
  bool all_ok = true;
  for (const auto& e : in) {
    auto j = report::extraction(hamsub::extract_expander(parse(e), params));
    all_ok = all_ok && j["postconditions"]["all_ok"].get<bool>();
    j["graph6"] = e.text;
    out.emit(j);
  }
  return s.strict && !all_ok ? 1 : 0;
}

int cmd_find_structure(const Settings& s, const Options& o) {
  auto cfg = base_config(s);
  cfg["d"] = o.d_rational;
  Output out(s, "find-structure", cfg);
  const auto d = parse_rational(o.d_rational, "--d");
  for (const auto& e : graphs_only(read_input(s))) {
    const Graph g = parse(e);
    const auto rep = hamsub::find_structure(g, d);
    auto j = report::structure(rep);
    if (rep.witness) j["validation"] = report::verdict(hamsub::validate_witness(*rep.witness, g, d));
    j["graph6"] = e.text;
    out.emit(j);
  }
  return 0;
}

int cmd_build_web(const Settings& s, const Options& o) {
  auto cfg = base_config(s);
  cfg["h"] = {o.h0, o.h1, o.h2, o.h3};
  cfg["count"] = o.count;
  Output out(s, "build-web", cfg);
  const Graph g = single_graph(s);
  const auto grown = hamsub::grow_webs(g, o.h0, o.h1, o.h2, o.h3, o.count);
  ordered_json webs = ordered_json::array();
  for (const auto& w : grown.webs) {
    auto j = report::web(w);
    j["validation"] = report::verdict(hamsub::validate_web(w, g));
    webs.push_back(j);
  }
  out.emit({{"webs", webs}, {"diagnostics", grown.diagnostics}});
  return 0;
}

int cmd_build_cycle(const Settings& s, const Options& o) {
  auto cfg = base_config(s);
  cfg["mode"] = o.mode == "auto" ? "dense" : o.mode;
  const Graph g = single_graph(s);
  if (o.mode == "sparse") {
    cfg["k"] = o.k;
    cfg["r"] = o.r;
    cfg["z_size"] = o.z_size;
    Output out(s, "build-cycle", cfg);
    const auto far = hamsub::far_apart_set(g, o.k, o.z_size);
    std::vector<hamsub::Vertex> u;
    if (!o.u_list.empty()) {
      for (int i : parse_list(o.u_list)) {
        if (i < 0 || i >= static_cast<int>(far.z.size())) throw UsageError("--u index outside Z");
        u.push_back(far.z[i]);
      }
    } else {
      const int m = o.u_size > 0 ? std::min<int>(o.u_size, static_cast<int>(far.z.size())) : static_cast<int>(far.z.size());
      u.assign(far.z.begin(), far.z.begin() + m);
    }
    hamsub::SparseCycleParams p{o.r, o.k, o.length_bound, o.ball_gate};
    auto j = report::cycle_report(hamsub::build_cycle_sparse(g, far.z, u, p));
    if (!far.diagnostic.empty()) j["far_apart_diagnostic"] = far.diagnostic;
    out.emit(j);
    return 0;
  }
  if (o.mode != "dense" && o.mode != "auto") throw UsageError("--mode must be dense or sparse");
  cfg["h"] = {o.h0, o.h1, o.h2, o.h3};
  cfg["webs"] = o.count;
  cfg["coverage"] = o.coverage;
  Output out(s, "build-cycle", cfg);
  const auto grown = hamsub::grow_webs(g, o.h0, o.h1, o.h2, o.h3, o.count);
  std::vector<int> u = parse_list(o.u_list);
  if (o.u_list.empty())
    for (int i = 0; i < static_cast<int>(grown.webs.size()); ++i) u.push_back(i);
  hamsub::DenseCycleParams p;
  p.connector_length = o.connector;
  p.path_budget = o.path_budget;
  p.overuse_budget = o.overuse;
  p.coverage = o.coverage;
  auto j = report::cycle_report(hamsub::build_cycle_dense(g, grown.webs, u, p));
  j["webs_built"] = grown.webs.size();
  j["web_diagnostics"] = grown.diagnostics;
  out.emit(j);
  return 0;
}

int cmd_gen(const Settings& s, const Options& o) {
  auto cfg = base_config(s);
  cfg["model"] = o.model;
  cfg["n"] = o.n;
  cfg["count"] = o.count;
  std::vector<Graph> graphs;
  const hamsub::CounterRng rng{s.seed};
  for (int i = 0; i < std::max(o.count, 1); ++i) {
    const auto seed = rng.at(7, static_cast<std::uint64_t>(i));
    if (o.model == "gnp") {
      cfg["p"] = o.p;
      graphs.push_back(hamsub::gnp(o.n, o.p, seed));
    } else if (o.model == "regular") {
      cfg["d"] = o.d;
      try {
        graphs.push_back(hamsub::random_regular(o.n, o.d, seed));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    } else if (i == 0) {
      if (o.model == "complete") graphs.push_back(hamsub::complete(o.n));
      else if (o.model == "cycle") graphs.push_back(hamsub::cycle(o.n));
      else if (o.model == "path") graphs.push_back(hamsub::path_graph(o.n));
      else if (o.model == "petersen") graphs.push_back(hamsub::petersen());
      else if (o.model == "clique-pair") graphs.push_back(hamsub::clique_pair(o.d));
      else if (o.model == "figure1") graphs = hamsub::figure1_family(o.d);
      else if (o.model == "tiny") {
        cfg["min_degree"] = o.min_degree;
        graphs = hamsub::tiny_generate_graphs(o.n, o.min_degree);
      } else {
        throw UsageError("unknown model " + o.model);
      }
    }
  }
  Output out(s, "gen", cfg);
  for (const auto& g : graphs) {
    if (s.json) out.emit({{"graph6", hamsub::to_graph6(g)}});
    else out.raw(hamsub::to_graph6(g));
  }
  return 0;
}

int cmd_verify(const Settings& s, const Options& o, hamsub::VerifyMode mode) {
  auto cfg = base_config(s);
  cfg["d"] = o.d;
  if (mode == hamsub::VerifyMode::stability) cfg["alpha"] = o.alpha;
  cfg["strict"] = s.strict;
  Output out(s, std::string("verify-") + hamsub::to_string(mode), cfg);
  hamsub::VerifyOptions opt;
  opt.threads = s.threads;
  opt.rows = !s.csv.empty();
  opt.alpha = parse_rational(o.alpha, "--alpha");
  const auto rep = hamsub::verify_stream(mode, graphs_only(read_input(s)), o.d, opt);
  out.emit(report::verification(rep, s.timing));
  if (!s.csv.empty()) {
    std::ofstream csv(s.csv);
    if (!csv) throw UsageError("cannot write " + s.csv);
    csv << "graph6,n,e,min_degree,c,status\n";
    for (const auto& r : rep.rows)
      csv << '"' << r.graph6 << "\"," << r.n << ',' << r.e << ',' << r.min_degree << ',' << r.c << ',' << r.status
          << "\n";
  }
  return s.strict && !rep.clean() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hamiltonian subsets: counting, expanders, structures and verification"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file mirroring the flags");
  Settings s;
  Options o;
  app.add_flag("--json", s.json, "line-delimited JSON output");
  app.add_flag("--strict", s.strict, "exit 1 when violations are found");
  app.add_flag("--timing", s.timing, "include elapsed times");
  app.add_option("--seed", s.seed);
  app.add_option("--threads", s.threads)->check(CLI::Range(1, 256));
  app.add_option("--cap", s.cap, "largest order handled by the subset DP");
  app.add_option("--eps1", s.eps1);
  app.add_option("--cprime", s.cprime);
  app.add_option("-i,--input", s.input, "graph6 input file (default stdin)");
  app.add_option("--csv", s.csv, "per-graph CSV for verify subcommands");

  std::function<int()> action;
  auto sub = [&](const char* name, const char* help, std::function<int()> f) {
    auto* c = app.add_subcommand(name, help);
    c->callback([&action, f] { action = f; });
    return c;
  };

  auto* count = sub("count", "count Hamiltonian subsets", [&] { return cmd_count(s, o); });
  count->add_flag("--nu", o.nu, "also count cycles");
  auto* pxy = sub("pxy", "count subsets with a spanning x,y-path", [&] { return cmd_pxy(s, o); });
  pxy->add_option("--x", o.x);
  pxy->add_option("--y", o.y);
  auto* formulas = sub("formulas", "closed forms at d", [&] { return cmd_formulas(s, o); });
  formulas->add_option("--d", o.d)->required();
  sub("analyze", "degree, connectivity, blocks, Posa, longest cycle", [&] { return cmd_analyze(s, o); });
  auto* certify = sub("certify", "expander certificate", [&] { return cmd_certify(s, o); });
  certify->add_option("--t", o.t);
  certify->add_option("--mode", o.mode)->check(CLI::IsMember({"auto", "exact", "heuristic"}));
  auto* extract = sub("extract-expander", "expander subgraph extraction", [&] { return cmd_extract(s, o); });
  extract->add_option("--C", o.big_c);
  auto* fs = sub("find-structure", "two cycles, a long path or a sun", [&] { return cmd_find_structure(s, o); });
  fs->add_option("--d", o.d_rational)->required();
  auto* bw = sub("build-web", "grow webs with disjoint interiors", [&] { return cmd_build_web(s, o); });
  auto* bc = sub("build-cycle", "cycle through prescribed cores", [&] { return cmd_build_cycle(s, o); });
  for (auto* c : {bw, bc}) {
    c->add_option("--h0", o.h0);
    c->add_option("--h1", o.h1);
    c->add_option("--h2", o.h2);
    c->add_option("--h3", o.h3);
  }
  bw->add_option("--count", o.count);
  bc->add_option("--webs", o.count);
  bc->add_option("--mode", o.mode)->check(CLI::IsMember({"auto", "dense", "sparse"}));
  bc->add_option("--u", o.u_list, "comma-separated indices (webs, or positions in Z)");
  bc->add_option("--u-size", o.u_size);
  bc->add_option("--coverage", o.coverage);
  bc->add_option("--path-budget", o.path_budget);
  bc->add_option("--connector", o.connector);
  bc->add_option("--overuse", o.overuse);
  bc->add_option("--k", o.k);
  bc->add_option("--r", o.r);
  bc->add_option("--z-size", o.z_size);
  bc->add_option("--length-bound", o.length_bound);
  bc->add_option("--ball-gate", o.ball_gate);
  auto* gen = sub("gen", "generate graphs as graph6", [&] { return cmd_gen(s, o); });
  gen->add_option("--model", o.model)
      ->check(CLI::IsMember({"gnp", "regular", "complete", "cycle", "path", "petersen", "clique-pair", "figure1", "tiny"}));
  gen->add_option("--n", o.n);
  gen->add_option("--p", o.p);
  gen->add_option("--d", o.d);
  gen->add_option("--count", o.count);
  gen->add_option("--min-degree", o.min_degree);
  for (auto [name, mode] : {std::pair{"verify-komlos", hamsub::VerifyMode::komlos},
                            std::pair{"verify-bipartite", hamsub::VerifyMode::bipartite},
                            std::pair{"verify-stability", hamsub::VerifyMode::stability}}) {
    auto* v = sub(name, "scan a graph6 stream", [&, mode] { return cmd_verify(s, o, mode); });
    v->add_option("--d", o.d)->required();
    if (mode == hamsub::VerifyMode::stability) v->add_option("--alpha", o.alpha);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  try {
    if (s.cap > hamsub::kDeskCap || s.cap < 1)
      throw UsageError("--cap must lie in [1, " + std::to_string(hamsub::kDeskCap) + "]");
    return action();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const hamsub::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
  } catch (const hamsub::Graph6Error& e) {
    std::cerr << "malformed graph6: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
  }
  return 2;
}
