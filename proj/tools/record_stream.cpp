// Writes every isomorphism class with minimum degree >= k on n_min..n_max
// vertices as graph6, one per line, in increasing order and canonical form.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hamsub/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"record an isomorph-free graph6 stream"};
  int k = 3, n_min = 4, n_max = 9;
  std::string out_path;
  app.add_option("--min-degree", k);
  app.add_option("--n-min", n_min);
  app.add_option("--n-max", n_max)->check(CLI::Range(1, hamsub::kCanonicalMaxOrder));
  app.add_option("-o,--output", out_path)->required();
  CLI11_PARSE(app, argc, argv);

  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return 2;
  }
  // levels[j] holds all classes on the current order with minimum degree >= j.
  std::vector<std::vector<hamsub::Graph>> levels(static_cast<std::size_t>(k) + 1);
  levels[0] = {hamsub::Graph(1, {})};
  for (int n = 2; n <= n_max; ++n) {
    for (int j = k; j >= 0; --j) levels[j] = hamsub::augment_min_degree(levels[std::max(j - 1, 0)], j);
    if (n < n_min) continue;
    for (const auto& g : levels[k]) out << hamsub::to_graph6(g) << "\n";
    std::cerr << "n=" << n << ": " << levels[k].size() << " graphs\n";
  }
  return 0;
}
