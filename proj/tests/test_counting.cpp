#include <gtest/gtest.h>

#include "hamsub/constructors.hpp"
#include "hamsub/counting.hpp"
#include "hamsub/random.hpp"
#include "support.hpp"

using namespace hamsub;

namespace {

Graph random_tree(std::mt19937_64& rng, int n) {
  std::vector<Edge> e;
  for (Vertex v = 1; v < n; ++v) e.emplace_back(static_cast<Vertex>(rng() % v), v);
  return Graph(n, e);
}

BigInt binomial_tail(int n, int from) {
  BigInt s = 0;
  for (int k = from; k <= n; ++k) s += binomial(n, k);
  return s;
}

}  // namespace

TEST(Count, Examples) {
  EXPECT_EQ(ham_subsets_count(complete(4)).c, 5);
  EXPECT_EQ(ham_subsets_count(cycle(7)).c, 1);
  EXPECT_EQ(ham_subsets_count(clique_pair(3)).c, 6);
  std::mt19937_64 rng(1);
  EXPECT_EQ(ham_subsets_count(random_tree(rng, 10)).c, 0);
  const auto r = ham_subsets_count(complete(4));
  EXPECT_EQ(r.by_size.at(3), 4);
  EXPECT_EQ(r.by_size.at(4), 1);
}

TEST(Count, ReportInvariants) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = static_cast<int>(rng() % 12);
    const Graph g = oracle::random_graph(rng, n, 0.45);
    const auto r = ham_subsets_count(g);
    BigInt sum = 0;
    for (const auto& [k, v] : r.by_size) {
      EXPECT_GE(k, 3);
      sum += v;
    }
    EXPECT_EQ(sum, r.c);
    EXPECT_EQ(r.weak, r.c + g.size() + n + 1);
    EXPECT_LE(r.c, pow2(static_cast<unsigned>(n)));
  }
}

TEST(Count, CapIsEnforced) {
  EXPECT_THROW(ham_subsets_count(cycle(kDeskCap + 1)), CapExceeded);
  EXPECT_THROW(ham_subsets_count(complete(12), 10), CapExceeded);
  EXPECT_THROW(count_all_cycles(cycle(kCycleCensusCap + 1)), CapExceeded);
  EXPECT_THROW(ham_subsets_count_naive(cycle(21)), CapExceeded);
  try {
    ham_subsets_count(cycle(kDeskCap + 1));
  } catch (const CapExceeded& e) {
    EXPECT_EQ(e.order(), kDeskCap + 1);
    EXPECT_EQ(e.cap(), kDeskCap);
  }
}

TEST(Count, MatchesBacktrackingOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = static_cast<int>(rng() % 10);
    const double p = 0.2 + 0.7 * static_cast<double>(rng() % 100) / 100;
    const Graph g = oracle::random_graph(rng, n, p);
    ASSERT_EQ(ham_subsets_count(g).c, oracle::count_hamiltonian_subsets(g)) << to_graph6(g);
  }
}

TEST(Count, NaiveEnumerationAgrees) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = oracle::random_graph(rng, static_cast<int>(rng() % 10), 0.5);
    ASSERT_EQ(ham_subsets_count(g).c, ham_subsets_count_naive(g));
  }
}

TEST(Count, LargerRandomGraph) {
  const Graph g = gnp(14, 0.5, 9);
  EXPECT_EQ(ham_subsets_count(g).c, ham_subsets_count_naive(g));
}

TEST(Hamiltonian, CycleWitness) {
  EXPECT_TRUE(is_hamiltonian(cycle(9)));
  EXPECT_FALSE(is_hamiltonian(petersen()));
  EXPECT_FALSE(is_hamiltonian(complete(2)));
  const auto c = hamiltonian_cycle(complete_bipartite(4, 4));
  EXPECT_EQ(c.size(), 8u);
  EXPECT_TRUE(oracle::is_cycle_in(complete_bipartite(4, 4), c));
  EXPECT_TRUE(hamiltonian_cycle(petersen()).empty());
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 9);
    const Graph g = oracle::random_graph(rng, n, 0.5);
    std::vector<Vertex> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    const bool truth = oracle::hamiltonian_subset(oracle::matrix(g), all);
    ASSERT_EQ(is_hamiltonian(g), truth);
    const auto w = hamiltonian_cycle(g);
    ASSERT_EQ(!w.empty(), truth);
    if (truth) {
      ASSERT_EQ(static_cast<int>(w.size()), n);
      ASSERT_TRUE(oracle::is_cycle_in(g, w));
    }
  }
}

TEST(PathCount, Examples) {
  EXPECT_EQ(path_subsets_count(complete(3), 0, 1).p, 2);
  EXPECT_EQ(path_subsets_count(path_graph(3), 0, 2).p, 1);
  for (Vertex x = 0; x < 4; ++x)
    for (Vertex y = 0; y < 4; ++y)
      if (x != y) EXPECT_EQ(path_subsets_count(complete(4), x, y).p, 4);
  EXPECT_EQ(path_subsets_count(Graph(3), 0, 2).p, 0);
  EXPECT_THROW(path_subsets_count(complete(3), 1, 1), std::invalid_argument);
  EXPECT_THROW(path_subsets_count(complete(3), 0, 3), std::out_of_range);
}

TEST(PathCount, MatchesOracle) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 8);
    const Graph g = oracle::random_graph(rng, n, 0.5);
    const Vertex x = static_cast<Vertex>(rng() % n);
    Vertex y = static_cast<Vertex>(rng() % n);
    if (x == y) y = (y + 1) % n;
    const auto p = path_subsets_count(g, x, y).p;
    ASSERT_EQ(p, oracle::count_path_subsets(g, x, y)) << to_graph6(g) << " " << x << " " << y;
    ASSERT_LE(p, pow2(static_cast<unsigned>(n - 2)));
  }
}

TEST(Weak, Examples) {
  EXPECT_EQ(weak_ham_count(complete(4)), 16);
  EXPECT_EQ(weak_ham_count(complete(3)), 8);
  EXPECT_EQ(weak_ham_count(Graph(5)), 6);
  for (int d = 2; d <= 10; ++d) EXPECT_EQ(weak_ham_count(complete(d + 1)), pow2(static_cast<unsigned>(d + 1)));
}

TEST(Cycles, Examples) {
  EXPECT_EQ(count_all_cycles(complete(4)), 7);
  EXPECT_EQ(oracle::count_cycles(complete(4)), 7u);
  EXPECT_EQ(count_all_cycles(cycle(9)), 1);
  std::mt19937_64 rng(7);
  EXPECT_EQ(count_all_cycles(random_tree(rng, 12)), 0);
  EXPECT_EQ(count_all_cycles(Graph(0)), 0);
}

TEST(Cycles, MatchesOracle) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = static_cast<int>(rng() % 10);
    const Graph g = oracle::random_graph(rng, n, 0.5);
    ASSERT_EQ(count_all_cycles(g), oracle::count_cycles(g)) << to_graph6(g);
  }
}

TEST(Cycles, CompleteGraphClosedForm) {
  // Cycles of K_n: sum over k >= 3 of C(n,k) (k-1)!/2.
  for (int n = 3; n <= 12; ++n) {
    BigInt expected = 0;
    for (int k = 3; k <= n; ++k) {
      BigInt f = 1;
      for (int i = 2; i < k; ++i) f *= i;
      expected += binomial(n, k) * f / 2;
    }
    EXPECT_EQ(count_all_cycles(complete(n)), expected) << n;
  }
}

TEST(Cycles, AhrensBounds) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 8);
    const Graph g = oracle::random_graph(rng, n, 0.5);
    if (!is_connected(g)) continue;
    const long long r = static_cast<long long>(g.size()) - n + 1;
    const BigInt nu = count_all_cycles(g);
    EXPECT_GE(nu, r);
    EXPECT_LE(nu, pow2(static_cast<unsigned>(r)) - 1);
  }
}

TEST(Monotonicity, AddingAnEdgeNeverDecreasesCounts) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 8);
    const Graph g = oracle::random_graph(rng, n, 0.4);
    std::vector<Edge> missing;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (!g.adjacent(u, v)) missing.emplace_back(u, v);
    if (missing.empty()) continue;
    auto e = g.edges();
    e.push_back(missing[rng() % missing.size()]);
    const Graph h(n, e);
    EXPECT_LE(ham_subsets_count(g).c, ham_subsets_count(h).c);
    EXPECT_LE(weak_ham_count(g), weak_ham_count(h));
    EXPECT_LE(count_all_cycles(g), count_all_cycles(h));
    EXPECT_LE(path_subsets_count(g, 0, 1).p, path_subsets_count(h, 0, 1).p);
  }
}

TEST(CutAdditivity, CountIsSumOverBlocks) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = static_cast<int>(rng() % 10);
    const Graph g = oracle::random_graph(rng, n, 0.3);
    BigInt sum = 0;
    for (const auto& b : blocks(g).blocks) sum += ham_subsets_count(induced_subgraph(g, b).graph).c;
    ASSERT_EQ(ham_subsets_count(g).c, sum) << to_graph6(g);
  }
}

TEST(ClosedForms, Examples) {
  EXPECT_EQ(closed_form_complete(5), 42);
  EXPECT_EQ(closed_form_complete(5), binomial_tail(6, 3));
  EXPECT_EQ(closed_form_glued(3), 6);
  EXPECT_EQ(closed_form_bipartite(3, 3), 10);
  EXPECT_EQ(closed_form_bipartite(2, 2), 1);
  EXPECT_EQ(tuza_floor(4), 4);
  EXPECT_EQ(tuza_floor(3), 3);
  EXPECT_EQ(tuza_floor(5), 6);
  EXPECT_EQ(closed_form_complete(200), binomial_tail(201, 3));
}

TEST(ClosedForms, AgreeWithDp) {
  for (int d = 2; d <= 10; ++d) {
    EXPECT_EQ(ham_subsets_count(complete(d + 1)).c, closed_form_complete(d)) << d;
    EXPECT_EQ(closed_form_complete(d), binomial_tail(d + 1, 3));
  }
  for (int d = 2; d <= 8; ++d) EXPECT_EQ(ham_subsets_count(clique_pair(d)).c, closed_form_glued(d)) << d;
  for (int a = 2; a <= 6; ++a)
    for (int b = a; b <= 6; ++b)
      EXPECT_EQ(ham_subsets_count(complete_bipartite(a, b)).c, closed_form_bipartite(a, b)) << a << "," << b;
}

TEST(ClosedForms, TuzaFloorIsCeilingOfRoot) {
  for (int d = 0; d <= 120; ++d) {
    const BigInt r = tuza_floor(d);
    const BigInt sq = pow2(static_cast<unsigned>(d));
    EXPECT_GE(r * r, sq);
    EXPECT_LT((r - 1) * (r - 1), sq);
  }
}

TEST(Estimate, CompleteGraphFraction) {
  const auto est = ham_fraction_estimate(complete(12), 10000, 42);
  const double exact = (4096.0 - 66 - 12 - 1 - 1) / 4096.0;
  EXPECT_NEAR(to_double(est.estimate), exact, 0.02);
  EXPECT_GT(est.half_width, 0);
  EXPECT_EQ(est.samples, 10000u);
}

TEST(Estimate, SparseAndEmpty) {
  EXPECT_LE(to_double(ham_fraction_estimate(cycle(20), 2000, 1).estimate), 1.0 / 1024);
  EXPECT_EQ(ham_fraction_estimate(Graph(6), 500, 1).hits, 0u);
  EXPECT_THROW(ham_fraction_estimate(complete(4), 0, 1), std::invalid_argument);
}

TEST(Estimate, DeterministicPerSeed) {
  const Graph g = gnp(16, 0.4, 3);
  EXPECT_EQ(ham_fraction_estimate(g, 3000, 5).hits, ham_fraction_estimate(g, 3000, 5).hits);
}
