#include <gtest/gtest.h>

#include "hamsub/constructors.hpp"
#include "hamsub/expander.hpp"
#include "hamsub/random.hpp"
#include "support.hpp"

using namespace hamsub;

namespace {

Graph barbell(int k) {
  auto e = disjoint_union(complete(k), complete(k)).edges();
  e.emplace_back(k - 1, k);
  return Graph(2 * k, e);
}

// Exhaustive minimum over the window of |Gamma(X)| - eps(|X|)|X|.
double worst_margin(const Graph& g, const ExpansionProfile& p) {
  const auto [lo, hi] = p.window(g.order());
  double worst = std::numeric_limits<double>::infinity();
  for (std::uint32_t s = 1; s < (1U << g.order()); ++s) {
    const int k = __builtin_popcount(s);
    if (k < lo || k > hi) continue;
    std::uint32_t gamma = 0;
    for (Vertex v : oracle::members(s))
      for (Vertex w : g.neighbors(v)) gamma |= 1U << w;
    gamma &= ~s;
    worst = std::min(worst, __builtin_popcount(gamma) - p.epsilon(k) * k);
  }
  return worst;
}

}  // namespace

TEST(Epsilon, Examples) {
  const ExpansionProfile p{1.0, 6.0};
  EXPECT_EQ(p.epsilon(1.0), 0.0);
  EXPECT_NEAR(p.epsilon(6.0), 1 / std::pow(std::log(15.0), 2), 1e-12);
  EXPECT_NEAR(p.epsilon(6.0), 0.1363, 1e-4);
  EXPECT_THROW(p.epsilon(0), std::invalid_argument);
  EXPECT_THROW((ExpansionProfile{0, 1}.validate()), std::invalid_argument);
  EXPECT_THROW((ExpansionProfile{0.5, -1}.validate()), std::invalid_argument);
}

TEST(Epsilon, ShapeOnGrid) {
  for (double t : {1.0, 3.0, 20.0}) {
    const ExpansionProfile p{1.0 / 130, t};
    double prev = -1;
    for (int i = 1; i <= 10000; ++i) {
      const double x = t / 5 + (t * 200) * i / 10000.0;
      const double e = p.epsilon(x);
      EXPECT_GT(e, 0);
      // eps decreases on [t/5, inf) away from the pole at x = t/15
      if (prev >= 0) EXPECT_LE(e, prev + 1e-15);
      prev = e;
      // x eps(x) grows once ln(15x/t) > 2
      if (15 * x / t > std::exp(2.0)) {
        const double x2 = x * 1.01;
        EXPECT_GE(p.epsilon(x2) * x2, e * x - 1e-12);
      }
    }
    EXPECT_EQ(p.epsilon(t / 6), 0.0);
  }
}

TEST(Certify, CompleteGraphPasses) {
  const ExpansionProfile p{1.0 / 64, 2};
  const auto c = is_expander(complete(12), p, CertMode::exact);
  EXPECT_TRUE(c.pass);
  EXPECT_EQ(c.mode, CertMode::exact);
  EXPECT_GE(worst_margin(complete(12), p), 0);
}

TEST(Certify, BarbellAtExamplePassesNumerically) {
  // eps(8) * 8 = 0.119 here, so the single bridge edge is enough.
  const ExpansionProfile p{0.25, 2};
  EXPECT_TRUE(is_expander(barbell(8), p, CertMode::exact).pass);
  EXPECT_GE(worst_margin(barbell(8), p), 0);
}

TEST(Certify, BarbellFailsWithSteeperProfile) {
  const ExpansionProfile p{1.0, 16};
  const Graph g = barbell(8);
  const auto c = is_expander(g, p, CertMode::exact);
  ASSERT_FALSE(c.pass);
  ASSERT_TRUE(c.violating_set);
  EXPECT_EQ(c.violating_set->size(), 8u);
  EXPECT_EQ(c.boundary, 1u);
  EXPECT_TRUE(recheck_violation(g, p, *c.violating_set));
  EXPECT_LT(worst_margin(g, p), 0);
  const auto h = is_expander(g, p, CertMode::heuristic);
  EXPECT_FALSE(h.pass);
  EXPECT_TRUE(recheck_violation(g, p, *h.violating_set));
}

TEST(Certify, EmptyWindowIsVacuous) {
  const ExpansionProfile p{1.0, 40};
  EXPECT_TRUE(is_expander(Graph(10), p, CertMode::exact).pass);
  EXPECT_TRUE(is_expander(cycle(30), p, CertMode::heuristic).pass);
}

TEST(Certify, ExactCapEnforced) {
  EXPECT_THROW(is_expander(complete(kExactExpanderCap + 1), {}, CertMode::exact), CapExceeded);
}

TEST(Certify, ExactAgreesWithEnumerationOracle) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 13);
    const Graph g = oracle::random_graph(rng, n, 0.15 + 0.5 * static_cast<double>(rng() % 100) / 100);
    const ExpansionProfile p{0.3 + 0.7 * static_cast<double>(rng() % 100) / 100, 1.0 + static_cast<double>(rng() % 10)};
    const auto c = is_expander(g, p, CertMode::exact);
    const double margin = worst_margin(g, p);
    if (c.pass) {
      EXPECT_GE(margin, -1e-9) << to_graph6(g);
    } else {
      EXPECT_TRUE(recheck_violation(g, p, *c.violating_set));
      EXPECT_LT(margin, 0);
    }
    const auto threaded = is_expander(g, p, CertMode::exact, {}, 4);
    EXPECT_EQ(threaded.pass, c.pass);
  }
}

TEST(Certify, HeuristicFailuresAlwaysRecheck) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 20 + static_cast<int>(rng() % 60);
    const Graph g = oracle::random_graph(rng, n, 0.05 + 0.1 * static_cast<double>(rng() % 10) / 10);
    const ExpansionProfile p{1.0, 4};
    const auto c = is_expander(g, p, CertMode::heuristic, {trial + 1u});
    EXPECT_EQ(c.mode, CertMode::heuristic);
    if (!c.pass) EXPECT_TRUE(recheck_violation(g, p, *c.violating_set));
  }
}

TEST(Extract, CompleteGraph) {
  const auto r = extract_expander(complete(10));
  EXPECT_EQ(r.subgraph.graph, complete(10));
  EXPECT_TRUE(r.post.all_ok());
  EXPECT_FALSE(r.heuristic);
  EXPECT_EQ(r.refinements, 0);
}

TEST(Extract, UnionOfSmallCliquesGivesOneComponent) {
  Graph g = complete(6);
  for (int i = 1; i < 20; ++i) g = disjoint_union(g, complete(6));
  const auto r = extract_expander(g);
  EXPECT_EQ(r.subgraph.graph, complete(6));
  EXPECT_EQ(r.d_out, Rational(5));
  EXPECT_TRUE(r.post.all_ok());
  EXPECT_GE(r.refinements, 1);
}

TEST(Extract, BarbellIsKeptWhole) {
  const auto r = extract_expander(barbell(10));
  EXPECT_EQ(r.subgraph.graph.order(), 20);
  EXPECT_TRUE(r.post.expansion.pass);
  EXPECT_EQ(r.post.expansion.mode, CertMode::exact);
  EXPECT_TRUE(r.post.all_ok());
}

TEST(Extract, Preconditions) {
  EXPECT_THROW(extract_expander(Graph(5)), std::invalid_argument);
  ExtractionParams bad;
  bad.C = 12;
  EXPECT_THROW(extract_expander(complete(5), bad), std::invalid_argument);
  bad = {};
  bad.eps1 = 0.5;
  EXPECT_THROW(extract_expander(complete(5), bad), std::invalid_argument);
  bad = {};
  bad.c_prime = 0.5;
  EXPECT_THROW(extract_expander(complete(5), bad), std::invalid_argument);
}

TEST(Extract, PostconditionsHoldOnRandomGraphs) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const int n = 10 + static_cast<int>(seed * 7 % 90);
    const Graph g = gnp(n, 0.08 + 0.02 * static_cast<double>(seed % 5), seed);
    if (g.size() == 0) continue;
    const auto r = extract_expander(g);
    const Graph& h = r.subgraph.graph;
    ASSERT_GT(h.order(), 0);
    EXPECT_GE(Rational(2 * degree_stats(h).min), r.d_out);
    EXPECT_GE(to_double(r.d_out), (1 - r.params.eps0()) * to_double(r.d_in) - 1e-12);
    EXPECT_GE(vertex_connectivity(h), r.post.connectivity_needed);
    EXPECT_TRUE(r.post.all_ok()) << "seed " << seed;
    for (std::size_t i = 0; i < r.subgraph.to_parent.size(); ++i)
      for (std::size_t j = i + 1; j < r.subgraph.to_parent.size(); ++j)
        ASSERT_EQ(h.adjacent(static_cast<Vertex>(i), static_cast<Vertex>(j)),
                  g.adjacent(r.subgraph.to_parent[i], r.subgraph.to_parent[j]));
  }
}

TEST(Connect, Examples) {
  const ExpansionProfile p{1.0 / 130, 2};
  const auto k = connect_avoiding(complete(12), {0}, {5}, {}, p);
  EXPECT_EQ(k.path.size(), 2u);
  EXPECT_FALSE(k.hypotheses_met);
  const auto c = connect_avoiding(cycle(20), {0}, {10}, {}, p);
  EXPECT_EQ(c.path.size(), 11u);
  EXPECT_EQ(c.length(), 10);
  const auto blocked = connect_avoiding(cycle(20), {0}, {10}, {5, 15}, p);
  EXPECT_TRUE(blocked.path.empty());
  EXPECT_EQ(blocked.length(), -1);
  EXPECT_THROW(connect_avoiding(cycle(5), {}, {1}, {}, p), std::invalid_argument);
}

TEST(Connect, BoundHoldsWhenHypothesesMet) {
  const Graph g = random_regular(200, 6, 3);
  const ExpansionProfile p{1.0, 16};
  const auto cert = is_expander(g, p, CertMode::heuristic);
  ASSERT_TRUE(cert.pass);
  VertexSet x, xp;
  for (Vertex v = 0; v < 100; ++v) x.push_back(v);
  for (Vertex v = 100; v < 200; ++v) xp.push_back(v);
  const auto r = connect_avoiding(g, x, xp, {0}, p, &cert);
  EXPECT_TRUE(r.hypotheses_met);
  EXPECT_TRUE(r.within_bound);
  EXPECT_LE(r.length(), r.bound);
  EXPECT_NEAR(r.bound, connector_bound(p, 200), 1e-9);
  // The example's sizes (|X| = 20, |W| = 3) exceed eps(20) * 20 / 4 at every admissible profile.
  VertexSet x20(x.begin(), x.begin() + 20), y20(xp.begin(), xp.begin() + 20);
  const auto e = connect_avoiding(g, x20, y20, {190, 191, 192}, p, &cert);
  EXPECT_FALSE(e.hypotheses_met);
  EXPECT_FALSE(e.path.empty());
}

TEST(Connect, WrongCertificateProfileIsNotTrusted) {
  const Graph g = complete(12);
  const ExpansionProfile p{1.0, 4};
  const auto cert = is_expander(g, ExpansionProfile{0.5, 4}, CertMode::exact);
  const auto r = connect_avoiding(g, {0, 1, 2, 3, 4, 5}, {6, 7, 8, 9, 10, 11}, {}, p, &cert);
  EXPECT_FALSE(r.hypotheses_met);
}
