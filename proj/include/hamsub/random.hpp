#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "hamsub/graph.hpp"

namespace hamsub {

// Counter-based generator: the value for (seed, stream, index) is a pure
// function, so sample i can be drawn on any worker.
struct CounterRng {
  std::uint64_t seed = 0;

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t at(std::uint64_t stream, std::uint64_t index) const {
    return mix(mix(seed ^ mix(stream)) + index);
  }
};

inline Graph gnp(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) e.emplace_back(u, v);
  return Graph(n, e);
}

// Uniform-ish random d-regular simple graph by the Steger-Wormald pairing:
// points are paired at random, rejecting loops and repeated edges, with a
// restart when the remaining points admit no legal pair.
inline Graph random_regular(int n, int d, std::uint64_t seed) {
  if (d < 0 || d >= n || (static_cast<long long>(n) * d) % 2 != 0)
    throw std::invalid_argument("random_regular: need 0 <= d < n and n*d even");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Vertex> points;
    points.reserve(static_cast<std::size_t>(n) * d);
    for (Vertex v = 0; v < n; ++v)
      for (int k = 0; k < d; ++k) points.push_back(v);
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
    auto linked = [&](Vertex a, Vertex b) {
      const auto& r = adj[a];
      return std::find(r.begin(), r.end(), b) != r.end();
    };
    std::vector<Edge> edges;
    bool stuck = false;
    while (!points.empty() && !stuck) {
      bool placed = false;
      for (int tries = 0; tries < 64 && !placed; ++tries) {
        std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
        std::size_t i = pick(rng), j = pick(rng);
        Vertex a = points[i], b = points[j];
        if (i == j || a == b || linked(a, b)) continue;
        adj[a].push_back(b);
        adj[b].push_back(a);
        edges.emplace_back(a, b);
        if (i < j) std::swap(i, j);
        points[i] = points.back();
        points.pop_back();
        points[j] = points.back();
        points.pop_back();
        placed = true;
      }
      if (placed) continue;
      // Exhaustive check for any legal pair before giving up on this attempt.
      stuck = true;
      for (std::size_t i = 0; i < points.size() && stuck; ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
          if (points[i] != points[j] && !linked(points[i], points[j])) {
            stuck = false;
            break;
          }
    }
    if (!stuck) return Graph(n, edges);
  }
  throw std::runtime_error("random_regular: pairing failed repeatedly");
}

}  // namespace hamsub
