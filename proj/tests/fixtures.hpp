#pragma once

// Shared structure fixtures for the structures suite and the acceptance run.

#include <random>
#include <vector>

#include "hamsub/constructors.hpp"
#include "hamsub/walk.hpp"

namespace fixture {

using namespace hamsub;

// C_a on 0..a-1 with one ray a+j per entry of `indices`, adjacent to the two
// cycle neighbours of x_{indices[j]}.
inline std::pair<Graph, Sun> sun_graph(int a, const std::vector<int>& indices) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < a; ++i) e.emplace_back(i, (i + 1) % a);
  Sun s;
  for (Vertex i = 0; i < a; ++i) s.cycle.push_back(i);
  for (std::size_t j = 0; j < indices.size(); ++j) {
    const Vertex y = a + static_cast<Vertex>(j);
    const int i = indices[j];
    e.emplace_back(y, (i + a - 1) % a);
    e.emplace_back(y, (i + 1) % a);
    s.ray_indices.push_back(i);
    s.rays.push_back(y);
  }
  return {Graph(a + static_cast<int>(indices.size()), e), s};
}

// Ray indices with cyclic gaps of at least two.
inline std::vector<int> spaced_indices(std::mt19937_64& rng, int a) {
  std::vector<int> out;
  for (int i = 0; i < a; ++i) {
    if (rng() % 2) continue;
    if (!out.empty() && i - out.back() < 2) continue;
    if (!out.empty() && out.front() + a - i < 2) continue;
    out.push_back(i);
  }
  return out;
}

// C_60 with chords {i, i+17} for even i.
inline Graph chorded_cycle() {
  std::vector<Edge> e;
  for (Vertex i = 0; i < 60; ++i) e.emplace_back(i, (i + 1) % 60);
  for (Vertex i = 0; i < 60; i += 2) e.emplace_back(i, (i + 17) % 60);
  return Graph(60, e);
}

}  // namespace fixture
