#pragma once

#include <random>
#include <vector>

#include "rkep/graph.hpp"

namespace rkep::testing {

// Three pairs 0,1,2 and one donor 3: the donor feeds a path through all pairs
// and the last two pairs also form a 2-cycle.
inline CompatibilityGraph strength_graph() {
  return CompatibilityGraph(3, 1, {{3, 0}, {0, 1}, {1, 2}, {2, 1}});
}

inline CompatibilityGraph complete_pairs(int n) {
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) arcs.push_back({i, j});
  return CompatibilityGraph(n, 0, arcs);
}

/// Small random graph independent of the bench generator.
inline CompatibilityGraph random_graph(std::mt19937_64& rng, int pairs, int ndds, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Arc> arcs;
  for (int i = 0; i < pairs + ndds; ++i)
    for (int j = 0; j < pairs; ++j)
      if (i != j && coin(rng)) arcs.push_back({i, j});
  return CompatibilityGraph(pairs, ndds, arcs);
}

}  // namespace rkep::testing
