#pragma once

#include <cstdint>
#include <random>

#include "rkep/graph.hpp"

namespace rkep {

/// Uniform random digraph: every arc (i, j) with j a pair and i != j is kept
/// with probability p. Candidates are visited source-major, so the same seed
/// always gives the same graph.
inline CompatibilityGraph generate_instance(int num_pairs, int num_ndds, double p, std::uint64_t seed) {
  if (num_pairs < 0 || num_ndds < 0) throw Error("vertex counts must be non-negative");
  if (!(p >= 0.0 && p <= 1.0)) throw Error("arc density must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::vector<Arc> arcs;
  for (Vertex i = 0; i < num_pairs + num_ndds; ++i)
    for (Vertex j = 0; j < num_pairs; ++j) {
      if (i == j) continue;
      const double draw = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (draw < p) arcs.push_back({i, j});
    }
  return CompatibilityGraph(num_pairs, num_ndds, std::move(arcs));
}

}  // namespace rkep
