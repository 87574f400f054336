#pragma once

#include <cstdint>

#include "graphlift/graph.hpp"

namespace graphlift {

// Deterministic builders for tests and benchmarks.

Graph path_graph(std::uint32_t n);
Graph cycle_graph(std::uint32_t n);
Graph complete_graph(std::uint32_t n);
/// Star with the hub at vertex 0.
Graph star_graph(std::uint32_t leaves);
/// Complete graph on four vertices minus one edge (two degree-3 apexes).
Graph diamond_graph();
Graph petersen_graph();

/// Erdos-Renyi G(n, p) with a fixed seed.
Graph erdos_renyi(std::uint32_t n, double p, std::uint64_t seed);
/// Retries seeds deterministically (seed, seed+1, ...) until connected.
Graph erdos_renyi_connected(std::uint32_t n, double p, std::uint64_t seed);
/// Preferential attachment: seed clique on m+1 vertices, every later vertex
/// attaches to m distinct existing vertices chosen by degree.
Graph preferential_attachment(std::uint32_t n, std::uint32_t m, std::uint64_t seed);

}  // namespace graphlift
