#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "graphlift/catalog.hpp"
#include "graphlift/graph.hpp"
#include "graphlift/start_distribution.hpp"

namespace graphlift {

/// Exact per-type counts of connected induced k-vertex subgraphs.
struct ExactCounts {
  const Catalog* catalog = nullptr;
  std::vector<std::uint64_t> by_type;  // indexed by type index - 1
  std::uint64_t total = 0;

  std::uint64_t count_of(const GraphletType& type) const {
    return by_type.at(static_cast<std::size_t>(type.index - 1));
  }
};

struct ExactCountOptions {
  /// Abort (InfeasibleError) once more subgraphs than this have been seen.
  std::uint64_t max_subgraphs = 100'000'000;
};

/// Enumerate every connected induced k-vertex subgraph exactly once and
/// classify it. Runtime is linear in the number of such subgraphs.
ExactCounts exact_count(const Graph& g, int k, const ExactCountOptions& options = {});

/// The same counts by testing all k-subsets; reference for tests, only
/// viable on small graphs.
ExactCounts exact_count_bruteforce(const Graph& g, int k);

/// Visit every connected induced k-vertex subgraph exactly once. Vertex order
/// within a visit is the enumeration's discovery order, not sorted.
void for_each_connected_subset(const Graph& g, int k,
                               const std::function<void(const InducedSubgraph&)>& visit);

/// An edge from the grown set to the outside: the outside endpoint and the
/// position (in visit order) of the inside endpoint.
struct SequenceBoundaryEdge {
  VertexId outside;
  std::uint8_t inside;
};

/// Walk every ordered vertex sequence the growth process can produce, with
/// its probability: the start weight of the first vertex over K, then per
/// step (edges from the adopted vertex into the prefix) / (boundary size of
/// the prefix). Boundaries are recomputed from the host adjacency at every
/// level, independently of the sampling code, so this doubles as its oracle.
/// visit(vertices, probability, boundary edges of the full sequence).
template <class Scalar, class Visit>
void for_each_sequence(const Graph& g, int k, const StartDistribution& start,
                       Visit&& visit) {
  if (k < 1 || k > kMaxGraphletSize) {
    throw std::invalid_argument("sequence length must be between 1 and 7");
  }
  std::vector<VertexId> verts;
  verts.reserve(static_cast<std::size_t>(k));
  std::vector<SequenceBoundaryEdge> boundary;

  auto rebuild_boundary = [&] {
    boundary.clear();
    for (std::size_t i = 0; i < verts.size(); ++i) {
      for (VertexId w : g.adjacency(verts[i])) {
        bool inside = false;
        for (VertexId v : verts) inside = inside || v == w;
        if (!inside) boundary.push_back({w, static_cast<std::uint8_t>(i)});
      }
    }
  };

  auto recurse = [&](auto&& self, const Scalar& prob) -> void {
    rebuild_boundary();
    if (static_cast<int>(verts.size()) == k) {
      visit(std::span<const VertexId>(verts), prob,
            std::span<const SequenceBoundaryEdge>(boundary));
      return;
    }
    const std::size_t b = boundary.size();
    // group boundary edges by outside endpoint; multiplicity is the factor
    std::map<VertexId, int> multiplicity;
    for (const auto& be : boundary) ++multiplicity[be.outside];
    for (const auto& [u, c] : multiplicity) {
      const Scalar child = prob * Scalar(c) / Scalar(static_cast<std::int64_t>(b));
      verts.push_back(u);
      self(self, child);
      verts.pop_back();
    }
  };

  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const std::int64_t w = start.weight_of_degree(g.degree(v));
    if (w == 0) continue;
    const Scalar first = Scalar(w) / Scalar(start.normalizer());
    verts.push_back(v);
    recurse(recurse, first);
    verts.pop_back();
  }
}

/// Exhaustive tabulation of the growth process: total probability over all
/// length-k sequences (should be 1), per-subset aggregates keyed by vertex
/// bitmask, and the number of sequences. Validation tool for tiny graphs;
/// refuses hosts with more than 20 vertices.
template <class Scalar>
struct PiEnumeration {
  Scalar sequence_total{};
  std::map<std::uint32_t, Scalar> subset_prob;  // vertex bitmask -> summed pi
  std::uint64_t sequence_count = 0;
};

template <class Scalar>
PiEnumeration<Scalar> enumerate_pi(const Graph& g, int k,
                                   const StartDistribution& start) {
  if (g.vertex_count() > 20) {
    throw std::invalid_argument("exhaustive enumeration is for tiny graphs (<= 20 vertices)");
  }
  PiEnumeration<Scalar> out;
  out.sequence_total = Scalar(0);
  for_each_sequence<Scalar>(
      g, k, start,
      [&](std::span<const VertexId> verts, const Scalar& prob,
          std::span<const SequenceBoundaryEdge>) {
        out.sequence_total += prob;
        std::uint32_t key = 0;
        for (VertexId v : verts) key |= std::uint32_t{1} << v;
        auto [it, fresh] = out.subset_prob.try_emplace(key, prob);
        if (!fresh) it->second += prob;
        ++out.sequence_count;
      });
  return out;
}

/// Probability of producing exactly this vertex order, replayed against the
/// host adjacency. Zero when some prefix cannot reach the next vertex.
template <class Scalar>
Scalar sequence_probability(const Graph& g, std::span<const VertexId> sequence,
                            const StartDistribution& start) {
  if (sequence.empty()) throw std::invalid_argument("empty sequence");
  const std::int64_t w = start.weight_of_degree(g.degree(sequence[0]));
  Scalar prob = Scalar(w) / Scalar(start.normalizer());
  for (std::size_t r = 1; r < sequence.size(); ++r) {
    std::size_t b = 0;
    int multiplicity = 0;
    for (std::size_t i = 0; i < r; ++i) {
      for (VertexId u : g.adjacency(sequence[i])) {
        bool inside = false;
        for (std::size_t j = 0; j < r; ++j) inside = inside || sequence[j] == u;
        if (inside) continue;
        ++b;
        if (u == sequence[r]) ++multiplicity;
      }
    }
    if (multiplicity == 0) return Scalar(0);
    prob *= Scalar(multiplicity);
    prob /= Scalar(static_cast<std::int64_t>(b));
  }
  return prob;
}

}  // namespace graphlift
