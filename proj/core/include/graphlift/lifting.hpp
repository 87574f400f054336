#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "graphlift/catalog.hpp"
#include "graphlift/graph.hpp"
#include "graphlift/rng.hpp"
#include "graphlift/run.hpp"
#include "graphlift/start_distribution.hpp"

namespace graphlift {

/// A partially grown connected induced subgraph: the ordered vertices, their
/// adjacency, the multiset of boundary edges (inside endpoint, outside
/// endpoint), and the running probability of having produced exactly this
/// sequence. Each growth step picks a boundary edge uniformly and adopts its
/// outside endpoint, so a vertex with t edges into the current subgraph is
/// chosen with probability t / |boundary|.
class LiftState {
 public:
  /// Begin at v1; charges one query for v1's neighborhood. The probability
  /// starts at the start distribution's mass for v1.
  static LiftState begin(const Graph& g, VertexId v1, const StartDistribution& start,
                         QueryCounter& counter);

  /// Adopt one more vertex; charges one query. Throws InfeasibleError when
  /// the boundary is empty (component exhausted before reaching k).
  void lift(const Graph& g, Rng& rng, QueryCounter& counter);

  int size() const noexcept { return k_; }
  std::span<const VertexId> vertices() const noexcept {
    return {verts_.data(), static_cast<std::size_t>(k_)};
  }
  double probability() const noexcept { return prob_; }
  std::size_t boundary_size() const noexcept { return boundary_.size(); }
  std::uint32_t queries_used() const noexcept { return queries_; }

  /// Adjacency among the current vertices in the encoding for size size().
  AdjMask mask() const;

  InducedSubgraph snapshot() const;

  struct BoundaryEdge {
    VertexId outside;
    std::uint8_t inside;  // local index of the inside endpoint
  };
  std::span<const BoundaryEdge> boundary() const noexcept { return boundary_; }

  /// Local adjacency row bitsets (bit j of row i = edge between locals i, j).
  std::span<const std::uint8_t> adjacency_rows() const noexcept {
    return {adj_rows_.data(), static_cast<std::size_t>(k_)};
  }
  std::uint32_t host_degree(int local) const { return host_deg_[local]; }

 private:
  std::array<VertexId, kMaxGraphletSize> verts_{};
  std::array<std::uint32_t, kMaxGraphletSize> host_deg_{};
  std::array<std::uint8_t, kMaxGraphletSize> adj_rows_{};
  std::vector<BoundaryEdge> boundary_;
  double prob_ = 0.0;
  int k_ = 0;
  int internal_edges_ = 0;
  std::uint32_t queries_ = 0;
};

/// Draw a start vertex and grow to k vertices.
LiftState sample_sequence(const Graph& g, int k, const StartDistribution& start,
                          StartSampler& sampler, Rng& rng, QueryCounter& counter);

/// Exact neighborhood queries charged per sample: walk steps (rw start:
/// max(spacing, 1); iid starts 0), plus 1 for the start vertex's
/// neighborhood, plus one per adopted vertex (k - 1, or k - 2 for shotgun,
/// which grows only to k - 1). So an rw-start sample costs spacing + k
/// queries (spacing + k - 1 for shotgun) at any spacing >= 1. A lazy walk
/// may stay without querying, making this an upper bound.
std::uint64_t per_sample_queries(EstimatorKind estimator,
                                 const StartDistribution& start, int k);

/// Total queries a samples-mode run charges: one burn-in per worker chain
/// (rw start only) plus the per-sample cost for every sample. Exact for
/// non-lazy walks; an upper bound for lazy ones.
std::uint64_t expected_total_queries(EstimatorKind estimator,
                                     const StartDistribution& start, int k,
                                     std::uint64_t samples, std::uint32_t workers);

struct EstimateOptions {
  std::uint64_t samples = 0;       // exactly one of samples / query_budget set
  std::uint64_t query_budget = 0;  // per run, split across workers
  std::uint32_t workers = 1;
  std::uint64_t seed = 1;
  bool retain_stream = false;  // keep phi streams (single worker only)
  std::size_t memo_capacity = std::size_t{1} << 20;
};

struct TypeEstimate {
  const GraphletType* type;
  EstimateRun run;
};

/// Run one estimator over all requested targets simultaneously (every sample
/// contributes a weight, possibly zero, to every target). An empty target
/// span means all types on k vertices.
///
/// ordered: the grown subgraph scores 1/(orderings * sequence probability)
/// for its own type. shotgun: grow to k-1, score every one-vertex completion
/// reachable through the boundary. unordered: the grown subgraph scores the
/// reciprocal of its aggregate (order-summed) probability for its type.
std::vector<TypeEstimate> estimate_counts(const Graph& g, EstimatorKind estimator,
                                          int k,
                                          std::span<const GraphletType* const> targets,
                                          const StartDistribution& start,
                                          const EstimateOptions& options);

EstimateRun ordered_estimate(const Graph& g, const GraphletType& target,
                             std::uint64_t samples, const StartDistribution& start,
                             EstimateOptions options = {});
EstimateRun shotgun_estimate(const Graph& g, const GraphletType& target,
                             std::uint64_t samples, const StartDistribution& start,
                             EstimateOptions options = {});
EstimateRun unordered_estimate(const Graph& g, const GraphletType& target,
                               std::uint64_t samples, const StartDistribution& start,
                               EstimateOptions options = {});

}  // namespace graphlift
