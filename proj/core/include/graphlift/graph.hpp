#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace graphlift {

using VertexId = std::uint32_t;

/// Counts simulated neighborhood queries. Sampling code charges one unit per
/// adjacency-list access so that distributed / crawl cost can be compared
/// across estimators. Exact enumeration does not charge it.
struct QueryCounter {
  std::uint64_t count = 0;
  void add() noexcept { ++count; }
  void reset() noexcept { count = 0; }
};

/// Simple undirected graph over vertex ids 0..n-1, CSR adjacency sorted
/// ascending per vertex. Original input labels are kept in a side table.
class Graph {
 public:
  Graph() = default;

  /// Build from a simple edge list over 0..n-1. Throws std::invalid_argument
  /// on loops, duplicates, or out-of-range endpoints. When labels is empty the
  /// identity labeling is used.
  static Graph from_edges(std::uint32_t n,
                          std::span<const std::pair<VertexId, VertexId>> edges,
                          std::vector<std::int64_t> labels = {});

  std::uint32_t vertex_count() const noexcept {
    return offsets_.empty() ? 0 : static_cast<std::uint32_t>(offsets_.size() - 1);
  }
  std::uint64_t edge_count() const noexcept { return edges_; }
  std::uint32_t max_degree() const noexcept { return max_degree_; }

  std::uint32_t degree(VertexId v) const {
    check_vertex(v);
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }

  /// Sorted neighbor list; does not charge the query counter (internal and
  /// oracle use).
  std::span<const VertexId> adjacency(VertexId v) const {
    check_vertex(v);
    return {adj_.data() + offsets_[v],
            static_cast<std::size_t>(offsets_[v + 1] - offsets_[v])};
  }

  /// Sorted neighbor list, charging one neighborhood query.
  std::span<const VertexId> neighbors(VertexId v, QueryCounter& counter) const {
    counter.add();
    return adjacency(v);
  }

  bool has_edge(VertexId u, VertexId v) const;

  const std::vector<std::int64_t>& labels() const noexcept { return labels_; }
  std::int64_t label(VertexId v) const {
    check_vertex(v);
    return labels_[v];
  }

 private:
  void check_vertex(VertexId v) const;

  std::vector<std::uint64_t> offsets_;
  std::vector<VertexId> adj_;
  std::vector<std::int64_t> labels_;
  std::uint64_t edges_ = 0;
  std::uint32_t max_degree_ = 0;
};

/// Free-function form of the counted neighbor access.
inline std::span<const VertexId> neighbors(const Graph& g, VertexId v,
                                           QueryCounter& counter) {
  return g.neighbors(v, counter);
}

enum class EdgeListFormat { plain, mtx };

/// Parse a whitespace edge list (plain: exactly two integer labels per line)
/// or a MatrixMarket coordinate file (mtx: %-comments skipped, first
/// non-comment line treated as dimensions and ignored, trailing weight tokens
/// ignored, symmetric entries merged). Self-loops are dropped before labels
/// are recorded; duplicate and reversed edges merge. Labels are compacted to
/// 0..n-1 in first-appearance order. Throws ParseError with the line number on
/// malformed lines, EmptyGraphError when no edges survive.
Graph load_edge_list(std::istream& in, EdgeListFormat format);

struct ComponentReduction {
  Graph graph;
  std::uint32_t component_count = 0;
  std::uint32_t dropped_vertices = 0;  // nonzero means the input was reduced
};

/// Induced subgraph on the largest connected component, ids remapped to
/// 0..m-1 in ascending old-id order (labels carried over). Ties between equal
/// components go to the one containing the smallest vertex id.
ComponentReduction largest_component(const Graph& g);

/// Structural re-check used by the validate command and tests: adjacency
/// sorted, loop-free, symmetric, degree sum equal to twice the edge count.
bool check_graph_invariants(const Graph& g);

}  // namespace graphlift
