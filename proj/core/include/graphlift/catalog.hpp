#pragma once

#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <list>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "graphlift/graph.hpp"
#include "graphlift/start_distribution.hpp"

namespace graphlift {

inline constexpr int kMaxGraphletSize = 7;

/// Adjacency of a graph on k <= 7 labeled vertices packed into a bit mask.
/// Pair (i, j), i < j, sits at bit (P - 1 - rank(i, j)) where P = k(k-1)/2 and
/// rank runs row-major: (0,1), (0,2), ..., (k-2,k-1). Putting (0,1) in the
/// most significant bit makes numeric order coincide with lexicographic order
/// on the bit-string, which is what the canonical form minimizes.
using AdjMask = std::uint32_t;

constexpr int pair_count(int k) { return k * (k - 1) / 2; }

constexpr int pair_rank(int i, int j, int k) {  // requires i < j
  return i * (2 * k - i - 1) / 2 + (j - i - 1);
}

constexpr AdjMask pair_bit(int i, int j, int k) {
  return AdjMask{1} << (pair_count(k) - 1 - pair_rank(i, j, k));
}

constexpr bool mask_has_edge(AdjMask mask, int i, int j, int k) {
  return (mask & pair_bit(i, j, k)) != 0;
}

bool mask_connected(AdjMask mask, int k);

/// Build orders of the masked graph in which every prefix induces a connected
/// subgraph. Subset dynamic program; 2^(k-1) for a path, k! for a clique.
std::uint64_t count_compatible_orderings(AdjMask mask, int k);

/// One isomorphism class of connected k-vertex graphs.
struct GraphletType {
  int k = 0;
  int index = 0;  // 1-based position in the size-k table
  AdjMask canonical_mask = 0;
  int edge_count = 0;
  std::uint64_t ordering_count = 0;
  std::string name;  // empty when the type has no registered name

  std::string id() const { return std::to_string(k) + "-" + std::to_string(index); }
  std::string display_name() const { return name.empty() ? id() : name; }
};

/// A k-vertex connected induced subgraph of a host graph: vertices in the
/// order they were collected, adjacency among them, host degrees.
struct InducedSubgraph {
  int k = 0;
  std::array<VertexId, kMaxGraphletSize> vertices{};
  std::array<std::uint32_t, kMaxGraphletSize> host_degrees{};
  AdjMask mask = 0;

  std::span<const VertexId> vertex_span() const { return {vertices.data(), static_cast<std::size_t>(k)}; }
  static InducedSubgraph from_host(const Graph& g, std::span<const VertexId> verts);
};

/// The table of all connected graphlet types on k vertices, a fixed index
/// order, and memoized isomorphism classification. Built once per size and
/// cached for the process lifetime. Sizes 3 and 4 use the documented named
/// order; larger sizes order by (edge count, canonical mask).
class Catalog {
 public:
  static const Catalog& for_size(int k);

  int k() const noexcept { return k_; }
  int type_count() const noexcept { return static_cast<int>(types_.size()); }
  std::span<const GraphletType> types() const noexcept { return types_; }
  const GraphletType& type(int index) const;                      // 1-based
  const GraphletType* find_name(std::string_view name) const;     // null if unknown
  const GraphletType* find_canonical(AdjMask canonical) const;

  struct Classified {
    const GraphletType* type;
    std::uint16_t perm;  // relabeling onto the canonical form
  };
  /// Isomorphism class of a connected adjacency mask, with a permutation
  /// placing local vertex i at canonical position permutation(perm)[i].
  /// Memoized per exact mask; throws std::invalid_argument on disconnected
  /// input.
  Classified classify(AdjMask mask) const;
  Classified classify(const InducedSubgraph& s) const { return classify(s.mask); }

  std::span<const std::uint8_t> permutation(std::uint16_t perm) const {
    return {perms_[perm].data(), static_cast<std::size_t>(k_)};
  }

  /// Minimum relabeled mask over all k! permutations (identity included).
  AdjMask canonicalize(AdjMask mask, std::uint16_t* best_perm = nullptr) const;

  AdjMask permute_mask(AdjMask mask, std::uint16_t perm) const;

 private:
  explicit Catalog(int k);
  void build_types();

  int k_;
  int bits_;
  std::vector<std::array<std::uint8_t, kMaxGraphletSize>> perms_;
  std::vector<std::array<std::uint8_t, 21>> bit_maps_;  // source bit -> image bit
  std::vector<GraphletType> types_;
  std::unordered_map<AdjMask, int> canonical_index_;
  std::unordered_map<std::string, int> name_index_;
  // classify memo: (index << 16) | perm, 0 = empty (type indices are 1-based)
  mutable std::vector<std::atomic<std::uint32_t>> memo_;
};

/// Host degrees of s rearranged into canonical vertex order.
std::array<std::uint32_t, kMaxGraphletSize> canonical_degrees(
    const InducedSubgraph& s, const Catalog& catalog, const Catalog::Classified& c);

/// All build orders of one graphlet type, pre-chewed so the aggregate
/// sampling probability of a concrete subgraph needs only its host degrees:
/// pi_U = eval(degrees, start) / K. Step r of an order contributes
/// (edges added) / (sum of host degrees so far - 2 * internal edges so far).
class LiftPlan {
 public:
  /// Process-wide cache, keyed by (k, canonical mask).
  static std::shared_ptr<const LiftPlan> for_type(const GraphletType& type);

  template <class Scalar>
  Scalar eval(std::span<const std::uint32_t> canonical_degrees,
              const StartDistribution& start) const {
    Scalar total(0);
    for (const Ordering& ordering : orderings_) {
      const std::int64_t w = start.weight_of_degree(canonical_degrees[ordering.first]);
      if (w == 0) continue;
      Scalar term(w);
      std::int64_t degree_sum = canonical_degrees[ordering.first];
      for (int r = 0; r + 1 < k_; ++r) {
        const Step& step = ordering.steps[r];
        const std::int64_t denom = degree_sum - 2 * step.internal_before;
        term *= Scalar(static_cast<int>(step.edges_added));
        term /= Scalar(denom);
        degree_sum += canonical_degrees[step.vertex];
      }
      total += term;
    }
    return total;
  }

  int k() const noexcept { return k_; }
  std::size_t ordering_count() const noexcept { return orderings_.size(); }

 private:
  LiftPlan(int k, AdjMask mask);

  struct Step {
    std::uint8_t vertex;           // canonical label added at this step
    std::uint8_t edges_added;      // edges from the prefix to that label
    std::uint8_t internal_before;  // edges inside the prefix before the step
  };
  struct Ordering {
    std::uint8_t first;
    std::array<Step, kMaxGraphletSize - 1> steps;
  };

  int k_;
  std::vector<Ordering> orderings_;
};

/// Memoizing evaluator for the aggregate probability of one type under one
/// start distribution, keyed by the canonical degree vector. Bounded LRU;
/// not thread-safe, intended to be owned per worker.
class DegreeProbabilityFunction {
 public:
  DegreeProbabilityFunction(std::shared_ptr<const LiftPlan> plan,
                            const StartDistribution& start,
                            std::size_t capacity = std::size_t{1} << 20);

  /// K * pi_U for the degree vector; divide by normalizer() for pi_U.
  double value(std::span<const std::uint32_t> canonical_degrees);

  /// Exact evaluation, bypassing the cache.
  template <class Scalar>
  Scalar exact_value(std::span<const std::uint32_t> canonical_degrees) const {
    return plan_->eval<Scalar>(canonical_degrees, *start_);
  }

  std::size_t cache_size() const noexcept { return entries_.size(); }
  std::uint64_t hits() const noexcept { return hits_; }
  std::uint64_t misses() const noexcept { return misses_; }

 private:
  using Key = std::array<std::uint32_t, kMaxGraphletSize>;
  struct KeyHash {
    std::size_t operator()(const Key& key) const noexcept {
      std::uint64_t h = 0x9E3779B97F4A7C15ULL;
      for (std::uint32_t d : key) {
        h ^= d + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
      }
      return static_cast<std::size_t>(h);
    }
  };

  std::shared_ptr<const LiftPlan> plan_;
  const StartDistribution* start_;
  std::size_t capacity_;
  std::list<std::pair<Key, double>> order_;  // front = most recent
  std::unordered_map<Key, decltype(order_)::iterator, KeyHash> entries_;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
};

namespace detail {

// Shared by the direct evaluator and the plan builder: visit every build
// order of the masked graph; cb(order array, edges_added array,
// internal_before array).
template <class Cb>
void for_each_build_order(AdjMask mask, int k, Cb&& cb) {
  std::array<std::uint8_t, kMaxGraphletSize> order{};
  std::array<std::uint8_t, kMaxGraphletSize - 1> edges_added{};
  std::array<std::uint8_t, kMaxGraphletSize - 1> internal_before{};
  std::array<std::uint8_t, kMaxGraphletSize> adj_rows{};  // local adjacency bitsets
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i < j ? mask_has_edge(mask, i, j, k) : (i > j && mask_has_edge(mask, j, i, k))) {
        adj_rows[i] |= static_cast<std::uint8_t>(1u << j);
      }
    }
  }
  auto recurse = [&](auto&& self, int depth, std::uint8_t chosen, int internal) -> void {
    if (depth == k) {
      cb(order, edges_added, internal_before);
      return;
    }
    for (int v = 0; v < k; ++v) {
      if (chosen & (1u << v)) continue;
      const int attach = std::popcount(static_cast<unsigned>(adj_rows[v] & chosen));
      if (attach == 0) continue;  // prefix would disconnect
      order[depth] = static_cast<std::uint8_t>(v);
      edges_added[depth - 1] = static_cast<std::uint8_t>(attach);
      internal_before[depth - 1] = static_cast<std::uint8_t>(internal);
      self(self, depth + 1, static_cast<std::uint8_t>(chosen | (1u << v)),
           internal + attach);
    }
  };
  for (int v = 0; v < k; ++v) {
    order[0] = static_cast<std::uint8_t>(v);
    recurse(recurse, 1, static_cast<std::uint8_t>(1u << v), 0);
  }
}

}  // namespace detail

/// Aggregate sampling probability of the concrete subgraph s: the sum over
/// every build order of (start weight of the first vertex / K) times the
/// per-step attachment ratios, evaluated with host degrees.
template <class Scalar>
Scalar pi_u_direct(const InducedSubgraph& s, const StartDistribution& start) {
  Scalar total(0);
  detail::for_each_build_order(
      s.mask, s.k,
      [&](const auto& order, const auto& edges_added, const auto& internal_before) {
        const std::int64_t w = start.weight_of_degree(s.host_degrees[order[0]]);
        if (w == 0) return;
        Scalar term(w);
        std::int64_t degree_sum = s.host_degrees[order[0]];
        for (int r = 0; r + 1 < s.k; ++r) {
          term *= Scalar(static_cast<int>(edges_added[r]));
          term /= Scalar(degree_sum - 2 * internal_before[r]);
          degree_sum += s.host_degrees[order[r + 1]];
        }
        total += term;
      });
  return total / Scalar(start.normalizer());
}

/// Same quantity through the subset recursion: the probability of a vertex
/// set is the sum over its connected one-smaller subsets of their probability
/// times the attachment ratio of the removed vertex. Base case: single
/// vertices get the start probability.
template <class Scalar>
Scalar pi_u_recursive(const InducedSubgraph& s, const StartDistribution& start) {
  const int k = s.k;
  const unsigned full = (1u << k) - 1;
  std::vector<Scalar> pi(full + 1, Scalar(0));
  std::vector<int> edge_cnt(full + 1, 0);
  std::vector<std::int64_t> degree_sum(full + 1, 0);
  std::vector<bool> connected(full + 1, false);

  std::array<std::uint8_t, kMaxGraphletSize> adj_rows{};
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (mask_has_edge(s.mask, i, j, k)) {
        adj_rows[i] |= static_cast<std::uint8_t>(1u << j);
        adj_rows[j] |= static_cast<std::uint8_t>(1u << i);
      }
    }
  }
  for (unsigned sub = 1; sub <= full; ++sub) {
    int edges = 0;
    std::int64_t dsum = 0;
    for (int i = 0; i < k; ++i) {
      if (!(sub & (1u << i))) continue;
      dsum += s.host_degrees[i];
      edges += std::popcount(static_cast<unsigned>(adj_rows[i] & sub));
    }
    edge_cnt[sub] = edges / 2;
    degree_sum[sub] = dsum;
    // connectivity: expand from the lowest member
    const unsigned seed = sub & (0u - sub);
    unsigned reach = seed;
    for (;;) {
      unsigned grow = reach;
      unsigned frontier = reach;
      while (frontier) {
        const int v = std::countr_zero(frontier);
        frontier &= frontier - 1;
        grow |= adj_rows[v] & sub;
      }
      if (grow == reach) break;
      reach = grow;
    }
    connected[sub] = (reach == sub);
  }
  for (int v = 0; v < k; ++v) {
    pi[1u << v] = Scalar(start.weight_of_degree(s.host_degrees[v])) /
                  Scalar(start.normalizer());
  }
  for (unsigned sub = 1; sub <= full; ++sub) {
    if (!connected[sub] || std::popcount(sub) < 2) continue;
    Scalar acc(0);
    unsigned rest = sub;
    while (rest) {
      const int v = std::countr_zero(rest);
      rest &= rest - 1;
      const unsigned prev = sub & ~(1u << v);
      if (!connected[prev]) continue;
      const int added = edge_cnt[sub] - edge_cnt[prev];
      const std::int64_t denom = degree_sum[prev] - 2 * edge_cnt[prev];
      acc += pi[prev] * Scalar(added) / Scalar(denom);
    }
    pi[sub] = acc;
  }
  return pi[full];
}

}  // namespace graphlift
