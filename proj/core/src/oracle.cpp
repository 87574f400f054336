#include "graphlift/oracle.hpp"

#include <algorithm>

#include "graphlift/errors.hpp"

namespace graphlift {
namespace {

// Connected-subgraph enumeration with the exclusive-neighborhood rule: grow
// only through vertices larger than the root that are not yet adjacent to the
// set, removing each extension candidate for its siblings. Every connected
// k-set is reached exactly once.
struct SubsetEnumerator {
  const Graph& g;
  int k;
  std::uint64_t cap;
  const std::function<void(const InducedSubgraph&)>& visit;

  std::uint64_t emitted = 0;
  std::array<VertexId, kMaxGraphletSize> sub{};
  std::vector<char> blocked{};  // in the set, adjacent to it, or <= root

  void run() {
    blocked.assign(g.vertex_count(), 0);
    std::vector<VertexId> ext;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      sub[0] = v;
      ext.clear();
      for (VertexId u : g.adjacency(v)) {
        if (u > v) ext.push_back(u);
      }
      blocked[v] = 1;
      for (VertexId u : g.adjacency(v)) blocked[u] = 1;
      extend(1, ext, v);
      blocked[v] = 0;
      for (VertexId u : g.adjacency(v)) blocked[u] = 0;
    }
  }

  void extend(int depth, std::vector<VertexId>& ext, VertexId root) {
    if (depth == k) {
      if (++emitted > cap) {
        throw InfeasibleError("connected subgraph enumeration exceeded its cap");
      }
      visit(InducedSubgraph::from_host(g, {sub.data(), static_cast<std::size_t>(depth)}));
      return;
    }
    std::vector<VertexId> child;
    std::vector<VertexId> marked;
    while (!ext.empty()) {
      const VertexId w = ext.back();
      ext.pop_back();
      child = ext;
      marked.clear();
      for (VertexId u : g.adjacency(w)) {
        if (u > root && !blocked[u]) {
          child.push_back(u);
          blocked[u] = 1;
          marked.push_back(u);
        }
      }
      sub[depth] = w;
      extend(depth + 1, child, root);
      for (VertexId u : marked) blocked[u] = 0;
    }
  }
};

ExactCounts tally(const Graph& g, int k, std::uint64_t cap,
                  bool all_subsets_reference) {
  if (k < 1 || k > kMaxGraphletSize) {
    throw std::invalid_argument("subgraph size must be between 1 and 7");
  }
  const Catalog& catalog = Catalog::for_size(k);
  ExactCounts counts;
  counts.catalog = &catalog;
  counts.by_type.assign(static_cast<std::size_t>(catalog.type_count()), 0);

  auto record = [&](const InducedSubgraph& s) {
    const auto cls = catalog.classify(s.mask);
    ++counts.by_type[static_cast<std::size_t>(cls.type->index - 1)];
    ++counts.total;
  };

  if (all_subsets_reference) {
    const std::size_t n = g.vertex_count();
    if (n < static_cast<std::size_t>(k)) return counts;
    std::array<VertexId, kMaxGraphletSize> pick{};
    auto choose = [&](auto&& self, std::size_t next, int depth) -> void {
      if (depth == k) {
        const InducedSubgraph s =
            InducedSubgraph::from_host(g, {pick.data(), static_cast<std::size_t>(k)});
        if (mask_connected(s.mask, k)) record(s);
        return;
      }
      for (std::size_t v = next; v + (static_cast<std::size_t>(k) - depth) <= n; ++v) {
        pick[depth] = static_cast<VertexId>(v);
        self(self, v + 1, depth + 1);
      }
    };
    choose(choose, 0, 0);
  } else {
    std::function<void(const InducedSubgraph&)> fn = record;
    SubsetEnumerator{g, k, cap, fn}.run();
  }
  return counts;
}

}  // namespace

ExactCounts exact_count(const Graph& g, int k, const ExactCountOptions& options) {
  return tally(g, k, options.max_subgraphs, false);
}

ExactCounts exact_count_bruteforce(const Graph& g, int k) {
  return tally(g, k, 0, true);
}

void for_each_connected_subset(const Graph& g, int k,
                               const std::function<void(const InducedSubgraph&)>& visit) {
  if (k < 1 || k > kMaxGraphletSize) {
    throw std::invalid_argument("subgraph size must be between 1 and 7");
  }
  SubsetEnumerator{g, k, std::uint64_t(-1), visit}.run();
}

}  // namespace graphlift
