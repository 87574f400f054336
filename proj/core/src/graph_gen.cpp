#include "graphlift/graph_gen.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

#include "graphlift/rng.hpp"

namespace graphlift {

namespace {
using EdgeVec = std::vector<std::pair<VertexId, VertexId>>;
}

Graph path_graph(std::uint32_t n) {
  if (n < 2) throw std::invalid_argument("path needs at least 2 vertices");
  EdgeVec edges;
  for (VertexId v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph::from_edges(n, edges);
}

Graph cycle_graph(std::uint32_t n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  EdgeVec edges;
  for (VertexId v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return Graph::from_edges(n, edges);
}

Graph complete_graph(std::uint32_t n) {
  if (n < 2) throw std::invalid_argument("complete graph needs at least 2 vertices");
  EdgeVec edges;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

Graph star_graph(std::uint32_t leaves) {
  if (leaves < 1) throw std::invalid_argument("star needs at least 1 leaf");
  EdgeVec edges;
  for (VertexId v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, edges);
}

Graph diamond_graph() {
  EdgeVec edges{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}};
  return Graph::from_edges(4, edges);
}

Graph petersen_graph() {
  EdgeVec edges;
  for (VertexId i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);          // outer cycle
    edges.emplace_back(i, i + 5);                // spoke
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
  }
  return Graph::from_edges(10, edges);
}

Graph erdos_renyi(std::uint32_t n, double p, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("need at least 2 vertices");
  Rng rng(seed);
  EdgeVec edges;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (rng.uniform01() < p) edges.emplace_back(u, v);
  if (edges.empty()) edges.emplace_back(0, 1);  // keep the graph non-degenerate
  return Graph::from_edges(n, edges);
}

Graph erdos_renyi_connected(std::uint32_t n, double p, std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    Graph g = erdos_renyi(n, p, seed + attempt);
    auto reduced = largest_component(g);
    if (reduced.component_count == 1 && g.vertex_count() == n) return g;
  }
}

Graph preferential_attachment(std::uint32_t n, std::uint32_t m, std::uint64_t seed) {
  if (m < 1 || n < m + 2) throw std::invalid_argument("need n >= m + 2, m >= 1");
  Rng rng(seed);
  EdgeVec edges;
  std::vector<VertexId> endpoint_bag;  // each edge contributes both endpoints
  for (VertexId u = 0; u <= m; ++u) {
    for (VertexId v = u + 1; v <= m; ++v) {
      edges.emplace_back(u, v);
      endpoint_bag.push_back(u);
      endpoint_bag.push_back(v);
    }
  }
  std::vector<VertexId> targets;
  for (VertexId v = m + 1; v < n; ++v) {
    targets.clear();
    while (targets.size() < m) {
      const VertexId t = endpoint_bag[rng.below(endpoint_bag.size())];
      bool fresh = true;
      for (VertexId prev : targets) fresh = fresh && prev != t;
      if (fresh) targets.push_back(t);
    }
    for (VertexId t : targets) {
      edges.emplace_back(t, v);
      endpoint_bag.push_back(t);
      endpoint_bag.push_back(v);
    }
  }
  return Graph::from_edges(n, edges);
}

}  // namespace graphlift
