#include "graphlift/graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "graphlift/errors.hpp"

namespace graphlift {

void Graph::check_vertex(VertexId v) const {
  if (v >= vertex_count()) {
    throw std::out_of_range("vertex id " + std::to_string(v) +
                            " out of range (|V| = " +
                            std::to_string(vertex_count()) + ")");
  }
}

Graph Graph::from_edges(std::uint32_t n,
                        std::span<const std::pair<VertexId, VertexId>> edges,
                        std::vector<std::int64_t> labels) {
  Graph g;
  std::vector<std::uint32_t> deg(n, 0);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop in edge list");
    const std::uint64_t key =
        (static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v);
    if (!seen.insert(key).second) throw std::invalid_argument("duplicate edge");
    ++deg[u];
    ++deg[v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::uint32_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  g.adj_.resize(g.offsets_[n]);
  std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    g.adj_[cursor[u]++] = v;
    g.adj_[cursor[v]++] = u;
  }
  for (std::uint32_t v = 0; v < n; ++v) {
    std::sort(g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
  }
  g.edges_ = edges.size();
  g.max_degree_ = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
  if (labels.empty()) {
    g.labels_.resize(n);
    for (std::uint32_t v = 0; v < n; ++v) g.labels_[v] = v;
  } else {
    if (labels.size() != n) throw std::invalid_argument("label table size mismatch");
    g.labels_ = std::move(labels);
  }
  return g;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  check_vertex(u);
  check_vertex(v);
  if (u == v) return false;
  auto adj = adjacency(u);
  if (degree(v) < adj.size()) {
    adj = adjacency(v);
    std::swap(u, v);
  }
  return std::binary_search(adj.begin(), adj.end(), v);
}

namespace {

bool parse_int(std::string_view token, std::int64_t& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

}  // namespace

Graph load_edge_list(std::istream& in, EdgeListFormat format) {
  std::unordered_map<std::int64_t, VertexId> id_of;
  std::vector<std::int64_t> labels;
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::unordered_set<std::uint64_t> seen;

  auto intern = [&](std::int64_t label) {
    auto [it, inserted] = id_of.try_emplace(label, static_cast<VertexId>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  bool dims_skipped = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (format == EdgeListFormat::mtx && !view.empty() && view.front() == '%') continue;
    auto tokens = split_tokens(view);
    if (tokens.empty()) continue;
    if (format == EdgeListFormat::mtx && !dims_skipped) {
      dims_skipped = true;  // size header, actual extent comes from the entries
      continue;
    }
    if (format == EdgeListFormat::plain && tokens.size() != 2) {
      throw ParseError("expected two vertex ids", line_no);
    }
    if (format == EdgeListFormat::mtx && tokens.size() < 2) {
      throw ParseError("expected at least two coordinate fields", line_no);
    }
    std::int64_t a = 0;
    std::int64_t b = 0;
    if (!parse_int(tokens[0], a) || !parse_int(tokens[1], b)) {
      throw ParseError("non-integer vertex id", line_no);
    }
    if (a == b) continue;  // self-loop, dropped before label registration
    const VertexId u = intern(a);
    const VertexId v = intern(b);
    const std::uint64_t key =
        (static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v);
    if (seen.insert(key).second) edges.emplace_back(u, v);
  }
  if (in.bad()) throw DataError("read failure on edge list input");
  if (edges.empty()) throw EmptyGraphError("edge list holds no usable edges");
  // labels.size() must be read before std::move(labels) constructs the
  // by-value parameter; argument evaluation order would not guarantee that.
  const auto n = static_cast<std::uint32_t>(labels.size());
  return Graph::from_edges(n, edges, std::move(labels));
}

ComponentReduction largest_component(const Graph& g) {
  const std::uint32_t n = g.vertex_count();
  std::vector<std::uint32_t> component(n, n);
  std::uint32_t comp_count = 0;
  std::uint32_t best_comp = 0;
  std::uint32_t best_size = 0;
  std::vector<VertexId> queue;
  for (VertexId root = 0; root < n; ++root) {
    if (component[root] != n) continue;
    const std::uint32_t c = comp_count++;
    std::uint32_t size = 0;
    queue.assign(1, root);
    component[root] = c;
    while (!queue.empty()) {
      const VertexId v = queue.back();
      queue.pop_back();
      ++size;
      for (VertexId w : g.adjacency(v)) {
        if (component[w] == n) {
          component[w] = c;
          queue.push_back(w);
        }
      }
    }
    // Roots appear in ascending id order, so the first component of maximal
    // size is also the one containing the smallest vertex id.
    if (size > best_size) {
      best_size = size;
      best_comp = c;
    }
  }

  ComponentReduction result;
  result.component_count = comp_count;
  result.dropped_vertices = n - best_size;
  if (comp_count <= 1) {
    result.graph = g;
    return result;
  }
  std::vector<VertexId> new_id(n, n);
  std::vector<std::int64_t> labels;
  labels.reserve(best_size);
  std::uint32_t next = 0;
  for (VertexId v = 0; v < n; ++v) {
    if (component[v] == best_comp) {
      new_id[v] = next++;
      labels.push_back(g.label(v));
    }
  }
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId v = 0; v < n; ++v) {
    if (component[v] != best_comp) continue;
    for (VertexId w : g.adjacency(v)) {
      if (v < w) edges.emplace_back(new_id[v], new_id[w]);
    }
  }
  result.graph = Graph::from_edges(best_size, edges, std::move(labels));
  return result;
}

bool check_graph_invariants(const Graph& g) {
  std::uint64_t degree_sum = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    auto adj = g.adjacency(v);
    degree_sum += adj.size();
    if (!std::is_sorted(adj.begin(), adj.end())) return false;
    if (std::adjacent_find(adj.begin(), adj.end()) != adj.end()) return false;
    for (VertexId w : adj) {
      if (w == v || w >= g.vertex_count()) return false;
      if (!g.has_edge(w, v)) return false;
    }
  }
  return degree_sum == 2 * g.edge_count();
}

}  // namespace graphlift
