#include <doctest.h>

#include <sstream>

#include <graphlift/errors.hpp>
#include <graphlift/graph.hpp>
#include <graphlift/graph_gen.hpp>

using namespace graphlift;

namespace {

Graph from_pairs(std::uint32_t n, std::vector<std::pair<VertexId, VertexId>> e) {
  return Graph::from_edges(n, e, {});
}

}  // namespace

TEST_CASE("from_edges builds a sorted symmetric adjacency") {
  Graph g = from_pairs(4, {{0, 1}, {2, 1}, {1, 3}});
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 3);
  CHECK(g.degree(1) == 3);
  CHECK(g.degree(0) == 1);
  CHECK(g.max_degree() == 3);
  auto adj = g.adjacency(1);
  REQUIRE(adj.size() == 3);
  CHECK(adj[0] == 0);
  CHECK(adj[1] == 2);
  CHECK(adj[2] == 3);
  CHECK(g.has_edge(3, 1));
  CHECK_FALSE(g.has_edge(0, 2));
  CHECK_FALSE(g.has_edge(2, 2));
  CHECK(check_graph_invariants(g));
}

TEST_CASE("from_edges rejects malformed input") {
  std::vector<std::pair<VertexId, VertexId>> loop{{1, 1}};
  CHECK_THROWS_AS(Graph::from_edges(3, loop, {}), std::invalid_argument);
  std::vector<std::pair<VertexId, VertexId>> range{{0, 3}};
  CHECK_THROWS_AS(Graph::from_edges(3, range, {}), std::invalid_argument);
  std::vector<std::pair<VertexId, VertexId>> dup{{0, 1}, {1, 0}};
  CHECK_THROWS_AS(Graph::from_edges(3, dup, {}), std::invalid_argument);
}

TEST_CASE("plain edge lists intern arbitrary vertex labels") {
  std::istringstream in("2 7\n7 9\n9 2\n100 2\n");
  Graph g = load_edge_list(in, EdgeListFormat::plain);
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 4);
  // labels keep first-seen order
  CHECK(g.label(0) == 2);
  CHECK(g.label(1) == 7);
  CHECK(g.label(2) == 9);
  CHECK(g.label(3) == 100);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(0, 3));
}

TEST_CASE("plain edge lists drop repeats and self-loops") {
  std::istringstream in("0 1\n1 0\n0 1\n3 3\n1 2\n");
  Graph g = load_edge_list(in, EdgeListFormat::plain);
  CHECK(g.vertex_count() == 3);  // 3 appears only in the dropped loop
  CHECK(g.edge_count() == 2);
}

TEST_CASE("mtx input skips comments and the size header") {
  std::istringstream in(
      "%%MatrixMarket matrix coordinate pattern symmetric\n"
      "% comment line\n"
      "4 4 3\n"
      "1 2\n"
      "2 3\n"
      "3 4 1.0\n");
  Graph g = load_edge_list(in, EdgeListFormat::mtx);
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 3);
  CHECK(g.label(0) == 1);
}

TEST_CASE("edge list parse failures carry the line number") {
  std::istringstream bad("0 1\n0 x\n");
  CHECK_THROWS_AS(load_edge_list(bad, EdgeListFormat::plain), ParseError);
  std::istringstream arity("0 1 2\n");
  CHECK_THROWS_AS(load_edge_list(arity, EdgeListFormat::plain), ParseError);
  std::istringstream empty("\n\n");
  CHECK_THROWS_AS(load_edge_list(empty, EdgeListFormat::plain), EmptyGraphError);
}

TEST_CASE("largest_component keeps the biggest piece and its labels") {
  // components {0,1,2} and {3,4}
  Graph g = from_pairs(5, {{0, 1}, {1, 2}, {3, 4}});
  ComponentReduction r = largest_component(g);
  CHECK(r.component_count == 2);
  CHECK(r.dropped_vertices == 2);
  CHECK(r.graph.vertex_count() == 3);
  CHECK(r.graph.edge_count() == 2);
  CHECK(r.graph.label(0) == 0);
  CHECK(r.graph.label(2) == 2);

  ComponentReduction whole = largest_component(r.graph);
  CHECK(whole.component_count == 1);
  CHECK(whole.dropped_vertices == 0);
}

TEST_CASE("generators produce the expected shapes") {
  Graph p = path_graph(5);
  CHECK(p.edge_count() == 4);
  CHECK(p.degree(0) == 1);
  CHECK(p.degree(2) == 2);

  Graph c = cycle_graph(6);
  CHECK(c.edge_count() == 6);
  CHECK(c.max_degree() == 2);

  Graph k = complete_graph(5);
  CHECK(k.edge_count() == 10);
  CHECK(k.degree(3) == 4);

  Graph s = star_graph(4);
  CHECK(s.vertex_count() == 5);
  CHECK(s.degree(0) == 4);
  CHECK(s.degree(1) == 1);

  Graph d = diamond_graph();
  CHECK(d.vertex_count() == 4);
  CHECK(d.edge_count() == 5);
  CHECK(d.max_degree() == 3);

  Graph pt = petersen_graph();
  CHECK(pt.vertex_count() == 10);
  CHECK(pt.edge_count() == 15);
  for (VertexId v = 0; v < 10; ++v) CHECK(pt.degree(v) == 3);

  for (const Graph* g : {&p, &c, &k, &s, &d, &pt}) CHECK(check_graph_invariants(*g));
}

TEST_CASE("random generators are deterministic in the seed") {
  Graph a = erdos_renyi(40, 0.15, 7);
  Graph b = erdos_renyi(40, 0.15, 7);
  CHECK(a.edge_count() == b.edge_count());
  for (VertexId v = 0; v < 40; ++v) CHECK(a.degree(v) == b.degree(v));

  Graph c = erdos_renyi_connected(25, 0.12, 3);
  CHECK(largest_component(c).component_count == 1);
  CHECK(check_graph_invariants(c));

  Graph pa = preferential_attachment(200, 3, 11);
  CHECK(pa.vertex_count() == 200);
  CHECK(largest_component(pa).component_count == 1);
  CHECK(check_graph_invariants(pa));
}

TEST_CASE("neighbor queries are charged to the counter") {
  Graph g = complete_graph(4);
  QueryCounter counter;
  auto adj = neighbors(g, 0, counter);
  CHECK(adj.size() == 3);
  CHECK(counter.count == 1);
  neighbors(g, 1, counter);
  neighbors(g, 1, counter);  // repeat queries are not deduplicated
  CHECK(counter.count == 3);
}
