#include <doctest.h>

#include <map>
#include <set>

#include <graphlift/errors.hpp>
#include <graphlift/graph_gen.hpp>
#include <graphlift/oracle.hpp>
#include <graphlift/rational.hpp>

using namespace graphlift;

TEST_CASE("exact counts on the complete graph on four vertices") {
  Graph g = complete_graph(4);
  ExactCounts c3 = exact_count(g, 3);
  CHECK(c3.total == 4);
  CHECK(c3.count_of(*c3.catalog->find_name("wedge")) == 0);
  CHECK(c3.count_of(*c3.catalog->find_name("triangle")) == 4);

  ExactCounts c4 = exact_count(g, 4);
  CHECK(c4.total == 1);
  CHECK(c4.count_of(*c4.catalog->find_name("4-clique")) == 1);
  CHECK(c4.count_of(*c4.catalog->find_name("4-path")) == 0);
}

TEST_CASE("exact counts on named small graphs") {
  // star: every 3-subset through the hub is a wedge
  ExactCounts star = exact_count(star_graph(4), 3);
  CHECK(star.count_of(*star.catalog->find_name("wedge")) == 6);
  CHECK(star.count_of(*star.catalog->find_name("triangle")) == 0);

  ExactCounts diamond = exact_count(diamond_graph(), 3);
  CHECK(diamond.count_of(*diamond.catalog->find_name("triangle")) == 2);
  CHECK(diamond.count_of(*diamond.catalog->find_name("wedge")) == 2);

  // Petersen: girth five, so no triangles and no 4-cycles
  ExactCounts pet3 = exact_count(petersen_graph(), 3);
  CHECK(pet3.count_of(*pet3.catalog->find_name("triangle")) == 0);
  CHECK(pet3.count_of(*pet3.catalog->find_name("wedge")) == 30);
  ExactCounts pet5 = exact_count(petersen_graph(), 5);
  const AdjMask ring = pair_bit(0, 1, 5) | pair_bit(1, 2, 5) | pair_bit(2, 3, 5) |
                       pair_bit(3, 4, 5) | pair_bit(0, 4, 5);
  const GraphletType* cyc = pet5.catalog->find_canonical(pet5.catalog->canonicalize(ring));
  REQUIRE(cyc != nullptr);
  CHECK(pet5.count_of(*cyc) == 12);  // the Petersen graph has exactly twelve 5-cycles
}

TEST_CASE("enumeration matches the all-subsets reference") {
  std::vector<Graph> graphs;
  graphs.push_back(erdos_renyi_connected(9, 0.35, 14));
  graphs.push_back(erdos_renyi_connected(10, 0.3, 15));
  graphs.push_back(star_graph(6));
  graphs.push_back(cycle_graph(9));
  graphs.push_back(petersen_graph());
  for (const Graph& g : graphs) {
    for (int k = 3; k <= 5; ++k) {
      ExactCounts fast = exact_count(g, k);
      ExactCounts slow = exact_count_bruteforce(g, k);
      CHECK(fast.total == slow.total);
      REQUIRE(fast.by_type.size() == slow.by_type.size());
      for (std::size_t i = 0; i < fast.by_type.size(); ++i) {
        CHECK(fast.by_type[i] == slow.by_type[i]);
      }
    }
  }
}

TEST_CASE("subset visitor sees each connected set exactly once") {
  Graph g = erdos_renyi_connected(11, 0.3, 33);
  std::set<std::set<VertexId>> seen;
  for_each_connected_subset(g, 4, [&](const InducedSubgraph& s) {
    auto verts = s.vertex_span();
    std::set<VertexId> key(verts.begin(), verts.end());
    REQUIRE(key.size() == 4);
    CHECK(seen.insert(key).second);  // no repeats
    CHECK(mask_connected(s.mask, 4));
  });
  CHECK(seen.size() == exact_count(g, 4).total);
}

TEST_CASE("the enumeration cap aborts oversized jobs") {
  Graph g = complete_graph(12);
  ExactCountOptions opt;
  opt.max_subgraphs = 50;
  CHECK_THROWS_AS(exact_count(g, 4, opt), InfeasibleError);
}

TEST_CASE("sequence visitor probabilities sum to one") {
  Graph g = erdos_renyi_connected(9, 0.35, 50);
  for (const char* spec : {"uniform", "rw", "degree-poly:d*(d-1)"}) {
    const auto start = StartDistribution::from_spec(g, spec);
    for (int k = 3; k <= 5; ++k) {
      double total = 0;
      std::uint64_t sequences = 0;
      for_each_sequence<double>(g, k, start,
                                [&](std::span<const VertexId>, double p,
                                    std::span<const SequenceBoundaryEdge>) {
                                  total += p;
                                  ++sequences;
                                });
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(sequences > 0);
    }
  }
}

TEST_CASE("rational tabulation sums to exactly one") {
  Graph g = erdos_renyi_connected(10, 0.3, 51);
  const auto rw = StartDistribution::rw_stationary(g);
  PiEnumeration<BigRational> pi = enumerate_pi<BigRational>(g, 4, rw);
  CHECK(pi.sequence_total == BigRational(1));
  CHECK(pi.sequence_count > 0);

  // each subset aggregate equals the direct order sum
  for (const auto& [mask, prob] : pi.subset_prob) {
    std::array<VertexId, kMaxGraphletSize> verts{};
    int size = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (mask & (1u << v)) verts[size++] = v;
    }
    REQUIRE(size == 4);
    auto s = InducedSubgraph::from_host(g, {verts.data(), 4});
    CHECK(pi_u_direct<BigRational>(s, rw) == prob);
  }
}

TEST_CASE("rational tabulation refuses large hosts") {
  Graph g = erdos_renyi_connected(21, 0.2, 52);
  const auto rw = StartDistribution::rw_stationary(g);
  CHECK_THROWS_AS(enumerate_pi<BigRational>(g, 3, rw), std::invalid_argument);
}

TEST_CASE("sequence replay matches the visitor and rejects unreachable orders") {
  Graph g = erdos_renyi_connected(9, 0.35, 53);
  const auto uniform = StartDistribution::uniform(g);
  int checked = 0;
  for_each_sequence<double>(g, 4, uniform,
                            [&](std::span<const VertexId> verts, double p,
                                std::span<const SequenceBoundaryEdge>) {
                              if (++checked % 7 != 0) return;  // sample a few
                              const double replay =
                                  sequence_probability<double>(g, verts, uniform);
                              CHECK(replay == doctest::Approx(p).epsilon(1e-12));
                            });
  CHECK(checked > 0);

  // a disconnected prefix has probability zero
  Graph path = path_graph(4);
  std::vector<VertexId> broken{0, 2, 1, 3};
  CHECK(sequence_probability<double>(path, broken, StartDistribution::uniform(path)) == 0.0);
}

TEST_CASE("boundary spans describe the grown set") {
  Graph g = star_graph(5);
  const auto uniform = StartDistribution::uniform(g);
  bool saw_hub_start = false;
  for_each_sequence<double>(g, 3, uniform,
                            [&](std::span<const VertexId> verts, double,
                                std::span<const SequenceBoundaryEdge> boundary) {
                              if (verts[0] != 0) return;
                              saw_hub_start = true;
                              // grown set is the hub and two leaves; the
                              // remaining boundary edges all leave the hub
                              CHECK(boundary.size() == 3);
                              for (const auto& e : boundary) {
                                CHECK(e.inside == 0);
                                CHECK(e.outside > 0);
                              }
                            });
  CHECK(saw_hub_start);
}
