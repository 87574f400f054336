#include <doctest.h>

#include <algorithm>
#include <set>

#include <graphlift/catalog.hpp>
#include <graphlift/graph_gen.hpp>
#include <graphlift/rational.hpp>
#include <graphlift/rng.hpp>

using namespace graphlift;

namespace {

AdjMask path_mask(int k) {
  AdjMask m = 0;
  for (int i = 0; i + 1 < k; ++i) m |= pair_bit(i, i + 1, k);
  return m;
}

AdjMask clique_mask(int k) {
  AdjMask m = 0;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) m |= pair_bit(i, j, k);
  return m;
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// independent ordering counter: try every permutation, keep those whose
// prefixes all induce connected subgraphs
std::uint64_t orderings_bruteforce(AdjMask mask, int k) {
  std::array<int, kMaxGraphletSize> perm{};
  for (int i = 0; i < k; ++i) perm[i] = i;
  std::uint64_t good = 0;
  do {
    bool ok = true;
    for (int depth = 1; depth < k && ok; ++depth) {
      bool attached = false;
      for (int r = 0; r < depth && !attached; ++r) {
        const int a = std::min(perm[r], perm[depth]);
        const int b = std::max(perm[r], perm[depth]);
        attached = mask_has_edge(mask, a, b, k);
      }
      ok = attached;
    }
    if (ok) ++good;
  } while (std::next_permutation(perm.begin(), perm.begin() + k));
  return good;
}

}  // namespace

TEST_CASE("edge bits are laid out row major from the top bit") {
  CHECK(pair_count(3) == 3);
  CHECK(pair_count(5) == 10);
  CHECK(pair_bit(0, 1, 3) == 0b100u);
  CHECK(pair_bit(0, 2, 3) == 0b010u);
  CHECK(pair_bit(1, 2, 3) == 0b001u);
  CHECK(mask_has_edge(0b011, 1, 2, 3));
  CHECK_FALSE(mask_has_edge(0b011, 0, 1, 3));
}

TEST_CASE("mask connectivity") {
  CHECK(mask_connected(0b111, 3));
  CHECK(mask_connected(0b011, 3));
  CHECK_FALSE(mask_connected(0b100, 3));  // edge (0,1) plus isolated vertex 2
  CHECK(mask_connected(path_mask(5), 5));
  CHECK_FALSE(mask_connected(pair_bit(0, 1, 4) | pair_bit(2, 3, 4), 4));
}

TEST_CASE("compatible ordering counts match a permutation scan") {
  for (int k = 3; k <= 5; ++k) {
    CHECK(count_compatible_orderings(path_mask(k), k) == orderings_bruteforce(path_mask(k), k));
    CHECK(count_compatible_orderings(clique_mask(k), k) == factorial(k));
  }
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int k = 4 + static_cast<int>(rng.below(2));
    AdjMask m = static_cast<AdjMask>(rng.below(1u << pair_count(k)));
    if (!mask_connected(m, k)) continue;
    CHECK(count_compatible_orderings(m, k) == orderings_bruteforce(m, k));
  }
}

TEST_CASE("size 3 table is wedge then triangle") {
  const Catalog& c = Catalog::for_size(3);
  REQUIRE(c.type_count() == 2);
  CHECK(c.type(1).name == "wedge");
  CHECK(c.type(1).canonical_mask == 0b011);
  CHECK(c.type(1).edge_count == 2);
  CHECK(c.type(1).ordering_count == 4);
  CHECK(c.type(2).name == "triangle");
  CHECK(c.type(2).canonical_mask == 0b111);
  CHECK(c.type(2).ordering_count == 6);
}

TEST_CASE("size 4 table keeps the documented order") {
  const Catalog& c = Catalog::for_size(4);
  REQUIRE(c.type_count() == 6);
  const char* names[] = {"3-star", "4-path", "4-cycle",
                         "4-tailedtriangle", "4-chordalcycle", "4-clique"};
  const std::uint64_t cos[] = {12, 8, 16, 14, 20, 24};
  const int edges[] = {3, 3, 4, 4, 5, 6};
  for (int i = 1; i <= 6; ++i) {
    CHECK(c.type(i).name == names[i - 1]);
    CHECK(c.type(i).ordering_count == cos[i - 1]);
    CHECK(c.type(i).edge_count == edges[i - 1]);
    CHECK(c.find_name(names[i - 1]) == &c.type(i));
  }
}

TEST_CASE("size 5 table has 21 types sorted by edge count") {
  const Catalog& c = Catalog::for_size(5);
  REQUIRE(c.type_count() == 21);
  for (int i = 1; i < 21; ++i) {
    const auto& a = c.type(i);
    const auto& b = c.type(i + 1);
    CHECK((a.edge_count < b.edge_count ||
           (a.edge_count == b.edge_count && a.canonical_mask < b.canonical_mask)));
  }
  CHECK(c.type(1).edge_count == 4);    // trees first
  CHECK(c.type(21).edge_count == 10);  // clique last
  CHECK(c.type(21).ordering_count == 120);
  for (const GraphletType& t : c.types()) {
    CHECK(t.ordering_count == count_compatible_orderings(t.canonical_mask, 5));
    CHECK(c.find_canonical(t.canonical_mask) == &t);
  }
}

TEST_CASE("classification is invariant under relabeling") {
  Rng rng(17);
  for (int k = 3; k <= 5; ++k) {
    const Catalog& c = Catalog::for_size(k);
    for (int trial = 0; trial < 60; ++trial) {
      AdjMask m = static_cast<AdjMask>(rng.below(1u << pair_count(k)));
      if (!mask_connected(m, k)) continue;
      const auto base = c.classify(m);
      // relabel by a random permutation
      std::array<int, kMaxGraphletSize> p{};
      for (int i = 0; i < k; ++i) p[i] = i;
      for (int i = k - 1; i > 0; --i)
        std::swap(p[i], p[rng.below(static_cast<std::uint64_t>(i + 1))]);
      AdjMask relabeled = 0;
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
          if (mask_has_edge(m, i, j, k))
            relabeled |= pair_bit(std::min(p[i], p[j]), std::max(p[i], p[j]), k);
      CHECK(c.classify(relabeled).type == base.type);
      CHECK(c.canonicalize(relabeled) == base.type->canonical_mask);
    }
  }
}

TEST_CASE("classify rejects disconnected masks and canonical forms are fixed points") {
  const Catalog& c = Catalog::for_size(4);
  CHECK_THROWS_AS(c.classify(pair_bit(0, 1, 4)), std::invalid_argument);
  for (const GraphletType& t : c.types()) {
    CHECK(c.canonicalize(t.canonical_mask) == t.canonical_mask);
  }
}

TEST_CASE("classify returns a permutation onto the canonical form") {
  const Catalog& c = Catalog::for_size(4);
  Rng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    AdjMask m = static_cast<AdjMask>(rng.below(1u << 6));
    if (!mask_connected(m, 4)) continue;
    const auto r = c.classify(m);
    CHECK(c.permute_mask(m, r.perm) == r.type->canonical_mask);
  }
}

TEST_CASE("canonical degrees follow the vertices through the permutation") {
  Graph star = star_graph(5);
  std::array<VertexId, 3> wverts{1, 0, 2};  // leaf, hub, leaf: a wedge
  auto ws = InducedSubgraph::from_host(star, {wverts.data(), 3});
  const Catalog& c3 = Catalog::for_size(3);
  const auto wr = c3.classify(ws);
  CHECK(wr.type->name == "wedge");
  auto wd = canonical_degrees(ws, c3, wr);
  // the wedge center is the canonical vertex with local degree 2; it must
  // carry the hub's host degree, the others the leaf degree
  int center = -1;
  for (int i = 0; i < 3; ++i) {
    int deg = 0;
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      const int a = std::min(i, j), b = std::max(i, j);
      if (mask_has_edge(wr.type->canonical_mask, a, b, 3)) ++deg;
    }
    if (deg == 2) center = i;
  }
  REQUIRE(center >= 0);
  for (int i = 0; i < 3; ++i) {
    CHECK(wd[static_cast<std::size_t>(i)] == (i == center ? 5u : 1u));
  }
}

TEST_CASE("aggregate probability: plan, direct, and recursive forms agree") {
  Graph g = erdos_renyi_connected(12, 0.3, 41);
  const Catalog& c = Catalog::for_size(4);
  const StartDistribution start = StartDistribution::rw_stationary(g);
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    // grow a connected 4-set by hand
    std::array<VertexId, 4> verts{};
    verts[0] = static_cast<VertexId>(rng.below(g.vertex_count()));
    int size = 1;
    int guard = 0;
    while (size < 4 && ++guard < 100) {
      const VertexId from = verts[rng.below(static_cast<std::uint64_t>(size))];
      auto adj = g.adjacency(from);
      const VertexId cand = adj[rng.below(adj.size())];
      bool present = false;
      for (int i = 0; i < size; ++i) present = present || verts[i] == cand;
      if (!present) verts[size++] = cand;
    }
    if (size < 4) continue;
    auto s = InducedSubgraph::from_host(g, {verts.data(), 4});
    const double direct = pi_u_direct<double>(s, start);
    const double recursive = pi_u_recursive<double>(s, start);
    CHECK(direct == doctest::Approx(recursive).epsilon(1e-12));

    const auto r = c.classify(s);
    auto plan = LiftPlan::for_type(*r.type);
    auto cd = canonical_degrees(s, c, r);
    const double via_plan =
        plan->eval<double>({cd.data(), 4}, start) / static_cast<double>(start.normalizer());
    CHECK(via_plan == doctest::Approx(direct).epsilon(1e-12));

    const BigRational exact_direct = pi_u_direct<BigRational>(s, start);
    const BigRational exact_recursive = pi_u_recursive<BigRational>(s, start);
    CHECK(exact_direct == exact_recursive);
  }
}

TEST_CASE("degree probability function caches without changing values") {
  Graph g = erdos_renyi_connected(15, 0.25, 8);
  const Catalog& c = Catalog::for_size(4);
  const StartDistribution start = StartDistribution::uniform(g);
  DegreeProbabilityFunction f(LiftPlan::for_type(*c.find_name("4-path")), start);
  std::array<std::uint32_t, 4> degs{3, 1, 4, 2};
  const double first = f.value({degs.data(), 4});
  const double second = f.value({degs.data(), 4});
  CHECK(first == second);
  CHECK(f.hits() >= 1);
  CHECK(first ==
        doctest::Approx(f.exact_value<double>({degs.data(), 4})).epsilon(1e-15));
}
