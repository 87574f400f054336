#include <doctest.h>

#include <cmath>
#include <sstream>

#include <graphlift/graph_gen.hpp>
#include <graphlift/lifting.hpp>
#include <graphlift/oracle.hpp>
#include <graphlift/stats.hpp>

using namespace graphlift;

namespace {

EstimateRun run_from_stream(const std::vector<double>& phi) {
  EstimateRun run;
  run.samples = phi.size();
  for (double x : phi) {
    run.sum_phi += x;
    run.sum_phi_sq += x * x;
  }
  run.workers = 1;
  run.phi_stream = phi;
  return run;
}

}  // namespace

TEST_CASE("variance under independence is the unbiased sample variance") {
  CHECK(variance_under_independence(run_from_stream({0, 2})) == doctest::Approx(2.0));
  CHECK(variance_under_independence(run_from_stream({5, 5, 5, 5})) == doctest::Approx(0.0));
  CHECK(variance_under_independence(run_from_stream({1, 2, 3, 4})) ==
        doctest::Approx(5.0 / 3.0));
  CHECK(variance_of_mean_under_independence(run_from_stream({0, 2})) == doctest::Approx(1.0));
  CHECK_THROWS_AS(variance_under_independence(run_from_stream({1})), std::invalid_argument);
}

TEST_CASE("lag correlation handles the edge cases") {
  std::vector<double> ramp{0, 1, 2, 3, 4, 5, 6, 7};
  auto c1 = lag_correlation(ramp, 1);
  REQUIRE(c1.has_value());
  CHECK(*c1 == doctest::Approx(1.0));  // shifted ramp is a linear image

  std::vector<double> alternating{1, -1, 1, -1, 1, -1};
  auto ca = lag_correlation(alternating, 1);
  REQUIRE(ca.has_value());
  CHECK(*ca == doctest::Approx(-1.0));

  std::vector<double> constant{3, 3, 3, 3};
  CHECK_FALSE(lag_correlation(constant, 1).has_value());
  std::vector<double> tiny{1.0};
  CHECK_FALSE(lag_correlation(tiny, 1).has_value());
  CHECK_THROWS_AS(lag_correlation(ramp, 0), std::invalid_argument);
}

TEST_CASE("lag-1 covariance uses pair-count-minus-one normalization") {
  std::vector<double> s{0, 2, 0, 2};
  // pairs (0,2),(2,0),(0,2): means 2/3 and 4/3
  auto cov = lag1_covariance(s);
  REQUIRE(cov.has_value());
  const double expect =
      ((0 - 2.0 / 3) * (2 - 4.0 / 3) + (2 - 2.0 / 3) * (0 - 4.0 / 3) +
       (0 - 2.0 / 3) * (2 - 4.0 / 3)) /
      2.0;
  CHECK(*cov == doctest::Approx(expect));
  std::vector<double> one{1.0};
  CHECK_FALSE(lag1_covariance(one).has_value());
}

TEST_CASE("stream diagnostics require a retained single chain") {
  EstimateRun no_stream;
  no_stream.samples = 10;
  no_stream.workers = 1;
  CHECK_THROWS_AS(lag_correlations(no_stream, 3), std::invalid_argument);
  EstimateRun multi = run_from_stream({1, 2, 3});
  multi.workers = 2;
  CHECK_THROWS_AS(lag_correlations(multi, 3), std::invalid_argument);

  EstimateRun good = run_from_stream({0, 1, 0, 1, 0, 1, 0, 1});
  auto lags = lag_correlations(good, 2);
  REQUIRE(lags.size() == 2);
  CHECK(*lags[0] == doctest::Approx(-1.0));
  CHECK(*lags[1] == doctest::Approx(1.0));
}

TEST_CASE("walk spectra of known graphs") {
  CHECK(walk_second_eigenvalue(complete_graph(3)) == doctest::Approx(-0.5));
  CHECK(walk_second_eigenvalue(complete_graph(4)) == doctest::Approx(-1.0 / 3));
  CHECK(walk_second_eigenvalue(petersen_graph()) == doctest::Approx(1.0 / 3));
  CHECK(std::abs(walk_second_eigenvalue(cycle_graph(4))) < 1e-9);

  CHECK_THROWS_AS(walk_second_eigenvalue(erdos_renyi_connected(30, 0.2, 1), 20),
                  std::invalid_argument);
  Graph isolated = Graph::from_edges(
      3, std::vector<std::pair<VertexId, VertexId>>{{0, 1}}, {});
  CHECK_THROWS_AS(walk_second_eigenvalue(isolated), std::invalid_argument);
}

TEST_CASE("variance bound on the complete graph on four vertices") {
  Graph g = complete_graph(4);
  const Catalog& c = Catalog::for_size(3);
  TheoryBoundsOptions opt;
  opt.compute_eigenvalue = false;
  TheoryBounds b = theory_bounds(g, *c.find_name("triangle"), 4.0, opt);
  // top degrees 3,3,3: D = 3 + 3 = 6
  CHECK(b.degree_product == doctest::Approx(6.0));
  CHECK(b.var_bound_rw == doctest::Approx(4.0 * (12.0 / 6.0) * 6.0));       // 48
  CHECK(b.var_bound_uniform == doctest::Approx(4.0 * (36.0 / 6.0) * 6.0));  // 144
  CHECK_FALSE(b.mu.has_value());
  CHECK(b.gamma_bound(3) == 1.0);  // unknown mu never sharpens the bound
  CHECK_FALSE(b.cov_bound_total(3).has_value());
}

TEST_CASE("covariance bounds decay with the walk spacing") {
  Graph g = erdos_renyi_connected(25, 0.25, 3);
  const Catalog& c = Catalog::for_size(3);
  TheoryBounds b = theory_bounds(g, *c.find_name("triangle"), 10.0);
  REQUIRE(b.mu.has_value());
  CHECK(*b.mu < 1.0);
  CHECK(*b.mu > -1.0);
  auto c1 = b.cov_bound_lag1(1);
  auto c5 = b.cov_bound_lag1(5);
  auto c20 = b.cov_bound_lag1(20);
  REQUIRE(c1.has_value());
  REQUIRE(c5.has_value());
  REQUIRE(c20.has_value());
  CHECK(*c5 < *c1);
  CHECK(*c20 < *c5);
  auto total = b.cov_bound_total(5);
  REQUIRE(total.has_value());
  CHECK(*total > 0.0);
}

TEST_CASE("independent-sample variance matches its closed form") {
  // iid starts make the phi stream independent, so the sample variance must
  // approach sum over subgraphs of 1/pi_U minus the squared count
  Graph g = erdos_renyi_connected(22, 0.25, 19);
  const Catalog& c = Catalog::for_size(3);
  const GraphletType& tri = *c.find_name("triangle");
  const auto uniform = StartDistribution::uniform(g);

  double closed = 0.0;
  std::uint64_t n_m = 0;
  for_each_connected_subset(g, 3, [&](const InducedSubgraph& s) {
    if (c.classify(s.mask).type != &tri) return;
    closed += 1.0 / pi_u_direct<double>(s, uniform);
    ++n_m;
  });
  REQUIRE(n_m > 0);
  closed -= static_cast<double>(n_m) * static_cast<double>(n_m);

  EstimateOptions opt;
  opt.samples = 400000;
  opt.seed = 27;
  EstimateRun run = unordered_estimate(g, tri, opt.samples, uniform, opt);
  const double measured = variance_under_independence(run);
  CHECK(measured == doctest::Approx(closed).epsilon(0.05));
}

TEST_CASE("relative error study scores each type against the reference") {
  Graph g = complete_graph(4);
  ExactCounts exact = exact_count(g, 3);
  const auto uniform = StartDistribution::uniform(g);
  RelativeErrorOptions opt;
  opt.runs = 4;
  opt.samples = 200;
  opt.seed = 10;
  auto res = relative_error_experiment(g, EstimatorKind::unordered, 3, uniform, exact, opt);
  REQUIRE(res.size() == 1);  // wedges have count zero and are omitted
  CHECK(res[0].type->name == "triangle");
  CHECK(res[0].exact == doctest::Approx(4.0));
  CHECK(res[0].runs == 4);
  CHECK(res[0].mean_relative_error == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(res[0].queries == 4 * 200 * 3);

  RelativeErrorOptions bad;
  bad.runs = 0;
  CHECK_THROWS_AS(relative_error_experiment(g, EstimatorKind::unordered, 3, uniform, exact, bad),
                  std::invalid_argument);
}

TEST_CASE("csv writers emit the documented schemas") {
  ResultRow row;
  row.graph = "toy";
  row.k = 3;
  row.type = "triangle";
  row.estimator = "ordered";
  row.start = "rw";
  row.spacing = 2;
  row.samples = 10;
  row.queries = 50;
  row.estimate = 4.0;
  std::ostringstream out;
  write_results_csv(out, {&row, 1});
  const std::string text = out.str();
  CHECK(text.find("# graphlift-results v1\n") == 0);
  CHECK(text.find("graph,k,type,estimator,start,h,n,queries,estimate,v_ind,"
                  "corr_lag1,bound_var,bound_cov\n") != std::string::npos);
  CHECK(text.find("toy,3,triangle,ordered,rw,2,10,50,4,,,,\n") != std::string::npos);

  RelErrRow rrow;
  rrow.graph = "toy";
  rrow.k = 3;
  rrow.type = "triangle";
  rrow.estimator = "unordered";
  rrow.start = "uniform";
  rrow.spacing = 3;
  rrow.samples = 100;
  rrow.runs = 5;
  rrow.exact = 4;
  rrow.mean_rel_error = 0.25;
  std::ostringstream rout;
  write_relerr_csv(rout, {&rrow, 1});
  const std::string rtext = rout.str();
  CHECK(rtext.find("# graphlift-relerr v1\n") == 0);
  CHECK(rtext.find("toy,3,triangle,unordered,uniform,3,100,5,4,0.25\n") != std::string::npos);
}
