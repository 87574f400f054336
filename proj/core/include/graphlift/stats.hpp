#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "graphlift/catalog.hpp"
#include "graphlift/graph.hpp"
#include "graphlift/oracle.hpp"
#include "graphlift/run.hpp"

namespace graphlift {

/// Unbiased variance of the per-sample weights: the "variance under
/// independence" a diagnostics table reports. Throws std::invalid_argument
/// when the run has fewer than two samples.
double variance_under_independence(const EstimateRun& run);

/// The share of that variance in the mean estimate: the above divided by the
/// sample count.
double variance_of_mean_under_independence(const EstimateRun& run);

/// Pearson correlation between stream[i] and stream[i + lag] over the
/// aligned overlap, each margin centered and scaled by its own statistics.
/// nullopt when the overlap has fewer than two pairs or either margin is
/// constant.
std::optional<double> lag_correlation(std::span<const double> stream, std::size_t lag);

/// Sample covariance (pair count - 1 normalization) between stream[i] and
/// stream[i + 1]; nullopt with fewer than two pairs.
std::optional<double> lag1_covariance(std::span<const double> stream);

/// Correlations at lags 1..max_lag of a retained stream. Requires a
/// single-chain run that kept its stream; throws std::invalid_argument
/// otherwise (correlation is meaningless across interleaved chains).
std::vector<std::optional<double>> lag_correlations(const EstimateRun& run,
                                                    std::size_t max_lag);

struct TheoryBoundsOptions {
  bool compute_eigenvalue = true;
  std::size_t eigenvalue_vertex_limit = 2000;
};

/// Computed variance and covariance bounds for one target type. With the k
/// highest host degrees Delta_1 >= ... >= Delta_k and
/// D = prod_{r=2}^{k-1} (Delta_1 + ... + Delta_r):
///   walk start:    V <= N * (2 E / co) * D
///   uniform start: V <= N * (2 Delta_1 E / co) * D
///   lag-1 cov:     |Cov| <= 8 N E^2 exp(-(1 - mu) * steps) * D
///   summed form:   (2/n)|sum Cov| <= 8 N E^2 D * g / (1 - g), g as above
/// `steps` is the number of walk transitions between consecutive samples,
/// i.e. max(configured spacing, 1). mu is the second largest eigenvalue of
/// the walk transition matrix, computed only within the vertex limit.
struct TheoryBounds {
  int k = 0;
  double n_m = 0.0;
  double edge_count = 0.0;
  double co = 1.0;
  double degree_product = 1.0;  // D
  double var_bound_rw = 0.0;
  double var_bound_uniform = 0.0;
  std::optional<double> mu;

  /// Mixing coefficient bound e^{-(1 - mu) * steps}; 1 when mu is unknown
  /// (the coefficient never exceeds 1).
  double gamma_bound(double steps) const;
  std::optional<double> cov_bound_lag1(double steps) const;
  std::optional<double> cov_bound_total(double steps) const;
};

TheoryBounds theory_bounds(const Graph& g, const GraphletType& target, double n_m,
                           const TheoryBoundsOptions& options = {});

/// Second largest eigenvalue of the neighbor-uniform walk's transition
/// matrix, through its symmetric similarity form. Dense solve: refuses
/// graphs over the vertex limit and graphs with isolated vertices.
double walk_second_eigenvalue(const Graph& g, std::size_t vertex_limit = 2000);

struct RelativeErrorOptions {
  std::uint64_t runs = 100;
  std::uint64_t samples = 0;       // per run; set exactly one of these two
  std::uint64_t query_budget = 0;  // per run
  std::uint32_t workers = 1;
  std::uint64_t seed = 1;  // run r uses seed + r
};

struct RelativeErrorResult {
  const GraphletType* type = nullptr;
  double exact = 0.0;
  double mean_relative_error = 0.0;  // mean over runs of |estimate - exact| / exact
  std::uint64_t runs = 0;
  std::uint64_t queries = 0;  // summed over runs
};

/// Repeated-run error study against reference counts: run r uses seed
/// seed + r, and every type with a nonzero reference count is scored by its
/// mean relative error. Zero-count types are omitted (relative error is
/// undefined there).
std::vector<RelativeErrorResult> relative_error_experiment(
    const Graph& g, EstimatorKind estimator, int k, const StartDistribution& start,
    const ExactCounts& reference, const RelativeErrorOptions& options);

/// One row of the measurement table emitted by the diagnostics command.
struct ResultRow {
  std::string graph;
  int k = 0;
  std::string type;
  std::string estimator;
  std::string start;
  std::uint32_t spacing = 0;
  std::uint64_t samples = 0;
  std::uint64_t queries = 0;
  double estimate = 0.0;
  std::optional<double> v_ind;
  std::optional<double> corr_lag1;
  std::optional<double> bound_var;
  std::optional<double> bound_cov;
};

/// Stable schema, versioned in the leading comment row:
///   # graphlift-results v1
///   graph,k,type,estimator,start,h,n,queries,estimate,v_ind,corr_lag1,bound_var,bound_cov
/// Optional cells are left empty. Doubles are written round-trippable.
void write_results_csv(std::ostream& out, std::span<const ResultRow> rows);

struct RelErrRow {
  std::string graph;
  int k = 0;
  std::string type;
  std::string estimator;
  std::string start;
  std::uint32_t spacing = 0;
  std::uint64_t samples = 0;  // per run
  std::uint64_t runs = 0;
  double exact = 0.0;
  double mean_rel_error = 0.0;
};

/// Schema:
///   # graphlift-relerr v1
///   graph,k,type,estimator,start,h,n,runs,exact,mean_rel_error
void write_relerr_csv(std::ostream& out, std::span<const RelErrRow> rows);

}  // namespace graphlift
