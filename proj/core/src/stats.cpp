#include "graphlift/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <Eigen/Dense>

#include "graphlift/lifting.hpp"

namespace graphlift {

double variance_under_independence(const EstimateRun& run) {
  if (run.samples < 2) {
    throw std::invalid_argument("variance needs at least two samples");
  }
  return run.sample_variance();
}

double variance_of_mean_under_independence(const EstimateRun& run) {
  return variance_under_independence(run) / static_cast<double>(run.samples);
}

namespace {

struct Moments {
  double mean_x = 0.0, mean_y = 0.0;
  double var_x = 0.0, var_y = 0.0;  // sums of squared deviations
  double cov = 0.0;                 // sum of products of deviations
  std::size_t pairs = 0;
};

Moments aligned_moments(std::span<const double> stream, std::size_t lag) {
  Moments m;
  if (stream.size() < lag + 2) return m;
  m.pairs = stream.size() - lag;
  for (std::size_t i = 0; i < m.pairs; ++i) {
    m.mean_x += stream[i];
    m.mean_y += stream[i + lag];
  }
  m.mean_x /= static_cast<double>(m.pairs);
  m.mean_y /= static_cast<double>(m.pairs);
  for (std::size_t i = 0; i < m.pairs; ++i) {
    const double dx = stream[i] - m.mean_x;
    const double dy = stream[i + lag] - m.mean_y;
    m.var_x += dx * dx;
    m.var_y += dy * dy;
    m.cov += dx * dy;
  }
  return m;
}

}  // namespace

std::optional<double> lag_correlation(std::span<const double> stream, std::size_t lag) {
  if (lag == 0) throw std::invalid_argument("lag must be positive");
  const Moments m = aligned_moments(stream, lag);
  if (m.pairs < 2) return std::nullopt;
  if (m.var_x <= 0.0 || m.var_y <= 0.0) return std::nullopt;
  return m.cov / std::sqrt(m.var_x * m.var_y);
}

std::optional<double> lag1_covariance(std::span<const double> stream) {
  const Moments m = aligned_moments(stream, 1);
  if (m.pairs < 2) return std::nullopt;
  return m.cov / static_cast<double>(m.pairs - 1);
}

std::vector<std::optional<double>> lag_correlations(const EstimateRun& run,
                                                    std::size_t max_lag) {
  if (run.workers != 1) {
    throw std::invalid_argument("lag correlation is defined per chain; rerun with one worker");
  }
  if (!run.phi_stream.has_value()) {
    throw std::invalid_argument("run did not retain its phi stream");
  }
  std::vector<std::optional<double>> out;
  out.reserve(max_lag);
  for (std::size_t lag = 1; lag <= max_lag; ++lag) {
    out.push_back(lag_correlation(*run.phi_stream, lag));
  }
  return out;
}

double TheoryBounds::gamma_bound(double steps) const {
  if (!mu.has_value()) return 1.0;
  return std::exp(-(1.0 - *mu) * steps);
}

std::optional<double> TheoryBounds::cov_bound_lag1(double steps) const {
  if (!mu.has_value()) return std::nullopt;
  return 8.0 * n_m * edge_count * edge_count * gamma_bound(steps) * degree_product;
}

std::optional<double> TheoryBounds::cov_bound_total(double steps) const {
  if (!mu.has_value()) return std::nullopt;
  const double g = gamma_bound(steps);
  if (g >= 1.0) return std::nullopt;  // no decay, the sum does not converge
  return 8.0 * n_m * edge_count * edge_count * degree_product * g / (1.0 - g);
}

TheoryBounds theory_bounds(const Graph& g, const GraphletType& target, double n_m,
                           const TheoryBoundsOptions& options) {
  const int k = target.k;
  std::vector<std::uint32_t> degrees;
  degrees.reserve(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) degrees.push_back(g.degree(v));
  const std::size_t top = std::min<std::size_t>(degrees.size(), static_cast<std::size_t>(k));
  std::partial_sort(degrees.begin(), degrees.begin() + static_cast<std::ptrdiff_t>(top),
                    degrees.end(), std::greater<>());

  TheoryBounds bounds;
  bounds.k = k;
  bounds.n_m = n_m;
  bounds.edge_count = static_cast<double>(g.edge_count());
  bounds.co = static_cast<double>(target.ordering_count);

  double running = 0.0;
  double d = 1.0;
  for (int r = 1; r <= k - 1; ++r) {
    running += static_cast<double>(degrees[static_cast<std::size_t>(r - 1)]);
    if (r >= 2) d *= running;  // factor Delta_1 + ... + Delta_r
  }
  bounds.degree_product = d;

  const double delta1 = static_cast<double>(degrees[0]);
  bounds.var_bound_rw = n_m * (2.0 * bounds.edge_count / bounds.co) * d;
  bounds.var_bound_uniform = n_m * (2.0 * delta1 * bounds.edge_count / bounds.co) * d;

  if (options.compute_eigenvalue && g.vertex_count() <= options.eigenvalue_vertex_limit) {
    bounds.mu = walk_second_eigenvalue(g, options.eigenvalue_vertex_limit);
  }
  return bounds;
}

double walk_second_eigenvalue(const Graph& g, std::size_t vertex_limit) {
  const std::size_t n = g.vertex_count();
  if (n < 2) throw std::invalid_argument("walk spectrum needs at least two vertices");
  if (n > vertex_limit) {
    throw std::invalid_argument("graph too large for a dense eigensolve");
  }
  for (VertexId v = 0; v < n; ++v) {
    if (g.degree(v) == 0) {
      throw std::invalid_argument("walk transition undefined on isolated vertices");
    }
  }
  // D^{-1/2} A D^{-1/2} shares its spectrum with the transition matrix D^{-1} A.
  Eigen::MatrixXd sym = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n));
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId u : g.adjacency(v)) {
      sym(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(u)) =
          1.0 / std::sqrt(static_cast<double>(g.degree(v)) *
                          static_cast<double>(g.degree(u)));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failed to converge");
  }
  return solver.eigenvalues()(static_cast<Eigen::Index>(n - 2));
}

std::vector<RelativeErrorResult> relative_error_experiment(
    const Graph& g, EstimatorKind estimator, int k, const StartDistribution& start,
    const ExactCounts& reference, const RelativeErrorOptions& options) {
  if (reference.catalog == nullptr || reference.catalog->k() != k) {
    throw std::invalid_argument("reference counts are for a different size");
  }
  if (options.runs == 0) throw std::invalid_argument("need at least one run");

  const Catalog& catalog = *reference.catalog;
  std::vector<RelativeErrorResult> results;
  for (const GraphletType& type : catalog.types()) {
    if (reference.count_of(type) == 0) continue;
    RelativeErrorResult r;
    r.type = &type;
    r.exact = static_cast<double>(reference.count_of(type));
    results.push_back(r);
  }

  for (std::uint64_t run = 0; run < options.runs; ++run) {
    EstimateOptions opts;
    opts.samples = options.samples;
    opts.query_budget = options.query_budget;
    opts.workers = options.workers;
    opts.seed = options.seed + run;
    const auto estimates = estimate_counts(g, estimator, k, {}, start, opts);
    for (auto& r : results) {
      for (const auto& te : estimates) {
        if (te.type != r.type) continue;
        r.mean_relative_error += std::abs(te.run.estimate() - r.exact) / r.exact;
        r.queries += te.run.queries;
        break;
      }
    }
  }
  for (auto& r : results) {
    r.mean_relative_error /= static_cast<double>(options.runs);
    r.runs = options.runs;
  }
  return results;
}

namespace {

void append_double(std::string& line, double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  line += buf;
}

void append_optional(std::string& line, const std::optional<double>& value) {
  if (value.has_value()) append_double(line, *value);
}

}  // namespace

void write_results_csv(std::ostream& out, std::span<const ResultRow> rows) {
  out << "# graphlift-results v1\n";
  out << "graph,k,type,estimator,start,h,n,queries,estimate,v_ind,corr_lag1,"
         "bound_var,bound_cov\n";
  for (const ResultRow& row : rows) {
    std::string line;
    line += row.graph;
    line += ',';
    line += std::to_string(row.k);
    line += ',';
    line += row.type;
    line += ',';
    line += row.estimator;
    line += ',';
    line += row.start;
    line += ',';
    line += std::to_string(row.spacing);
    line += ',';
    line += std::to_string(row.samples);
    line += ',';
    line += std::to_string(row.queries);
    line += ',';
    append_double(line, row.estimate);
    line += ',';
    append_optional(line, row.v_ind);
    line += ',';
    append_optional(line, row.corr_lag1);
    line += ',';
    append_optional(line, row.bound_var);
    line += ',';
    append_optional(line, row.bound_cov);
    line += '\n';
    out << line;
  }
}

void write_relerr_csv(std::ostream& out, std::span<const RelErrRow> rows) {
  out << "# graphlift-relerr v1\n";
  out << "graph,k,type,estimator,start,h,n,runs,exact,mean_rel_error\n";
  for (const RelErrRow& row : rows) {
    std::string line;
    line += row.graph;
    line += ',';
    line += std::to_string(row.k);
    line += ',';
    line += row.type;
    line += ',';
    line += row.estimator;
    line += ',';
    line += row.start;
    line += ',';
    line += std::to_string(row.spacing);
    line += ',';
    line += std::to_string(row.samples);
    line += ',';
    line += std::to_string(row.runs);
    line += ',';
    append_double(line, row.exact);
    line += ',';
    append_double(line, row.mean_rel_error);
    line += '\n';
    out << line;
  }
}

}  // namespace graphlift
