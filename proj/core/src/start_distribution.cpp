#include "graphlift/start_distribution.hpp"

#include <algorithm>
#include <stdexcept>

#include "graphlift/errors.hpp"

namespace graphlift {

std::string_view to_string(StartKind kind) {
  switch (kind) {
    case StartKind::uniform: return "uniform";
    case StartKind::rw_stationary: return "rw";
    case StartKind::degree_polynomial: return "degree-poly";
  }
  return "?";
}

StartDistribution::StartDistribution(const Graph& g, StartKind kind,
                                     WalkParams params, std::optional<DegreeExpr> f)
    : g_(&g), kind_(kind), walk_(params), f_(std::move(f)) {
  if (g.vertex_count() == 0) throw std::invalid_argument("empty graph");
  switch (kind_) {
    case StartKind::uniform:
      K_ = g.vertex_count();
      break;
    case StartKind::rw_stationary:
      K_ = static_cast<std::int64_t>(2 * g.edge_count());
      break;
    case StartKind::degree_polynomial: {
      // Exact draws come from the prefix-sum table: pick r uniform in [0, K),
      // binary-search the first prefix exceeding r.
      cumulative_.resize(g.vertex_count());
      std::uint64_t acc = 0;
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const std::int64_t w = (*f_)(g.degree(v));
        if (w < 0) {
          throw std::invalid_argument(
              "start weight f(d) is negative at degree " +
              std::to_string(g.degree(v)));
        }
        acc += static_cast<std::uint64_t>(w);
        if (acc > static_cast<std::uint64_t>(INT64_MAX)) {
          throw std::overflow_error("start weight normalizer overflow");
        }
        cumulative_[v] = acc;
      }
      K_ = static_cast<std::int64_t>(acc);
      if (K_ == 0) {
        throw std::invalid_argument("start weight f vanishes on every vertex");
      }
      break;
    }
  }
}

StartDistribution StartDistribution::uniform(const Graph& g) {
  return StartDistribution(g, StartKind::uniform, WalkParams{}, std::nullopt);
}

StartDistribution StartDistribution::rw_stationary(const Graph& g, WalkParams params) {
  return StartDistribution(g, StartKind::rw_stationary, params, std::nullopt);
}

StartDistribution StartDistribution::degree_polynomial(const Graph& g, DegreeExpr f) {
  return StartDistribution(g, StartKind::degree_polynomial, WalkParams{}, std::move(f));
}

StartDistribution StartDistribution::from_spec(const Graph& g, std::string_view spec,
                                               WalkParams params) {
  if (spec == "uniform") return uniform(g);
  if (spec == "rw" || spec == "rw-stationary") return rw_stationary(g, params);
  constexpr std::string_view prefix = "degree-poly:";
  if (spec.substr(0, prefix.size()) == prefix) {
    return degree_polynomial(g, DegreeExpr::parse(spec.substr(prefix.size())));
  }
  throw std::invalid_argument("unknown start distribution '" + std::string(spec) +
                              "' (expected uniform, rw, or degree-poly:<expr>)");
}

std::int64_t StartDistribution::weight_of_degree(std::int64_t d) const {
  switch (kind_) {
    case StartKind::uniform: return 1;
    case StartKind::rw_stationary: return d;
    case StartKind::degree_polynomial: return (*f_)(d);
  }
  return 0;
}

std::string StartDistribution::spec_string() const {
  if (kind_ == StartKind::degree_polynomial) {
    return "degree-poly:" + f_->text();
  }
  return std::string(to_string(kind_));
}

StartSampler::StartSampler(const StartDistribution& dist, Rng& rng,
                           QueryCounter& counter)
    : dist_(&dist) {
  if (dist.kind() == StartKind::rw_stationary) {
    walker_ = static_cast<VertexId>(rng.below(dist.graph().vertex_count()));
    for (std::uint32_t i = 0; i < dist.walk().burn_in; ++i) step(rng, counter);
  }
}

void StartSampler::step(Rng& rng, QueryCounter& counter) {
  if (dist_->walk().lazy && rng.coin()) return;  // stay, no neighborhood query
  auto adj = dist_->graph().neighbors(walker_, counter);
  walker_ = adj[rng.below(adj.size())];
}

VertexId StartSampler::draw(Rng& rng, QueryCounter& counter) {
  const Graph& g = dist_->graph();
  switch (dist_->kind()) {
    case StartKind::uniform:
      return static_cast<VertexId>(rng.below(g.vertex_count()));
    case StartKind::rw_stationary: {
      const std::uint32_t steps = std::max<std::uint32_t>(dist_->walk().spacing, 1);
      for (std::uint32_t i = 0; i < steps; ++i) step(rng, counter);
      return walker_;
    }
    case StartKind::degree_polynomial: {
      const auto& cumulative = dist_->cumulative();
      const std::uint64_t r = rng.below(static_cast<std::uint64_t>(dist_->normalizer()));
      const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
      return static_cast<VertexId>(it - cumulative.begin());
    }
  }
  throw std::logic_error("unreachable");
}

std::uint64_t StartSampler::max_queries_per_draw() const {
  if (dist_->kind() != StartKind::rw_stationary) return 0;
  return std::max<std::uint32_t>(dist_->walk().spacing, 1);
}

}  // namespace graphlift
