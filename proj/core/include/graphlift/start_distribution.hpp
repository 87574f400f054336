#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphlift/degree_expr.hpp"
#include "graphlift/graph.hpp"
#include "graphlift/rng.hpp"

namespace graphlift {

enum class StartKind { uniform, rw_stationary, degree_polynomial };

std::string_view to_string(StartKind kind);

struct WalkParams {
  std::uint32_t burn_in = 100;
  /// Walk steps between consecutive start draws. A floor of one step is
  /// enforced, so spacing 0 means adjacent starts, never a frozen walker;
  /// every spacing >= 1 is taken literally.
  std::uint32_t spacing = 3;
  bool lazy = false;  // stay put with probability 1/2 (no query on a stay)
};

/// How the first vertex of a sample is drawn and weighted:
/// pi_1(v) = f(deg(v)) / K with f >= 0 integer-valued and K = sum_v f(deg(v)).
/// uniform: f = 1, K = |V|. rw_stationary: f = d, K = 2|E| (the equilibrium of
/// a neighbor-uniform walk). degree_polynomial: caller-supplied f, drawn
/// exactly from a cumulative table. The graph must outlive this object.
class StartDistribution {
 public:
  static StartDistribution uniform(const Graph& g);
  static StartDistribution rw_stationary(const Graph& g, WalkParams params = {});
  static StartDistribution degree_polynomial(const Graph& g, DegreeExpr f);

  /// Text forms: "uniform", "rw", "degree-poly:<expr>".
  static StartDistribution from_spec(const Graph& g, std::string_view spec,
                                     WalkParams params = {});

  StartKind kind() const noexcept { return kind_; }
  const WalkParams& walk() const noexcept { return walk_; }
  const Graph& graph() const noexcept { return *g_; }

  std::int64_t normalizer() const noexcept { return K_; }  // K
  std::int64_t weight_of_degree(std::int64_t d) const;     // f(d)
  double pi1(VertexId v) const {
    return static_cast<double>(weight_of_degree(g_->degree(v))) /
           static_cast<double>(K_);
  }

  /// Round-trippable description for manifests and result rows.
  std::string spec_string() const;

  /// Prefix sums of f over vertex ids; empty unless degree_polynomial.
  const std::vector<std::uint64_t>& cumulative() const noexcept { return cumulative_; }

 private:
  StartDistribution(const Graph& g, StartKind kind, WalkParams params,
                    std::optional<DegreeExpr> f);

  const Graph* g_;
  StartKind kind_;
  WalkParams walk_;
  std::optional<DegreeExpr> f_;
  std::int64_t K_ = 0;
  std::vector<std::uint64_t> cumulative_;  // degree_polynomial: prefix sums of f
};

/// Mutable per-chain draw state: the walker position for rw_stationary,
/// nothing for the iid kinds. Construction runs the burn-in (charging the
/// counter); draw() advances max(spacing, 1) steps for rw, 0 otherwise.
class StartSampler {
 public:
  StartSampler(const StartDistribution& dist, Rng& rng, QueryCounter& counter);
  VertexId draw(Rng& rng, QueryCounter& counter);

  /// Worst-case queries charged by one draw() (exact unless the walk is lazy,
  /// where stays skip the query).
  std::uint64_t max_queries_per_draw() const;

 private:
  void step(Rng& rng, QueryCounter& counter);
  const StartDistribution* dist_;
  VertexId walker_ = 0;
};

}  // namespace graphlift
