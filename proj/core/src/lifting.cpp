#include "graphlift/lifting.hpp"

#include <algorithm>
#include <cassert>
#include <memory>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "graphlift/errors.hpp"

namespace graphlift {

std::string_view to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::ordered: return "ordered";
    case EstimatorKind::shotgun: return "shotgun";
    case EstimatorKind::unordered: return "unordered";
  }
  return "?";
}

LiftState LiftState::begin(const Graph& g, VertexId v1, const StartDistribution& start,
                           QueryCounter& counter) {
  LiftState s;
  s.verts_[0] = v1;
  s.host_deg_[0] = g.degree(v1);
  s.prob_ = start.pi1(v1);
  s.k_ = 1;
  const auto adj = g.neighbors(v1, counter);
  s.queries_ = 1;
  s.boundary_.reserve(adj.size());
  for (VertexId w : adj) s.boundary_.push_back({w, 0});
  return s;
}

void LiftState::lift(const Graph& g, Rng& rng, QueryCounter& counter) {
  if (boundary_.empty()) {
    throw InfeasibleError(
        "component exhausted before reaching the requested subgraph size");
  }
  assert(k_ < kMaxGraphletSize);
  const std::size_t b = boundary_.size();
  const VertexId u = boundary_[rng.below(b)].outside;

  // Adopt u: its multiplicity in the boundary is its edge count into the
  // subgraph, which is exactly the factor the growth step contributes.
  std::uint8_t attached = 0;
  int multiplicity = 0;
  for (std::size_t i = 0; i < boundary_.size();) {
    if (boundary_[i].outside == u) {
      attached |= static_cast<std::uint8_t>(1u << boundary_[i].inside);
      ++multiplicity;
      boundary_[i] = boundary_.back();
      boundary_.pop_back();
    } else {
      ++i;
    }
  }
  prob_ *= static_cast<double>(multiplicity) / static_cast<double>(b);

  const int r = k_;
  verts_[r] = u;
  host_deg_[r] = g.degree(u);
  adj_rows_[r] = attached;
  for (int i = 0; i < r; ++i) {
    if (attached & (1u << i)) adj_rows_[i] |= static_cast<std::uint8_t>(1u << r);
  }
  internal_edges_ += multiplicity;
  ++k_;

  const auto adj = g.neighbors(u, counter);
  ++queries_;
  for (VertexId w : adj) {
    bool inside = false;
    for (int i = 0; i < k_; ++i) inside = inside || verts_[i] == w;
    if (!inside) boundary_.push_back({w, static_cast<std::uint8_t>(r)});
  }
}

AdjMask LiftState::mask() const {
  AdjMask m = 0;
  for (int i = 0; i < k_; ++i) {
    for (int j = i + 1; j < k_; ++j) {
      if (adj_rows_[i] & (1u << j)) m |= pair_bit(i, j, k_);
    }
  }
  return m;
}

InducedSubgraph LiftState::snapshot() const {
  InducedSubgraph s;
  s.k = k_;
  for (int i = 0; i < k_; ++i) {
    s.vertices[i] = verts_[i];
    s.host_degrees[i] = host_deg_[i];
  }
  s.mask = mask();
  return s;
}

LiftState sample_sequence(const Graph& g, int k, const StartDistribution& start,
                          StartSampler& sampler, Rng& rng, QueryCounter& counter) {
  assert(k >= 1 && k <= kMaxGraphletSize);
  const VertexId v1 = sampler.draw(rng, counter);
  LiftState state = LiftState::begin(g, v1, start, counter);
  while (state.size() < k) state.lift(g, rng, counter);
  return state;
}

std::uint64_t per_sample_queries(EstimatorKind estimator,
                                 const StartDistribution& start, int k) {
  const std::uint64_t walk =
      start.kind() == StartKind::rw_stationary
          ? std::max<std::uint32_t>(start.walk().spacing, 1)
          : 0;
  const std::uint64_t lifts =
      estimator == EstimatorKind::shotgun ? static_cast<std::uint64_t>(k - 2)
                                          : static_cast<std::uint64_t>(k - 1);
  return walk + 1 + lifts;
}

std::uint64_t expected_total_queries(EstimatorKind estimator,
                                     const StartDistribution& start, int k,
                                     std::uint64_t samples, std::uint32_t workers) {
  const std::uint64_t burn =
      start.kind() == StartKind::rw_stationary ? start.walk().burn_in : 0;
  return static_cast<std::uint64_t>(workers) * burn +
         samples * per_sample_queries(estimator, start, k);
}

namespace {

struct Acc {
  double sum = 0.0;
  double sumsq = 0.0;
};

struct ChainResult {
  std::vector<Acc> by_type;                  // dense, by type index - 1
  std::vector<std::vector<double>> streams;  // parallel to stream_targets
  std::uint64_t samples = 0;
  std::uint64_t queries = 0;
};

ChainResult run_chain(const Graph& g, EstimatorKind estimator, int k,
                      const Catalog& catalog, const StartDistribution& start,
                      std::span<const int> stream_targets, std::uint64_t n_samples,
                      std::uint64_t budget, std::uint64_t seed,
                      std::uint64_t stream_id, std::size_t memo_capacity) {
  Rng rng(seed, stream_id);
  QueryCounter counter;
  StartSampler sampler(start, rng, counter);
  const std::uint64_t sample_cost = per_sample_queries(estimator, start, k);
  if (budget != 0 && counter.count + sample_cost > budget) {
    throw InfeasibleError("query budget cannot cover burn-in plus one sample");
  }

  ChainResult result;
  result.by_type.assign(static_cast<std::size_t>(catalog.type_count()), Acc{});
  result.streams.assign(stream_targets.size(), {});
  if (n_samples != 0) {
    for (auto& stream : result.streams) stream.reserve(n_samples);
  }

  std::vector<std::unique_ptr<DegreeProbabilityFunction>> weight_fns(
      static_cast<std::size_t>(catalog.type_count()));
  auto weight_fn = [&](const GraphletType& t) -> DegreeProbabilityFunction& {
    auto& slot = weight_fns[static_cast<std::size_t>(t.index - 1)];
    if (!slot) {
      slot = std::make_unique<DegreeProbabilityFunction>(LiftPlan::for_type(t), start,
                                                         memo_capacity);
    }
    return *slot;
  };

  std::unordered_map<VertexId, std::uint8_t> candidates;
  std::vector<double> phi(static_cast<std::size_t>(catalog.type_count()), 0.0);
  std::vector<int> touched;

  auto more = [&] {
    if (budget != 0) return counter.count + sample_cost <= budget;
    return result.samples < n_samples;
  };

  while (more()) {
    for (int idx : touched) phi[static_cast<std::size_t>(idx)] = 0.0;
    touched.clear();

    if (estimator == EstimatorKind::shotgun) {
      const LiftState state = sample_sequence(g, k - 1, start, sampler, rng, counter);
      const double seq_prob = state.probability();
      candidates.clear();
      for (const auto& be : state.boundary()) {
        candidates[be.outside] |= static_cast<std::uint8_t>(1u << be.inside);
      }
      AdjMask base = 0;
      const auto rows = state.adjacency_rows();
      for (int i = 0; i + 1 < k; ++i) {
        for (int j = i + 1; j + 1 < k; ++j) {
          if (rows[i] & (1u << j)) base |= pair_bit(i, j, k);
        }
      }
      for (const auto& [u, attached] : candidates) {
        (void)u;
        AdjMask completed = base;
        for (int i = 0; i + 1 < k; ++i) {
          if (attached & (1u << i)) completed |= pair_bit(i, k - 1, k);
        }
        const auto cls = catalog.classify(completed);
        const int idx = cls.type->index - 1;
        if (phi[static_cast<std::size_t>(idx)] == 0.0) touched.push_back(idx);
        phi[static_cast<std::size_t>(idx)] += 1.0;  // candidate tally, converted below
      }
      for (int idx : touched) {
        const auto& type = catalog.type(idx + 1);
        phi[static_cast<std::size_t>(idx)] /=
            static_cast<double>(type.ordering_count) * seq_prob;
      }
    } else {
      const LiftState state = sample_sequence(g, k, start, sampler, rng, counter);
      const InducedSubgraph s = state.snapshot();
      const auto cls = catalog.classify(s.mask);
      const int idx = cls.type->index - 1;
      double value;
      if (estimator == EstimatorKind::ordered) {
        value = 1.0 / (static_cast<double>(cls.type->ordering_count) *
                       state.probability());
      } else {
        const auto degrees = canonical_degrees(s, catalog, cls);
        const double aggregate = weight_fn(*cls.type).value(
            std::span<const std::uint32_t>(degrees.data(), static_cast<std::size_t>(k)));
        value = static_cast<double>(start.normalizer()) / aggregate;
      }
      phi[static_cast<std::size_t>(idx)] = value;
      touched.push_back(idx);
    }

    for (int idx : touched) {
      Acc& acc = result.by_type[static_cast<std::size_t>(idx)];
      const double value = phi[static_cast<std::size_t>(idx)];
      acc.sum += value;
      acc.sumsq += value * value;
    }
    for (std::size_t t = 0; t < stream_targets.size(); ++t) {
      result.streams[t].push_back(phi[static_cast<std::size_t>(stream_targets[t])]);
    }
    ++result.samples;
  }
  result.queries = counter.count;
  return result;
}

}  // namespace

std::vector<TypeEstimate> estimate_counts(const Graph& g, EstimatorKind estimator,
                                          int k,
                                          std::span<const GraphletType* const> targets,
                                          const StartDistribution& start,
                                          const EstimateOptions& options) {
  if (k < 3 || k > kMaxGraphletSize) {
    throw std::invalid_argument("subgraph size must be between 3 and 7");
  }
  if (static_cast<std::uint64_t>(k) > g.vertex_count()) {
    throw InfeasibleError("graph has fewer vertices than the requested size");
  }
  if ((options.samples == 0) == (options.query_budget == 0)) {
    throw std::invalid_argument("set exactly one of samples and query_budget");
  }
  if (options.workers == 0) throw std::invalid_argument("workers must be >= 1");
  if (options.retain_stream && options.workers != 1) {
    throw std::invalid_argument("phi streams are retained for single chains only");
  }
  if (&start.graph() != &g) {
    throw std::invalid_argument("start distribution is bound to a different graph");
  }

  const Catalog& catalog = Catalog::for_size(k);
  std::vector<const GraphletType*> resolved;
  if (targets.empty()) {
    for (const GraphletType& t : catalog.types()) resolved.push_back(&t);
  } else {
    for (const GraphletType* t : targets) {
      if (t == nullptr || t->k != k) {
        throw std::invalid_argument("target type does not have the requested size");
      }
      resolved.push_back(t);
    }
  }
  std::vector<int> stream_targets;
  if (options.retain_stream) {
    for (const GraphletType* t : resolved) stream_targets.push_back(t->index - 1);
  }

  const std::uint32_t workers = options.workers;
  std::vector<ChainResult> chains(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](std::uint32_t w) {
    try {
      std::uint64_t n_w = 0;
      std::uint64_t b_w = 0;
      if (options.samples != 0) {
        n_w = options.samples / workers + (w < options.samples % workers ? 1 : 0);
      } else {
        b_w = options.query_budget / workers + (w == 0 ? options.query_budget % workers : 0);
      }
      chains[w] = run_chain(g, estimator, k, catalog, start, stream_targets, n_w, b_w,
                            options.seed, w, options.memo_capacity);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::uint32_t w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }

  std::uint64_t total_samples = 0;
  std::uint64_t total_queries = 0;
  for (const auto& chain : chains) {
    total_samples += chain.samples;
    total_queries += chain.queries;
  }

  std::vector<TypeEstimate> out;
  out.reserve(resolved.size());
  for (std::size_t t = 0; t < resolved.size(); ++t) {
    const GraphletType* type = resolved[t];
    EstimateRun run;
    run.samples = total_samples;
    run.queries = total_queries;
    run.workers = workers;
    run.seed = options.seed;
    run.k = k;
    run.estimator = estimator;
    run.start_kind = start.kind();
    run.spacing = start.kind() == StartKind::rw_stationary ? start.walk().spacing : 0;
    run.burn_in = start.kind() == StartKind::rw_stationary ? start.walk().burn_in : 0;
    run.target_id = type->id();
    for (const auto& chain : chains) {
      const Acc& acc = chain.by_type[static_cast<std::size_t>(type->index - 1)];
      run.sum_phi += acc.sum;
      run.sum_phi_sq += acc.sumsq;
    }
    if (options.retain_stream) run.phi_stream = std::move(chains[0].streams[t]);
    out.push_back(TypeEstimate{type, std::move(run)});
  }
  return out;
}

namespace {

EstimateRun single_target(const Graph& g, EstimatorKind estimator,
                          const GraphletType& target, std::uint64_t samples,
                          const StartDistribution& start, EstimateOptions options) {
  options.samples = samples;
  options.query_budget = 0;
  const GraphletType* t = &target;
  auto rows = estimate_counts(g, estimator, target.k, {&t, 1}, start, options);
  return std::move(rows.front().run);
}

}  // namespace

EstimateRun ordered_estimate(const Graph& g, const GraphletType& target,
                             std::uint64_t samples, const StartDistribution& start,
                             EstimateOptions options) {
  return single_target(g, EstimatorKind::ordered, target, samples, start, options);
}

EstimateRun shotgun_estimate(const Graph& g, const GraphletType& target,
                             std::uint64_t samples, const StartDistribution& start,
                             EstimateOptions options) {
  return single_target(g, EstimatorKind::shotgun, target, samples, start, options);
}

EstimateRun unordered_estimate(const Graph& g, const GraphletType& target,
                               std::uint64_t samples, const StartDistribution& start,
                               EstimateOptions options) {
  return single_target(g, EstimatorKind::unordered, target, samples, start, options);
}

EstimateRun merge(const EstimateRun& a, const EstimateRun& b) {
  const bool compatible = a.k == b.k && a.estimator == b.estimator &&
                          a.start_kind == b.start_kind && a.spacing == b.spacing &&
                          a.burn_in == b.burn_in && a.target_id == b.target_id;
  if (!compatible) throw std::invalid_argument("cannot merge runs of unlike configuration");
  EstimateRun out = a;
  out.phi_stream.reset();  // lag diagnostics are single-chain by contract
  out.samples += b.samples;
  out.sum_phi += b.sum_phi;
  out.sum_phi_sq += b.sum_phi_sq;
  out.queries += b.queries;
  out.workers += b.workers;
  return out;
}

}  // namespace graphlift
