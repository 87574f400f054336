#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "common.hpp"
#include "fetch.hpp"
#include "graphlift/errors.hpp"
#include "graphlift/lifting.hpp"
#include "graphlift/oracle.hpp"
#include "graphlift/stats.hpp"

namespace graphlift::cli {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

struct GraphArgs {
  std::string graph;
  std::string format = "auto";
  std::string cache_dir;
  bool keep_disconnected = false;
};

void add_graph_options(CLI::App* cmd, GraphArgs& args) {
  cmd->add_option("--graph", args.graph, "edge list file, or a fetched dataset name")
      ->required();
  cmd->add_option("--format", args.format, "auto|plain|mtx (default auto by extension)")
      ->check(CLI::IsMember({"auto", "plain", "mtx"}));
  cmd->add_option("--cache-dir", args.cache_dir, "dataset cache directory override");
  cmd->add_flag("--keep-disconnected", args.keep_disconnected,
                "skip the largest-component reduction");
}

json graph_manifest(const LoadedGraph& lg, const GraphArgs& args) {
  json j;
  j["argument"] = args.graph;
  j["source"] = lg.source;
  j["name"] = lg.name;
  j["vertices"] = lg.graph.vertex_count();
  j["edges"] = lg.graph.edge_count();
  j["components_seen"] = lg.component_count;
  j["vertices_dropped"] = lg.dropped_vertices;
  return j;
}

EstimatorKind parse_estimator(const std::string& name) {
  if (name == "ordered") return EstimatorKind::ordered;
  if (name == "shotgun") return EstimatorKind::shotgun;
  if (name == "unordered") return EstimatorKind::unordered;
  throw std::invalid_argument("estimator must be ordered, shotgun, or unordered");
}

/// Accepts type names ("triangle", "4-path"), ids ("5-3"), or "all".
std::vector<const GraphletType*> resolve_targets(const Catalog& catalog,
                                                 const std::vector<std::string>& specs) {
  std::vector<const GraphletType*> out;
  for (const std::string& spec : specs) {
    std::stringstream ss(spec);
    std::string token;
    while (std::getline(ss, token, ',')) {
      if (token.empty()) continue;
      if (token == "all") return {};
      if (const GraphletType* t = catalog.find_name(token)) {
        out.push_back(t);
        continue;
      }
      bool matched = false;
      for (const GraphletType& t : catalog.types()) {
        if (t.id() == token) {
          out.push_back(&t);
          matched = true;
          break;
        }
      }
      if (!matched) {
        std::string known;
        for (const GraphletType& t : catalog.types()) {
          known += known.empty() ? "" : ", ";
          known += t.display_name();
        }
        throw std::invalid_argument("unknown target '" + token + "' for k=" +
                                    std::to_string(catalog.k()) + " (known: " + known + ")");
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- estimate

struct EstimateArgs {
  GraphArgs graph;
  int k = 3;
  std::vector<std::string> targets{"all"};
  std::string estimator = "unordered";
  std::string start = "uniform";
  std::uint64_t n = 0;
  std::uint64_t budget = 0;
  std::uint32_t spacing = 3;
  std::uint32_t burn_in = 100;
  bool lazy = false;
  std::uint64_t seed = 1;
  std::uint32_t workers = 1;
  std::string out;
  bool as_json = false;
};

int cmd_estimate(const EstimateArgs& args) {
  const auto t0 = Clock::now();
  if (args.n != 0 && args.budget != 0) {
    throw std::invalid_argument("give either --n or --budget, not both");
  }
  LoadedGraph lg = load_graph_argument(args.graph.graph, args.graph.format,
                                       args.graph.cache_dir, args.graph.keep_disconnected);
  const WalkParams walk{args.burn_in, args.spacing, args.lazy};
  const StartDistribution start = StartDistribution::from_spec(lg.graph, args.start, walk);
  const Catalog& catalog = Catalog::for_size(args.k);
  const auto targets = resolve_targets(catalog, args.targets);

  EstimateOptions opts;
  opts.samples = (args.n == 0 && args.budget == 0) ? 100000 : args.n;
  opts.query_budget = args.budget;
  opts.workers = args.workers;
  opts.seed = args.seed;

  const EstimatorKind estimator = parse_estimator(args.estimator);
  const auto estimates =
      estimate_counts(lg.graph, estimator, args.k, targets, start, opts);

  std::vector<ResultRow> rows;
  std::uint64_t queries = 0;
  for (const TypeEstimate& te : estimates) {
    ResultRow row;
    row.graph = lg.name;
    row.k = args.k;
    row.type = te.type->display_name();
    row.estimator = args.estimator;
    row.start = start.spec_string();
    row.spacing = args.spacing;
    row.samples = te.run.samples;
    row.queries = te.run.queries;
    row.estimate = te.run.estimate();
    if (te.run.samples >= 2) row.v_ind = te.run.sample_variance();
    rows.push_back(std::move(row));
    queries = te.run.queries;
  }
  emit_results(rows, args.out, args.as_json);

  json manifest;
  manifest["command"] = "estimate";
  manifest["graph"] = graph_manifest(lg, args.graph);
  manifest["k"] = args.k;
  manifest["targets"] = args.targets;
  manifest["estimator"] = args.estimator;
  manifest["start"] = start.spec_string();
  manifest["spacing"] = args.spacing;
  manifest["burn_in"] = args.burn_in;
  manifest["lazy"] = args.lazy;
  manifest["samples"] = opts.samples;
  manifest["query_budget"] = args.budget;
  manifest["seed"] = args.seed;
  manifest["workers"] = args.workers;
  manifest["queries_total"] = queries;
  manifest["rows"] = rows.size();
  manifest["output"] = args.out.empty() ? "stdout" : args.out;
  manifest["wall_ms"] = elapsed_ms(t0);
  emit_manifest(std::move(manifest), args.out);
  return 0;
}

// ------------------------------------------------------------------- exact

struct ExactArgs {
  GraphArgs graph;
  std::vector<int> ks{3};
  std::uint64_t cap = 100'000'000;
  std::string out;
  bool as_json = false;
};

int cmd_exact(const ExactArgs& args) {
  const auto t0 = Clock::now();
  LoadedGraph lg = load_graph_argument(args.graph.graph, args.graph.format,
                                       args.graph.cache_dir, args.graph.keep_disconnected);
  std::vector<ResultRow> rows;
  json per_k = json::array();
  for (int k : args.ks) {
    ExactCountOptions opts;
    opts.max_subgraphs = args.cap;
    const ExactCounts counts = exact_count(lg.graph, k, opts);
    for (const GraphletType& t : counts.catalog->types()) {
      ResultRow row;
      row.graph = lg.name;
      row.k = k;
      row.type = t.display_name();
      row.estimator = "exact";
      row.start = "";
      row.samples = 0;
      row.queries = 0;
      row.estimate = static_cast<double>(counts.count_of(t));
      rows.push_back(std::move(row));
    }
    json jk;
    jk["k"] = k;
    jk["total"] = counts.total;
    per_k.push_back(std::move(jk));
  }
  emit_results(rows, args.out, args.as_json);

  json manifest;
  manifest["command"] = "exact";
  manifest["graph"] = graph_manifest(lg, args.graph);
  manifest["cap"] = args.cap;
  manifest["counted"] = std::move(per_k);
  manifest["rows"] = rows.size();
  manifest["output"] = args.out.empty() ? "stdout" : args.out;
  manifest["wall_ms"] = elapsed_ms(t0);
  emit_manifest(std::move(manifest), args.out);
  return 0;
}

// ---------------------------------------------------------------- validate

struct ValidateArgs {
  GraphArgs graph;
  std::vector<int> ks{3, 4};
  std::uint64_t seed = 1;
};

struct CheckReport {
  bool ok = true;
  int checks = 0;
  int failures = 0;

  void line(bool pass, const std::string& text) {
    ++checks;
    if (!pass) {
      ++failures;
      ok = false;
    }
    std::cout << (pass ? "ok   " : "FAIL ") << text << "\n";
  }
};

int cmd_validate(const ValidateArgs& args) {
  const auto t0 = Clock::now();
  LoadedGraph lg = load_graph_argument(args.graph.graph, args.graph.format,
                                       args.graph.cache_dir, args.graph.keep_disconnected);
  const Graph& g = lg.graph;
  CheckReport report;

  const std::vector<std::string> start_specs{"uniform", "rw", "degree-poly:d*(d-1)"};
  for (int k : args.ks) {
    if (static_cast<std::uint64_t>(k) > g.vertex_count()) {
      std::cout << "skip k=" << k << " (graph has only " << g.vertex_count()
                << " vertices)\n";
      continue;
    }
    for (const std::string& spec : start_specs) {
      std::optional<StartDistribution> maybe_start;
      try {
        maybe_start = StartDistribution::from_spec(g, spec);
      } catch (const std::invalid_argument& e) {
        // a degree polynomial can vanish everywhere on degenerate graphs
        if (spec.rfind("degree-poly:", 0) == 0) {
          std::cout << "skip start=" << spec << " (" << e.what() << ")\n";
          continue;
        }
        throw;
      }
      const StartDistribution& start = *maybe_start;

      // the probabilities of all ordered growth sequences sum to one
      const auto pi = enumerate_pi<double>(g, k, start);
      char text[160];
      std::snprintf(text, sizeof text,
                    "sequence probabilities sum to 1  k=%d start=%s  |dev|=%.3g",
                    k, spec.c_str(), std::abs(pi.sequence_total - 1.0));
      report.line(std::abs(pi.sequence_total - 1.0) <= 1e-9, text);

      // per-subgraph aggregate probabilities: direct formula vs subset
      // recursion vs exhaustive enumeration, and their total
      double direct_sum = 0.0;
      double worst_pair = 0.0;
      double worst_enum = 0.0;
      for_each_connected_subset(g, k, [&](const InducedSubgraph& s) {
        const double direct = pi_u_direct<double>(s, start);
        const double recursive = pi_u_recursive<double>(s, start);
        std::uint32_t key = 0;
        for (int i = 0; i < s.k; ++i) key |= std::uint32_t{1} << s.vertices[i];
        worst_pair = std::max(worst_pair, std::abs(direct - recursive));
        worst_enum = std::max(worst_enum, std::abs(direct - pi.subset_prob.at(key)));
        direct_sum += direct;
      });
      std::snprintf(text, sizeof text,
                    "aggregate probabilities sum to 1  k=%d start=%s  |dev|=%.3g",
                    k, spec.c_str(), std::abs(direct_sum - 1.0));
      report.line(std::abs(direct_sum - 1.0) <= 1e-9, text);
      std::snprintf(text, sizeof text,
                    "direct vs recursive aggregate  k=%d start=%s  max|dev|=%.3g",
                    k, spec.c_str(), worst_pair);
      report.line(worst_pair <= 1e-12, text);
      std::snprintf(text, sizeof text,
                    "direct vs enumerated aggregate  k=%d start=%s  max|dev|=%.3g",
                    k, spec.c_str(), worst_enum);
      report.line(worst_enum <= 1e-9, text);

      // sampled sequences carry the same probability the replay assigns
      Rng rng(args.seed);
      QueryCounter counter;
      StartSampler sampler(start, rng, counter);
      double worst_replay = 0.0;
      for (int i = 0; i < 200; ++i) {
        const LiftState state = sample_sequence(g, k, start, sampler, rng, counter);
        const double replay =
            sequence_probability<double>(g, state.vertices(), start);
        worst_replay = std::max(worst_replay, std::abs(state.probability() - replay));
      }
      std::snprintf(text, sizeof text,
                    "sampled vs replayed sequence probability  k=%d start=%s  max|dev|=%.3g",
                    k, spec.c_str(), worst_replay);
      report.line(worst_replay <= 1e-12, text);
    }
  }

  std::cout << (report.ok ? "all checks passed" : "checks FAILED") << " ("
            << report.checks << " checks, " << report.failures << " failures)\n";

  json manifest;
  manifest["command"] = "validate";
  manifest["graph"] = graph_manifest(lg, args.graph);
  manifest["k"] = args.ks;
  manifest["checks"] = report.checks;
  manifest["failures"] = report.failures;
  manifest["wall_ms"] = elapsed_ms(t0);
  emit_manifest(std::move(manifest), "");
  return report.ok ? 0 : 2;
}

// ------------------------------------------------------------------- stats

struct StatsArgs {
  GraphArgs graph;
  int k = 3;
  std::vector<std::string> targets{"all"};
  std::string estimator = "unordered";
  std::string start = "rw";
  std::vector<std::uint32_t> spacings{3};
  std::uint64_t n = 100000;
  std::uint64_t budget = 0;
  std::uint32_t burn_in = 100;
  bool lazy = false;
  std::uint64_t seed = 1;
  std::uint32_t workers = 1;
  std::uint64_t exact_cap = 10'000'000;
  std::uint64_t relerr_runs = 0;
  std::string out;
  bool as_json = false;
};

int cmd_stats(const StatsArgs& args) {
  const auto t0 = Clock::now();
  if (args.n != 0 && args.budget != 0) {
    throw std::invalid_argument("give either --n or --budget, not both");
  }
  LoadedGraph lg = load_graph_argument(args.graph.graph, args.graph.format,
                                       args.graph.cache_dir, args.graph.keep_disconnected);
  const Graph& g = lg.graph;
  const Catalog& catalog = Catalog::for_size(args.k);
  const EstimatorKind estimator = parse_estimator(args.estimator);
  auto targets = resolve_targets(catalog, args.targets);
  if (targets.empty()) {
    for (const GraphletType& t : catalog.types()) targets.push_back(&t);
  }

  // exact reference: used for relative error and for bound scaling
  std::optional<ExactCounts> reference;
  if (args.exact_cap > 0) {
    try {
      ExactCountOptions copts;
      copts.max_subgraphs = args.exact_cap;
      reference = exact_count(g, args.k, copts);
    } catch (const InfeasibleError&) {
      std::cerr << "note: exact reference skipped (over --exact-cap); "
                   "bounds use estimates\n";
    }
  }

  if (args.relerr_runs > 0) {
    if (!reference.has_value()) {
      throw InfeasibleError("relative-error study needs the exact reference; "
                            "raise --exact-cap");
    }
    const StartDistribution start = StartDistribution::from_spec(
        g, args.start, WalkParams{args.burn_in, args.spacings.front(), args.lazy});
    RelativeErrorOptions ropts;
    ropts.runs = args.relerr_runs;
    ropts.samples = args.n;
    ropts.query_budget = args.budget;
    ropts.workers = args.workers;
    ropts.seed = args.seed;
    const auto study = relative_error_experiment(g, estimator, args.k, start,
                                                 *reference, ropts);
    std::vector<RelErrRow> rows;
    for (const RelativeErrorResult& r : study) {
      if (std::find(targets.begin(), targets.end(), r.type) == targets.end()) continue;
      RelErrRow row;
      row.graph = lg.name;
      row.k = args.k;
      row.type = r.type->display_name();
      row.estimator = args.estimator;
      row.start = start.spec_string();
      row.spacing = args.spacings.front();
      row.samples = args.n;
      row.runs = r.runs;
      row.exact = r.exact;
      row.mean_rel_error = r.mean_relative_error;
      rows.push_back(std::move(row));
    }
    emit_relerr(rows, args.out, args.as_json);

    json manifest;
    manifest["command"] = "stats";
    manifest["mode"] = "relative-error";
    manifest["graph"] = graph_manifest(lg, args.graph);
    manifest["k"] = args.k;
    manifest["estimator"] = args.estimator;
    manifest["start"] = start.spec_string();
    manifest["runs"] = args.relerr_runs;
    manifest["samples_per_run"] = args.n;
    manifest["seed"] = args.seed;
    manifest["rows"] = rows.size();
    manifest["output"] = args.out.empty() ? "stdout" : args.out;
    manifest["wall_ms"] = elapsed_ms(t0);
    emit_manifest(std::move(manifest), args.out);
    return 0;
  }

  if (args.workers != 1) {
    std::cerr << "note: correlation diagnostics are per chain; running one worker\n";
  }

  // the walk spectrum is shared by every target and spacing
  std::optional<double> mu;
  try {
    mu = walk_second_eigenvalue(g);
  } catch (const std::invalid_argument&) {
    std::cerr << "note: graph too large for the dense eigensolve; "
                 "covariance bounds omitted\n";
  }

  const StartKind start_kind = StartDistribution::from_spec(g, args.start).kind();
  TheoryBoundsOptions bopts;
  bopts.compute_eigenvalue = false;

  std::vector<ResultRow> rows;
  std::uint64_t queries_total = 0;
  for (std::uint32_t h : args.spacings) {
    const StartDistribution start = StartDistribution::from_spec(
        g, args.start, WalkParams{args.burn_in, h, args.lazy});
    EstimateOptions opts;
    opts.samples = args.n;
    opts.query_budget = args.budget;
    opts.workers = 1;
    opts.seed = args.seed;
    opts.retain_stream = true;
    const auto estimates = estimate_counts(
        g, estimator, args.k, std::span<const GraphletType* const>(targets), start, opts);
    queries_total += estimates.front().run.queries;

    for (const TypeEstimate& te : estimates) {
      ResultRow row;
      row.graph = lg.name;
      row.k = args.k;
      row.type = te.type->display_name();
      row.estimator = args.estimator;
      row.start = start.spec_string();
      row.spacing = h;
      row.samples = te.run.samples;
      row.queries = te.run.queries;
      row.estimate = te.run.estimate();
      if (te.run.samples >= 2) row.v_ind = te.run.sample_variance();
      if (te.run.phi_stream.has_value()) {
        row.corr_lag1 = lag_correlation(*te.run.phi_stream, 1);
      }
      const double n_m = reference.has_value()
                             ? static_cast<double>(reference->count_of(*te.type))
                             : te.run.estimate();
      TheoryBounds bounds = theory_bounds(g, *te.type, n_m, bopts);
      bounds.mu = mu;
      if (start_kind == StartKind::rw_stationary) {
        row.bound_var = bounds.var_bound_rw;
        const double steps = std::max<std::uint32_t>(h, 1);
        row.bound_cov = bounds.cov_bound_lag1(steps);
      } else if (start_kind == StartKind::uniform) {
        row.bound_var = bounds.var_bound_uniform;
      }
      rows.push_back(std::move(row));
    }
  }
  emit_results(rows, args.out, args.as_json);

  json manifest;
  manifest["command"] = "stats";
  manifest["mode"] = "diagnostics";
  manifest["graph"] = graph_manifest(lg, args.graph);
  manifest["k"] = args.k;
  manifest["estimator"] = args.estimator;
  manifest["start"] = args.start;
  manifest["spacings"] = args.spacings;
  manifest["samples"] = args.n;
  manifest["query_budget"] = args.budget;
  manifest["burn_in"] = args.burn_in;
  manifest["seed"] = args.seed;
  manifest["exact_reference"] = reference.has_value();
  manifest["mu"] = mu.has_value() ? json(*mu) : json(nullptr);
  manifest["queries_total"] = queries_total;
  manifest["rows"] = rows.size();
  manifest["output"] = args.out.empty() ? "stdout" : args.out;
  manifest["wall_ms"] = elapsed_ms(t0);
  emit_manifest(std::move(manifest), args.out);
  return 0;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"graphlet count estimation by subgraph lifting"};
  app.require_subcommand(1);

  EstimateArgs eargs;
  CLI::App* estimate = app.add_subcommand("estimate", "estimate graphlet counts");
  add_graph_options(estimate, eargs.graph);
  estimate->add_option("--k", eargs.k, "graphlet size (3..7)")->required();
  estimate->add_option("--target", eargs.targets,
                       "type names/ids or 'all' (repeat or comma separate)");
  estimate->add_option("--estimator", eargs.estimator, "ordered|shotgun|unordered");
  estimate->add_option("--start", eargs.start,
                       "uniform | rw | degree-poly:<expr in d>");
  estimate->add_option("--n", eargs.n, "number of samples (default 100000)");
  estimate->add_option("--budget", eargs.budget, "neighborhood-query budget");
  estimate->add_option("--spacing", eargs.spacing, "walk steps between samples");
  estimate->add_option("--burn-in", eargs.burn_in, "walk burn-in steps");
  estimate->add_flag("--lazy", eargs.lazy, "lazy walk (stay with probability 1/2)");
  estimate->add_option("--seed", eargs.seed, "RNG seed");
  estimate->add_option("--workers", eargs.workers, "parallel chains");
  estimate->add_option("--out", eargs.out, "output file (default stdout)");
  estimate->add_flag("--json", eargs.as_json, "JSON output instead of CSV");
  int rc = 0;
  estimate->callback([&] { rc = cmd_estimate(eargs); });

  ExactArgs xargs;
  CLI::App* exact = app.add_subcommand("exact", "exact counts by full enumeration");
  add_graph_options(exact, xargs.graph);
  exact->add_option("--k", xargs.ks, "graphlet size (repeatable)")->required();
  exact->add_option("--cap", xargs.cap, "abort beyond this many subgraphs");
  exact->add_option("--out", xargs.out, "output file (default stdout)");
  exact->add_flag("--json", xargs.as_json, "JSON output instead of CSV");
  exact->callback([&] { rc = cmd_exact(xargs); });

  ValidateArgs vargs;
  CLI::App* validate =
      app.add_subcommand("validate", "probability identities on a small graph");
  add_graph_options(validate, vargs.graph);
  validate->add_option("--k", vargs.ks, "graphlet size (repeatable, default 3 4)");
  validate->add_option("--seed", vargs.seed, "RNG seed for the sampled replays");
  validate->callback([&] { rc = cmd_validate(vargs); });

  StatsArgs sargs;
  CLI::App* stats =
      app.add_subcommand("stats", "variance, correlation, and bound diagnostics");
  add_graph_options(stats, sargs.graph);
  stats->add_option("--k", sargs.k, "graphlet size")->required();
  stats->add_option("--target", sargs.targets,
                    "type names/ids or 'all' (repeat or comma separate)");
  stats->add_option("--estimator", sargs.estimator, "ordered|shotgun|unordered");
  stats->add_option("--start", sargs.start, "uniform | rw | degree-poly:<expr in d>");
  stats->add_option("--spacing", sargs.spacings, "walk spacings to sweep (repeatable)");
  stats->add_option("--n", sargs.n, "samples per run");
  stats->add_option("--budget", sargs.budget, "query budget per run");
  stats->add_option("--burn-in", sargs.burn_in, "walk burn-in steps");
  stats->add_flag("--lazy", sargs.lazy, "lazy walk");
  stats->add_option("--seed", sargs.seed, "RNG seed");
  stats->add_option("--workers", sargs.workers, "chains for the relative-error mode");
  stats->add_option("--exact-cap", sargs.exact_cap,
                    "subgraph cap for the exact reference (0 disables)");
  stats->add_option("--relerr-runs", sargs.relerr_runs,
                    "emit a repeated-run relative-error table instead");
  stats->add_option("--out", sargs.out, "output file (default stdout)");
  stats->add_flag("--json", sargs.as_json, "JSON output instead of CSV");
  stats->callback([&] { rc = cmd_stats(sargs); });

  FetchArgs fargs;
  CLI::App* fetch = app.add_subcommand("fetch", "download a dataset into the cache");
  fetch->add_option("name", fargs.name, "dataset name (see --list)");
  fetch->add_flag("--list", fargs.list, "list known datasets and cache state");
  fetch->add_option("--url", fargs.url_override, "override the download URL");
  fetch->add_option("--cache-dir", fargs.cache_override, "cache directory override");
  fetch->add_flag("--force", fargs.force, "re-download even when cached");
  fetch->callback([&] {
    if (!fargs.list && fargs.name.empty()) {
      throw CLI::RequiredError("name (or --list)");
    }
    rc = run_fetch(fargs);
  });

  try {
    app.parse(argc, argv);
    return rc;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace graphlift::cli
