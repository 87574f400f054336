#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphlift/start_distribution.hpp"

namespace graphlift {

enum class EstimatorKind { ordered, shotgun, unordered };

std::string_view to_string(EstimatorKind kind);

/// Accumulated result of one estimator run for one target type: the number of
/// weighted samples, their sum and sum of squares, the query cost, and the
/// configuration needed to reproduce or label the run. phi_stream is kept
/// only when requested and only for single-chain runs.
struct EstimateRun {
  std::uint64_t samples = 0;
  double sum_phi = 0.0;
  double sum_phi_sq = 0.0;
  std::uint64_t queries = 0;  // includes the chain's burn-in share
  std::uint32_t workers = 1;
  std::uint64_t seed = 0;
  int k = 0;
  EstimatorKind estimator = EstimatorKind::unordered;
  StartKind start_kind = StartKind::uniform;
  std::uint32_t spacing = 0;
  std::uint32_t burn_in = 0;
  std::string target_id;
  std::optional<std::vector<double>> phi_stream;

  double estimate() const { return samples == 0 ? 0.0 : sum_phi / static_cast<double>(samples); }

  /// Unbiased per-sample variance of the phi values; 0 when fewer than two.
  double sample_variance() const {
    if (samples < 2) return 0.0;
    const double n = static_cast<double>(samples);
    const double mean = sum_phi / n;
    const double var = (sum_phi_sq - n * mean * mean) / (n - 1.0);
    return var > 0.0 ? var : 0.0;
  }

  double std_error() const {
    return samples == 0 ? 0.0 : std::sqrt(sample_variance() / static_cast<double>(samples));
  }
};

/// Combine two chains of the same configuration (streams are dropped; lag
/// diagnostics are single-chain by contract). Throws std::invalid_argument on
/// mismatched configurations.
EstimateRun merge(const EstimateRun& a, const EstimateRun& b);

}  // namespace graphlift
