#pragma once

#include <optional>
#include <span>

#include "mgt/model.hpp"

namespace mgt {

struct ParamOverrides {
  std::optional<int> num_tests;
  std::optional<Rational> column_rate;
  std::optional<int> sparsity_threshold;  // d / L1
  std::uint64_t seed = 1;
};

// Stage-1 parameters for finding s defectives among t samples. Overrides
// replace the computed N / p / d values and are flagged in the record.
DesignParams compute_params(std::int64_t t, int s, const ParamOverrides& overrides = {});

// Samples the t columns i.i.d. uniform over weight-k columns, one seeded
// stream per column so column j does not depend on t.
PoolMatrix generate_matrix(const DesignParams& params);

// Pooled result of testing every row against defective set S: the OR of the
// columns indexed by S.
OutcomeVector outcome(const PoolMatrix& x, std::span<const std::int32_t> subset);

// Deterministic per-column substream seed (counter-mode split of the seed).
std::uint64_t column_stream_seed(std::uint64_t seed, std::int64_t column);

}  // namespace mgt
