#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mgt/model.hpp"

namespace mgt {

// Noiseless pooled-test oracle with a stage firewall: tests are registered
// into the open stage and every outcome of that stage is revealed only at
// commit. Opening more stages than allowed, or reading an outcome of an
// uncommitted stage, throws ProtocolViolation. max_stages < 0 lifts the cap
// (for the fully adaptive baseline).
class StagedOracle {
 public:
  StagedOracle(std::vector<std::int32_t> hidden, std::int64_t num_items, int max_stages);

  void begin_stage();
  // Registers a test (ascending vertex list); outcome is withheld until commit.
  void add_test(std::span<const std::int32_t> subset);
  // Closes the open stage and reveals its outcomes.
  const std::vector<std::uint8_t>& commit_stage();

  // Outcomes of an already committed stage; throws on an open stage.
  const std::vector<std::uint8_t>& outcomes(int stage) const;

  std::int64_t query_count() const { return query_count_; }
  int stages_used() const { return static_cast<int>(committed_.size()); }
  int max_stages() const { return max_stages_; }
  const std::vector<std::int32_t>& hidden() const { return hidden_; }

 private:
  std::vector<std::int32_t> hidden_;  // sorted
  std::int64_t num_items_;
  int max_stages_;
  bool stage_open_ = false;
  std::vector<std::uint8_t> pending_;
  std::vector<std::vector<std::uint8_t>> committed_;
  std::int64_t query_count_ = 0;
};

// Convenience factory mirroring the decoders' stage budgets: 3 stages for
// s = 2, 5 for s = 3.
StagedOracle make_oracle(std::vector<std::int32_t> hidden, std::int64_t num_items);

}  // namespace mgt
