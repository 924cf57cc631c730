#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "mgt/model.hpp"
#include "mgt/oracle.hpp"

namespace mgt {

enum class CampaignMode { Exhaustive, Random };

struct CampaignConfig {
  CampaignMode mode = CampaignMode::Exhaustive;
  std::int64_t num_items = 0;  // t
  int num_defectives = 0;      // s
  std::uint64_t seed = 1;      // initial matrix seed; retries use seed+1, ...
  std::int64_t trials = 1000;  // random mode only
  std::optional<int> num_tests_override;
  int audit_retry_budget = 16;
  std::int64_t exhaustive_budget = 2'000'000;
  bool run_audit = true;
  int threads = 0;  // 0 = hardware concurrency
};

struct CampaignReport {
  std::int64_t num_items = 0;
  int num_defectives = 0;
  std::uint64_t seed_initial = 0;
  std::uint64_t seed_used = 0;  // seed of the matrix that passed the audit
  int num_tests = 0;
  std::int64_t runs = 0;
  std::map<std::string, std::int64_t> failures;  // by reason
  std::int64_t max_tests = 0;
  double mean_tests = 0.0;
  std::array<std::int64_t, 5> stage_max{};  // max tests seen at stage position 1..5
  double ratio = 0.0;                       // max_tests / (s * log2 t)
  std::string audit_summary;
  int audit_retries = 0;
  double wall_seconds = 0.0;

  std::int64_t failure_total() const;
};

// Decodes every (or `trials` random) hidden s-set against a freshly sampled
// matrix, regenerating on audit failure. Deterministic for a fixed config.
CampaignReport run_campaign(const CampaignConfig& config);

// Fully adaptive halving baseline: binary-search one defective at a time.
// Uses at most s*ceil(log2 t) tests, one per stage; needs an uncapped oracle.
DecodeResult baseline_binary_splitting(std::int64_t t, int s, StagedOracle& oracle);

// Work-stealing parallel loop; aggregation done by callers must commute.
void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t, int)>& body);

}  // namespace mgt
