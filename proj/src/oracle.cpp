#include "mgt/oracle.hpp"

#include <algorithm>

namespace mgt {

StagedOracle::StagedOracle(std::vector<std::int32_t> hidden, std::int64_t num_items, int max_stages)
    : hidden_(std::move(hidden)), num_items_(num_items), max_stages_(max_stages) {
  std::sort(hidden_.begin(), hidden_.end());
  if (hidden_.empty() || std::adjacent_find(hidden_.begin(), hidden_.end()) != hidden_.end())
    throw InvalidParamsError("hidden set must be nonempty and distinct");
  for (std::int32_t v : hidden_)
    if (v < 0 || v >= num_items_) throw InvalidParamsError("hidden sample index out of range");
}

void StagedOracle::begin_stage() {
  if (stage_open_) throw ProtocolViolation("previous stage not committed");
  if (max_stages_ >= 0 && static_cast<int>(committed_.size()) >= max_stages_)
    throw ProtocolViolation("stage budget exceeded");
  stage_open_ = true;
  pending_.clear();
}

void StagedOracle::add_test(std::span<const std::int32_t> subset) {
  if (!stage_open_) throw ProtocolViolation("test registered outside a stage");
  bool hit = false;
  for (std::int32_t v : hidden_) {
    if (std::binary_search(subset.begin(), subset.end(), v)) {
      hit = true;
      break;
    }
  }
  pending_.push_back(hit ? 1 : 0);
  ++query_count_;
}

const std::vector<std::uint8_t>& StagedOracle::commit_stage() {
  if (!stage_open_) throw ProtocolViolation("no open stage to commit");
  stage_open_ = false;
  committed_.push_back(pending_);
  return committed_.back();
}

const std::vector<std::uint8_t>& StagedOracle::outcomes(int stage) const {
  if (stage < 0 || stage >= static_cast<int>(committed_.size()))
    throw ProtocolViolation("outcome requested for an uncommitted stage");
  return committed_[static_cast<std::size_t>(stage)];
}

StagedOracle make_oracle(std::vector<std::int32_t> hidden, std::int64_t num_items) {
  const int stages = hidden.size() == 2 ? 3 : 5;
  return StagedOracle(std::move(hidden), num_items, stages);
}

}  // namespace mgt
