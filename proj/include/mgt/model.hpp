#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mgt/bitvec.hpp"

namespace mgt {

struct InvalidParamsError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ProtocolViolation : std::logic_error {
  using std::logic_error::logic_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact rational, used for the column rate so k = floor(p*N) is reproducible
// bit-for-bit across platforms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

// Stage-1 design parameters. sparsity_threshold is the candidate-degree cap d
// when searching for 2 defectives and the configuration cap L1 for 3.
struct DesignParams {
  std::int64_t num_items = 0;    // t
  int num_defectives = 0;        // s, 2 or 3
  Rational column_rate;          // p, stored exactly
  int num_tests = 0;             // N
  int column_weight = 0;         // k = floor(p*N)
  int sparsity_threshold = 0;    // d (s=2) or L1 (s=3), = ceil(log2 log2 t)
  int sibling_threshold = 0;     // L2 = 3*L1 when s=3, otherwise 0
  std::uint64_t seed = 1;
  double rate_constant = 0.0;    // cached max 1/A2 factor entering N for s=3
  bool n_overridden = false;
  bool p_overridden = false;
  bool l1_overridden = false;
};

class OutcomeVector {
 public:
  OutcomeVector() = default;
  explicit OutcomeVector(BitVec bits) : bits_(std::move(bits)), weight_(bits_.popcount()) {}

  const BitVec& bits() const { return bits_; }
  int weight() const { return weight_; }
  std::size_t size() const { return bits_.size(); }

  bool operator==(const OutcomeVector& o) const { return bits_ == o.bits_; }
  bool operator<(const OutcomeVector& o) const { return bits_ < o.bits_; }

 private:
  BitVec bits_;
  int weight_ = 0;
};

// Binary test design: N rows (tests) by t columns (samples), every column of
// weight exactly k.
class PoolMatrix {
 public:
  PoolMatrix(DesignParams params, std::vector<BitVec> columns);

  const DesignParams& params() const { return params_; }
  std::int64_t num_items() const { return params_.num_items; }
  int num_tests() const { return params_.num_tests; }

  const BitVec& column(std::int64_t j) const { return columns_.at(static_cast<std::size_t>(j)); }
  const std::vector<BitVec>& columns() const { return columns_; }
  const BitVec& row(int i) const { return rows_.at(static_cast<std::size_t>(i)); }
  const std::vector<BitVec>& rows() const { return rows_; }

  // Vertex subset tested by row i, ascending. Computed once and reused by the
  // decoders (stage-1 tests are the same for every decode on one matrix).
  const std::vector<std::int32_t>& row_support(int i) const { return row_supports_.at(static_cast<std::size_t>(i)); }

 private:
  DesignParams params_;
  std::vector<BitVec> columns_;
  std::vector<BitVec> rows_;
  std::vector<std::vector<std::int32_t>> row_supports_;
};

// Sorted set of 2 or 3 sample indices; canonical regardless of input order.
class Hyperedge {
 public:
  Hyperedge() = default;
  explicit Hyperedge(std::span<const std::int32_t> vertices);
  Hyperedge(std::initializer_list<std::int32_t> vertices)
      : Hyperedge(std::span<const std::int32_t>(vertices.begin(), vertices.size())) {}

  int size() const { return n_; }
  std::span<const std::int32_t> vertices() const { return {v_.data(), static_cast<std::size_t>(n_)}; }
  std::int32_t operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }

  bool contains(std::int32_t v) const {
    for (int i = 0; i < n_; ++i)
      if (v_[static_cast<std::size_t>(i)] == v) return true;
    return false;
  }
  bool intersects(const Hyperedge& o) const {
    for (int i = 0; i < n_; ++i)
      if (o.contains(v_[static_cast<std::size_t>(i)])) return true;
    return false;
  }
  int intersection_size(const Hyperedge& o) const {
    int c = 0;
    for (int i = 0; i < n_; ++i) c += o.contains(v_[static_cast<std::size_t>(i)]) ? 1 : 0;
    return c;
  }

  friend bool operator==(const Hyperedge& a, const Hyperedge& b) { return a.n_ == b.n_ && a.v_ == b.v_; }
  friend bool operator<(const Hyperedge& a, const Hyperedge& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.v_ < b.v_;
  }

 private:
  std::array<std::int32_t, 3> v_{-1, -1, -1};
  std::int8_t n_ = 0;
};

// Everything known after stage 1: all s-sets whose column union equals the
// observed outcome.
class CandidateHypergraph {
 public:
  static CandidateHypergraph build(int uniformity, OutcomeVector outcome, std::vector<Hyperedge> edges);

  int uniformity() const { return uniformity_; }
  const OutcomeVector& outcome() const { return outcome_; }
  const std::vector<Hyperedge>& edges() const { return edges_; }
  const std::map<std::int32_t, std::vector<std::int32_t>>& adjacency() const { return adjacency_; }

  int degree(std::int32_t v) const {
    auto it = adjacency_.find(v);
    return it == adjacency_.end() ? 0 : static_cast<int>(it->second.size());
  }
  int max_degree() const;
  std::vector<std::int32_t> vertices() const;  // non-isolated, ascending

 private:
  int uniformity_ = 0;
  OutcomeVector outcome_;
  std::vector<Hyperedge> edges_;
  std::map<std::int32_t, std::vector<std::int32_t>> adjacency_;
};

struct Stage {
  std::vector<std::vector<std::int32_t>> tests;
  std::vector<std::uint8_t> outcomes;
};

// Ordered record of every test a decoder committed, batched by stage.
class Transcript {
 public:
  static constexpr int kDefaultStageCap = 5;
  // The fully adaptive baseline runs one test per stage and needs an
  // uncapped transcript; multistage decoders keep the default cap.
  explicit Transcript(int max_stages = kDefaultStageCap) : max_stages_(max_stages) {}

  void add_stage(Stage stage);
  const std::vector<Stage>& stages() const { return stages_; }
  int stage_count() const { return static_cast<int>(stages_.size()); }
  std::size_t tests_in_stage(int i) const { return stages_.at(static_cast<std::size_t>(i)).tests.size(); }
  std::size_t total_tests() const;
  int max_stages() const { return max_stages_; }

 private:
  int max_stages_;
  std::vector<Stage> stages_;
};

enum class FailureReason { AmbiguousCandidates, StructuralViolation, InvalidParams };

std::string to_string(FailureReason r);

struct DecodeResult {
  std::optional<Hyperedge> recovered;
  std::optional<FailureReason> failure;
  Transcript transcript;

  bool ok() const { return recovered.has_value(); }

  static DecodeResult success(Hyperedge defectives, Transcript t);
  static DecodeResult fail(FailureReason reason, Transcript t);
};

}  // namespace mgt
