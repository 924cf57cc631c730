#include "mgt/model.hpp"

#include <algorithm>

namespace mgt {

BitVec BitVec::from_string(const std::string& s) {
  BitVec b(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') {
      b.set(i);
    } else if (s[i] != '0') {
      throw IoError("bit string may contain only '0' and '1'");
    }
  }
  return b;
}

PoolMatrix::PoolMatrix(DesignParams params, std::vector<BitVec> columns)
    : params_(params), columns_(std::move(columns)) {
  const auto t = static_cast<std::size_t>(params_.num_items);
  const auto n = static_cast<std::size_t>(params_.num_tests);
  if (columns_.size() != t) throw InvalidParamsError("column count does not match t");
  for (const BitVec& c : columns_) {
    if (c.size() != n) throw InvalidParamsError("column length does not match N");
    if (c.popcount() != params_.column_weight) throw InvalidParamsError("column weight does not match k");
  }
  rows_.assign(n, BitVec(t));
  for (std::size_t j = 0; j < t; ++j)
    for (std::int32_t i : columns_[j].support()) rows_[static_cast<std::size_t>(i)].set(j);
  row_supports_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) row_supports_.push_back(rows_[i].support());
}

Hyperedge::Hyperedge(std::span<const std::int32_t> vertices) {
  // Candidate edges are 2- or 3-sets; the adaptive baseline also reports
  // singletons through the same result type.
  if (vertices.empty() || vertices.size() > 3) throw InvalidParamsError("hyperedge must have 1 to 3 vertices");
  n_ = static_cast<std::int8_t>(vertices.size());
  std::copy(vertices.begin(), vertices.end(), v_.begin());
  std::sort(v_.begin(), v_.begin() + n_);
  for (int i = 1; i < n_; ++i)
    if (v_[static_cast<std::size_t>(i)] == v_[static_cast<std::size_t>(i - 1)])
      throw InvalidParamsError("hyperedge vertices must be distinct");
}

CandidateHypergraph CandidateHypergraph::build(int uniformity, OutcomeVector outcome, std::vector<Hyperedge> edges) {
  CandidateHypergraph h;
  h.uniformity_ = uniformity;
  h.outcome_ = std::move(outcome);
  h.edges_ = std::move(edges);
  for (std::size_t i = 0; i < h.edges_.size(); ++i) {
    if (h.edges_[i].size() != uniformity) throw InvalidParamsError("edge size does not match uniformity");
    for (std::int32_t v : h.edges_[i].vertices()) h.adjacency_[v].push_back(static_cast<std::int32_t>(i));
  }
  return h;
}

int CandidateHypergraph::max_degree() const {
  int best = 0;
  for (const auto& [v, inc] : adjacency_) best = std::max(best, static_cast<int>(inc.size()));
  return best;
}

std::vector<std::int32_t> CandidateHypergraph::vertices() const {
  std::vector<std::int32_t> out;
  out.reserve(adjacency_.size());
  for (const auto& [v, inc] : adjacency_) out.push_back(v);
  return out;
}

void Transcript::add_stage(Stage stage) {
  if (stage.tests.size() != stage.outcomes.size())
    throw ProtocolViolation("stage outcome count must equal its test count");
  if (max_stages_ >= 0 && static_cast<int>(stages_.size()) >= max_stages_)
    throw ProtocolViolation("transcript stage cap exceeded");
  stages_.push_back(std::move(stage));
}

std::size_t Transcript::total_tests() const {
  std::size_t n = 0;
  for (const Stage& s : stages_) n += s.tests.size();
  return n;
}

std::string to_string(FailureReason r) {
  switch (r) {
    case FailureReason::AmbiguousCandidates: return "AmbiguousCandidates";
    case FailureReason::StructuralViolation: return "StructuralViolation";
    case FailureReason::InvalidParams: return "InvalidParams";
  }
  return "Unknown";
}

DecodeResult DecodeResult::success(Hyperedge defectives, Transcript t) {
  DecodeResult r;
  r.recovered = defectives;
  r.transcript = std::move(t);
  return r;
}

DecodeResult DecodeResult::fail(FailureReason reason, Transcript t) {
  DecodeResult r;
  r.failure = reason;
  r.transcript = std::move(t);
  return r;
}

}  // namespace mgt
