#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mgt/model.hpp"

namespace mgt {

// L hyperedges whose pairwise intersections all equal the same core set.
struct Configuration {
  std::vector<std::int32_t> core;
  std::vector<Hyperedge> edges;
};

// Directed constraint graph fed to the greedy partitioner. Items are opaque
// indices 0..num_items-1; an arc in either direction keeps its endpoints in
// different groups.
class ConflictGraph {
 public:
  ConflictGraph(int num_items, std::vector<std::pair<std::int32_t, std::int32_t>> arcs);

  int num_items() const { return num_items_; }
  const std::vector<std::pair<std::int32_t, std::int32_t>>& arcs() const { return arcs_; }

 private:
  int num_items_;
  std::vector<std::pair<std::int32_t, std::int32_t>> arcs_;
};

// All s-subsets of samples whose column union equals y. Filters to columns
// covered by y first, then enumerates subsets in lexicographic order.
CandidateHypergraph candidates(const PoolMatrix& x, int s, const OutcomeVector& y);

// Exact backtracking search for a configuration of size >= target_size with
// |core| = core_size. Returns the first one in core/edge-index order, or
// nothing. Exponential in the worst case; callers keep it near thresholds.
std::optional<Configuration> find_configuration(const CandidateHypergraph& h, int core_size, int target_size);

// Greedy inclusion-maximal set of pairwise-disjoint edges, by edge index.
// Every edge of h intersects some returned edge.
std::vector<Hyperedge> maximal_matching(const CandidateHypergraph& h);

// Greedy coloring in item-index order; no two items joined by an arc share a
// group. Group count is at most max total degree + 1.
std::vector<std::vector<std::int32_t>> greedy_partition(const ConflictGraph& g);

// Non-adaptive realization of binary search over m items, exactly one of
// which is fully defective: ceil(log2 m) simultaneous tests, test b = union
// of the items whose index has bit b set.
struct BitmaskPlan {
  std::vector<std::vector<std::int32_t>> tests;
  std::size_t item_count = 0;

  // Reads the outcome bits as a binary index; nothing if it is >= item_count.
  std::optional<std::size_t> decode(std::span<const std::uint8_t> outcomes) const;
};

BitmaskPlan bitmask_identify(const std::vector<std::vector<std::int32_t>>& items);

}  // namespace mgt
