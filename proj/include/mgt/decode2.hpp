#pragma once

#include "mgt/hypergraph.hpp"
#include "mgt/model.hpp"
#include "mgt/oracle.hpp"

namespace mgt {

// Greedy grouping of candidate pairs so that no two edges in one group
// intersect or share a common adjacent edge. Groups are lists of edge
// indices into h.edges(), in deterministic (lexicographic-edge) order.
std::vector<std::vector<std::int32_t>> partition_edges_s2(const CandidateHypergraph& h);

// Three-stage decoder for two defectives: pooled rows, group union /
// complement tests, then bit-mask identification within the hit group.
DecodeResult decode_s2(const PoolMatrix& x, StagedOracle& oracle);

}  // namespace mgt
