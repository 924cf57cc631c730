#pragma once

#include <utility>
#include <vector>

#include "mgt/audit.hpp"
#include "mgt/hypergraph.hpp"
#include "mgt/model.hpp"
#include "mgt/oracle.hpp"

namespace mgt {

// Candidate hypergraph for three defectives together with every derived
// structure the five-stage decoder needs: the sibling graph over frequently
// co-occurring pairs, the split into edges that contain a sibling pair (E1)
// and the rest (E2), per-E1-edge additional vertices, the directed arc
// graph over E1, and the two greedy partitions driving stages 2 and 3.
struct StructuredHypergraph {
  CandidateHypergraph h;
  std::vector<std::pair<std::int32_t, std::int32_t>> sibling_edges;  // sorted pairs (a < b)
  std::vector<std::int32_t> e1;                                      // edge indices into h.edges()
  std::vector<std::int32_t> e2;
  std::vector<std::int32_t> additional_vertex;                       // parallel to e1
  std::vector<std::pair<std::int32_t, std::int32_t>> arcs;           // directed, deduplicated, sorted
  std::vector<std::vector<std::int32_t>> e2_groups;                  // groups of edge indices into h.edges()
  std::vector<std::vector<std::int32_t>> vertex_groups;              // groups of non-isolated arc-graph vertices

  bool sibling(std::int32_t a, std::int32_t b) const;
  int sibling_degree(std::int32_t v) const;
  int out_degree(std::int32_t v) const;
};

StructuredHypergraph build_structure(const CandidateHypergraph& h, const DesignParams& params);

// Checks the realized structure against the bounds the decoder relies on:
// sibling degree < L1, E2 vertex degree <= 2*L1*L2, |E2| within 6*L1*L2
// packings, arc out-degree < 3*L1^2, group counts. Violations are reported,
// not fatal; the campaign regenerates the matrix on violation.
AuditReport structural_audit(const StructuredHypergraph& s, const DesignParams& params);

// Five-stage decoder for three defectives.
DecodeResult decode_s3(const PoolMatrix& x, StagedOracle& oracle);

}  // namespace mgt
