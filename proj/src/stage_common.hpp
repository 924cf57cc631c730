#pragma once

#include <algorithm>
#include <vector>

#include "mgt/design.hpp"
#include "mgt/model.hpp"
#include "mgt/oracle.hpp"

namespace mgt::detail {

// Stage 1 is the same for both decoders: query every pooled row, record the
// stage, and return the observed outcome vector.
inline OutcomeVector run_pool_stage(const PoolMatrix& x, StagedOracle& oracle, Transcript& tr) {
  const int n = x.num_tests();
  Stage st;
  st.tests.reserve(static_cast<std::size_t>(n));
  oracle.begin_stage();
  for (int i = 0; i < n; ++i) {
    oracle.add_test(x.row_support(i));
    st.tests.push_back(x.row_support(i));
  }
  st.outcomes = oracle.commit_stage();
  BitVec bits(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    if (st.outcomes[static_cast<std::size_t>(i)]) bits.set(static_cast<std::size_t>(i));
  tr.add_stage(std::move(st));
  return OutcomeVector(std::move(bits));
}

inline std::vector<std::int32_t> complement_of(const std::vector<std::int32_t>& sorted, std::int64_t t) {
  std::vector<std::int32_t> out;
  out.reserve(static_cast<std::size_t>(t) - sorted.size());
  std::size_t p = 0;
  for (std::int32_t v = 0; v < t; ++v) {
    if (p < sorted.size() && sorted[p] == v) {
      ++p;
    } else {
      out.push_back(v);
    }
  }
  return out;
}

inline bool edge_hits(const Hyperedge& e, const std::vector<std::int32_t>& sorted_test) {
  for (std::int32_t v : e.vertices())
    if (std::binary_search(sorted_test.begin(), sorted_test.end(), v)) return true;
  return false;
}

// A candidate is consistent when it predicts every recorded outcome. The
// pooled stage is checked through the column union; later stages by direct
// membership.
inline bool consistent_with_transcript(const PoolMatrix& x, const Hyperedge& d, const Transcript& tr,
                                       const OutcomeVector& observed) {
  if (!(outcome(x, d.vertices()) == observed)) return false;
  for (int si = 1; si < tr.stage_count(); ++si) {
    const Stage& st = tr.stages()[static_cast<std::size_t>(si)];
    for (std::size_t i = 0; i < st.tests.size(); ++i) {
      if (edge_hits(d, st.tests[i]) != static_cast<bool>(st.outcomes[i])) return false;
    }
  }
  return true;
}

}  // namespace mgt::detail
