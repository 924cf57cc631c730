#include "mgt/decode2.hpp"

#include <algorithm>
#include <set>

#include "stage_common.hpp"

namespace mgt {

std::vector<std::vector<std::int32_t>> partition_edges_s2(const CandidateHypergraph& h) {
  const auto& edges = h.edges();
  const int m = static_cast<int>(edges.size());
  // reach[i] = edges sharing a vertex with edge i, including i itself; two
  // edges conflict iff some edge touches both.
  std::vector<BitVec> reach(static_cast<std::size_t>(m), BitVec(static_cast<std::size_t>(m)));
  for (int i = 0; i < m; ++i) reach[static_cast<std::size_t>(i)].set(static_cast<std::size_t>(i));
  for (const auto& [v, inc] : h.adjacency()) {
    for (std::size_t a = 0; a < inc.size(); ++a)
      for (std::size_t b = a + 1; b < inc.size(); ++b) {
        reach[static_cast<std::size_t>(inc[a])].set(static_cast<std::size_t>(inc[b]));
        reach[static_cast<std::size_t>(inc[b])].set(static_cast<std::size_t>(inc[a]));
      }
  }
  std::vector<std::pair<std::int32_t, std::int32_t>> arcs;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (reach[static_cast<std::size_t>(i)].intersects(reach[static_cast<std::size_t>(j)])) arcs.emplace_back(i, j);
  return greedy_partition(ConflictGraph(m, std::move(arcs)));
}

DecodeResult decode_s2(const PoolMatrix& x, StagedOracle& oracle) {
  Transcript tr(3);
  if (x.params().num_defectives != 2) return DecodeResult::fail(FailureReason::InvalidParams, std::move(tr));

  const OutcomeVector y = detail::run_pool_stage(x, oracle, tr);
  const CandidateHypergraph h = candidates(x, 2, y);
  if (h.edges().empty()) return DecodeResult::fail(FailureReason::AmbiguousCandidates, std::move(tr));
  if (h.edges().size() == 1) return DecodeResult::success(h.edges().front(), std::move(tr));

  const auto groups = partition_edges_s2(h);

  Stage st2;
  oracle.begin_stage();
  for (const auto& group : groups) {
    std::set<std::int32_t> u;
    for (std::int32_t ei : group)
      for (std::int32_t v : h.edges()[static_cast<std::size_t>(ei)].vertices()) u.insert(v);
    std::vector<std::int32_t> inside(u.begin(), u.end());
    std::vector<std::int32_t> outside = detail::complement_of(inside, x.num_items());
    oracle.add_test(inside);
    oracle.add_test(outside);
    st2.tests.push_back(std::move(inside));
    st2.tests.push_back(std::move(outside));
  }
  st2.outcomes = oracle.commit_stage();
  const std::vector<std::uint8_t> out2 = st2.outcomes;
  tr.add_stage(std::move(st2));

  int hit_group = -1;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (out2[2 * i] == 1 && out2[2 * i + 1] == 0) {
      if (hit_group >= 0) return DecodeResult::fail(FailureReason::AmbiguousCandidates, std::move(tr));
      hit_group = static_cast<int>(i);
    }
  }
  if (hit_group < 0) return DecodeResult::fail(FailureReason::AmbiguousCandidates, std::move(tr));

  const auto& group = groups[static_cast<std::size_t>(hit_group)];
  Hyperedge found;
  if (group.size() == 1) {
    found = h.edges()[static_cast<std::size_t>(group.front())];
  } else {
    std::vector<std::vector<std::int32_t>> items;
    items.reserve(group.size());
    for (std::int32_t ei : group) {
      const auto vs = h.edges()[static_cast<std::size_t>(ei)].vertices();
      items.emplace_back(vs.begin(), vs.end());
    }
    const BitmaskPlan plan = bitmask_identify(items);
    Stage st3;
    oracle.begin_stage();
    for (const auto& test : plan.tests) {
      oracle.add_test(test);
      st3.tests.push_back(test);
    }
    st3.outcomes = oracle.commit_stage();
    const auto idx = plan.decode(st3.outcomes);
    tr.add_stage(std::move(st3));
    if (!idx) return DecodeResult::fail(FailureReason::AmbiguousCandidates, std::move(tr));
    found = h.edges()[static_cast<std::size_t>(group[*idx])];
  }

  if (!detail::consistent_with_transcript(x, found, tr, y))
    return DecodeResult::fail(FailureReason::AmbiguousCandidates, std::move(tr));
  return DecodeResult::success(found, std::move(tr));
}

}  // namespace mgt
