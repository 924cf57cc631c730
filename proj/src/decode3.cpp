#include "mgt/decode3.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "stage_common.hpp"

namespace mgt {

bool StructuredHypergraph::sibling(std::int32_t a, std::int32_t b) const {
  if (a > b) std::swap(a, b);
  return std::binary_search(sibling_edges.begin(), sibling_edges.end(), std::pair{a, b});
}

int StructuredHypergraph::sibling_degree(std::int32_t v) const {
  int d = 0;
  for (const auto& [a, b] : sibling_edges) d += (a == v || b == v) ? 1 : 0;
  return d;
}

int StructuredHypergraph::out_degree(std::int32_t v) const {
  int d = 0;
  for (const auto& [from, to] : arcs) d += (from == v) ? 1 : 0;
  return d;
}

StructuredHypergraph build_structure(const CandidateHypergraph& h, const DesignParams& params) {
  if (h.uniformity() != 3) throw InvalidParamsError("structure is defined for 3-uniform hypergraphs");
  StructuredHypergraph s;
  s.h = h;
  const auto& edges = s.h.edges();
  const int l2 = params.sibling_threshold;

  // Sibling graph: pairs contained in at least L2 hyperedges.
  std::map<std::pair<std::int32_t, std::int32_t>, int> pair_count;
  for (const Hyperedge& e : edges) {
    ++pair_count[{e[0], e[1]}];
    ++pair_count[{e[0], e[2]}];
    ++pair_count[{e[1], e[2]}];
  }
  for (const auto& [pr, cnt] : pair_count)
    if (cnt >= l2) s.sibling_edges.push_back(pr);

  // Split: an edge goes to E1 iff it contains a sibling pair; its additional
  // vertex is the lowest whose removal leaves a sibling pair.
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Hyperedge& e = edges[i];
    std::int32_t add = -1;
    if (s.sibling(e[1], e[2]))
      add = e[0];
    else if (s.sibling(e[0], e[2]))
      add = e[1];
    else if (s.sibling(e[0], e[1]))
      add = e[2];
    if (add >= 0) {
      s.e1.push_back(static_cast<std::int32_t>(i));
      s.additional_vertex.push_back(add);
    } else {
      s.e2.push_back(static_cast<std::int32_t>(i));
    }
  }

  // Directed arc graph: additional vertex points at the sibling pair, which
  // is connected both ways.
  {
    std::set<std::pair<std::int32_t, std::int32_t>> arcset;
    for (std::size_t i = 0; i < s.e1.size(); ++i) {
      const Hyperedge& e = edges[static_cast<std::size_t>(s.e1[i])];
      const std::int32_t a = s.additional_vertex[i];
      std::int32_t x = -1, y = -1;
      for (std::int32_t v : e.vertices()) {
        if (v == a) continue;
        (x < 0 ? x : y) = v;
      }
      arcset.insert({a, x});
      arcset.insert({a, y});
      arcset.insert({x, y});
      arcset.insert({y, x});
    }
    s.arcs.assign(arcset.begin(), arcset.end());
  }

  // Conflict graph over E2: intersecting edges, edges with a common toucher
  // in E2 or the sibling pairs, and the additional-vertex case.
  {
    const int m = static_cast<int>(s.e2.size());
    std::map<std::int32_t, std::vector<std::int32_t>> incident;  // vertex -> positions in s.e2
    for (int i = 0; i < m; ++i)
      for (std::int32_t v : edges[static_cast<std::size_t>(s.e2[static_cast<std::size_t>(i)])].vertices())
        incident[v].push_back(i);
    auto touching = [&](std::span<const std::int32_t> vs) {
      std::set<std::int32_t> out;
      for (std::int32_t v : vs) {
        auto it = incident.find(v);
        if (it != incident.end()) out.insert(it->second.begin(), it->second.end());
      }
      return out;
    };
    std::set<std::pair<std::int32_t, std::int32_t>> conflict;
    auto add_pair = [&](std::int32_t a, std::int32_t b) {
      if (a == b) return;
      conflict.insert({std::min(a, b), std::max(a, b)});
    };
    for (int i = 0; i < m; ++i) {
      const auto vs = edges[static_cast<std::size_t>(s.e2[static_cast<std::size_t>(i)])].vertices();
      const auto touched = touching(vs);
      for (std::int32_t a : touched)
        for (std::int32_t b : touched) add_pair(a, b);
    }
    for (const auto& [pa, pb] : s.sibling_edges) {
      const std::int32_t pair_vs[2] = {pa, pb};
      const auto touched = touching(pair_vs);
      for (std::int32_t a : touched)
        for (std::int32_t b : touched) add_pair(a, b);
    }
    for (std::size_t i = 0; i < s.e1.size(); ++i) {
      const Hyperedge& f = edges[static_cast<std::size_t>(s.e1[i])];
      const std::int32_t a = s.additional_vertex[i];
      const std::int32_t av[1] = {a};
      const auto holders = touching(av);     // E2 edges containing the additional vertex
      const auto touched = touching(f.vertices());
      for (std::int32_t p : holders)
        for (std::int32_t q : touched) add_pair(p, q);
    }
    std::vector<std::pair<std::int32_t, std::int32_t>> arcs(conflict.begin(), conflict.end());
    const auto groups = greedy_partition(ConflictGraph(m, std::move(arcs)));
    for (const auto& g : groups) {
      std::vector<std::int32_t> mapped;
      mapped.reserve(g.size());
      for (std::int32_t pos : g) mapped.push_back(s.e2[static_cast<std::size_t>(pos)]);
      s.e2_groups.push_back(std::move(mapped));
    }
  }

  // Partition of non-isolated arc-graph vertices.
  {
    std::vector<std::int32_t> verts;
    for (const auto& [u, v] : s.arcs) {
      verts.push_back(u);
      verts.push_back(v);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    std::map<std::int32_t, std::int32_t> pos;
    for (std::size_t i = 0; i < verts.size(); ++i) pos[verts[i]] = static_cast<std::int32_t>(i);
    std::set<std::pair<std::int32_t, std::int32_t>> uniq;
    for (const auto& [u, v] : s.arcs) {
      const std::int32_t a = pos[u], b = pos[v];
      uniq.insert({std::min(a, b), std::max(a, b)});
    }
    std::vector<std::pair<std::int32_t, std::int32_t>> arcs(uniq.begin(), uniq.end());
    const auto groups = greedy_partition(ConflictGraph(static_cast<int>(verts.size()), std::move(arcs)));
    for (const auto& g : groups) {
      std::vector<std::int32_t> mapped;
      mapped.reserve(g.size());
      for (std::int32_t p : g) mapped.push_back(verts[static_cast<std::size_t>(p)]);
      s.vertex_groups.push_back(std::move(mapped));
    }
  }
  return s;
}

AuditReport structural_audit(const StructuredHypergraph& s, const DesignParams& params) {
  const std::int64_t l1 = params.sparsity_threshold;
  const std::int64_t l2 = params.sibling_threshold;
  AuditReport rep;
  rep.checked_outcomes = 1;
  const OutcomeVector& y = s.h.outcome();
  auto flag = [&](const char* prop, const std::string& detail) { rep.violations.push_back({prop, y, detail}); };

  std::map<std::int32_t, int> sib_deg;
  for (const auto& [a, b] : s.sibling_edges) {
    ++sib_deg[a];
    ++sib_deg[b];
  }
  for (const auto& [v, d] : sib_deg)
    if (d >= l1) flag("sibling_degree", "vertex " + std::to_string(v) + " has sibling degree " + std::to_string(d));

  std::map<std::int32_t, std::int64_t> e2_deg;
  for (std::int32_t ei : s.e2)
    for (std::int32_t v : s.h.edges()[static_cast<std::size_t>(ei)].vertices()) ++e2_deg[v];
  for (const auto& [v, d] : e2_deg)
    if (d > 2 * l1 * l2)
      flag("e2_degree", "vertex " + std::to_string(v) + " lies in " + std::to_string(d) + " sparse-side edges");

  if (!s.e2.empty()) {
    std::set<std::int32_t> used;
    std::int64_t packing = 0;
    for (std::int32_t ei : s.e2) {
      const Hyperedge& e = s.h.edges()[static_cast<std::size_t>(ei)];
      bool free = true;
      for (std::int32_t v : e.vertices()) free = free && !used.contains(v);
      if (!free) continue;
      for (std::int32_t v : e.vertices()) used.insert(v);
      ++packing;
    }
    if (static_cast<std::int64_t>(s.e2.size()) > 6 * l1 * l2 * packing)
      flag("e2_size", "E2 has " + std::to_string(s.e2.size()) + " edges vs packing " + std::to_string(packing));
  }

  std::map<std::int32_t, std::int64_t> outdeg;
  for (const auto& [u, v] : s.arcs) ++outdeg[u];
  for (const auto& [v, d] : outdeg)
    if (d >= 3 * l1 * l1) flag("arc_out_degree", "vertex " + std::to_string(v) + " has out-degree " + std::to_string(d));

  if (static_cast<std::int64_t>(s.e2_groups.size()) > 96 * l1 * l1 * l2 * l2)
    flag("e2_group_count", std::to_string(s.e2_groups.size()) + " groups");
  if (static_cast<std::int64_t>(s.vertex_groups.size()) > 6 * l1 * l1)
    flag("vertex_group_count", std::to_string(s.vertex_groups.size()) + " groups");
  return rep;
}

DecodeResult decode_s3(const PoolMatrix& x, StagedOracle& oracle) {
  Transcript tr(5);
  if (x.params().num_defectives != 3) return DecodeResult::fail(FailureReason::InvalidParams, std::move(tr));

  const OutcomeVector y = detail::run_pool_stage(x, oracle, tr);
  const CandidateHypergraph h = candidates(x, 3, y);
  if (h.edges().empty()) return DecodeResult::fail(FailureReason::AmbiguousCandidates, std::move(tr));
  if (h.edges().size() == 1) return DecodeResult::success(h.edges().front(), std::move(tr));

  const StructuredHypergraph s = build_structure(h, x.params());
  const auto& edges = h.edges();

  int hit_group = -1;
  if (!s.e2_groups.empty()) {
    Stage st2;
    oracle.begin_stage();
    for (const auto& group : s.e2_groups) {
      std::set<std::int32_t> u;
      for (std::int32_t ei : group)
        for (std::int32_t v : edges[static_cast<std::size_t>(ei)].vertices()) u.insert(v);
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
    for (std::size_t i = 0; i < s.e2_groups.size(); ++i) {
      if (out2[2 * i] == 1 && out2[2 * i + 1] == 0) {
        if (hit_group >= 0) return DecodeResult::fail(FailureReason::AmbiguousCandidates, std::move(tr));
        hit_group = static_cast<int>(i);
      }
    }
  }

  if (hit_group >= 0) {
    // The defective triple is one of the pairwise-separated edges of the hit
    // group; its index is read off non-adaptively.
    const auto& group = s.e2_groups[static_cast<std::size_t>(hit_group)];
    Hyperedge found;
    if (group.size() == 1) {
      found = edges[static_cast<std::size_t>(group.front())];
    } else {
      std::vector<std::vector<std::int32_t>> items;
      items.reserve(group.size());
      for (std::int32_t ei : group) {
        const auto vs = edges[static_cast<std::size_t>(ei)].vertices();
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
      found = edges[static_cast<std::size_t>(group[*idx])];
    }
    if (!detail::consistent_with_transcript(x, found, tr, y))
      return DecodeResult::fail(FailureReason::AmbiguousCandidates, std::move(tr));
    return DecodeResult::success(found, std::move(tr));
  }

  // No (1,0) group: the triple contains a sibling pair.
  if (s.e1.empty() || s.vertex_groups.empty())
    return DecodeResult::fail(FailureReason::StructuralViolation, std::move(tr));

  Stage st3;
  oracle.begin_stage();
  for (const auto& vg : s.vertex_groups) {
    oracle.add_test(vg);
    st3.tests.push_back(vg);
  }
  st3.outcomes = oracle.commit_stage();
  const std::vector<std::uint8_t> out3 = st3.outcomes;
  tr.add_stage(std::move(st3));

  std::vector<std::size_t> positives;
  for (std::size_t i = 0; i < out3.size(); ++i)
    if (out3[i]) positives.push_back(i);
  if (positives.size() != 3) return DecodeResult::fail(FailureReason::StructuralViolation, std::move(tr));

  const auto& v1_group = s.vertex_groups[positives.front()];
  std::int32_t v = -1;
  if (v1_group.size() == 1) {
    v = v1_group.front();
  } else {
    std::vector<std::vector<std::int32_t>> singles;
    singles.reserve(v1_group.size());
    for (std::int32_t u : v1_group) singles.push_back({u});
    const BitmaskPlan plan = bitmask_identify(singles);
    Stage st4;
    oracle.begin_stage();
    for (const auto& test : plan.tests) {
      oracle.add_test(test);
      st4.tests.push_back(test);
    }
    st4.outcomes = oracle.commit_stage();
    const auto idx = plan.decode(st4.outcomes);
    tr.add_stage(std::move(st4));
    if (!idx) return DecodeResult::fail(FailureReason::AmbiguousCandidates, std::move(tr));
    v = v1_group[*idx];
  }

  // Stage 5: the partners of v. Edges where v is additional contribute their
  // sibling pairs to W; edges holding v inside a sibling pair contribute the
  // pair partner to V' and their additional vertex to U.
  std::set<std::int32_t> w_set, vp_set, u_raw;
  for (std::size_t i = 0; i < s.e1.size(); ++i) {
    const Hyperedge& e = edges[static_cast<std::size_t>(s.e1[i])];
    if (!e.contains(v)) continue;
    const std::int32_t add = s.additional_vertex[i];
    if (add == v) {
      for (std::int32_t u : e.vertices())
        if (u != v) w_set.insert(u);
    } else {
      for (std::int32_t u : e.vertices())
        if (u != v && u != add) vp_set.insert(u);
      u_raw.insert(add);
    }
  }
  std::vector<std::int32_t> u_list;
  for (std::int32_t u : u_raw)
    if (u != v && !vp_set.contains(u)) u_list.push_back(u);

  Stage st5;
  for (std::int32_t u : w_set) st5.tests.push_back({u});
  for (std::int32_t u : vp_set) st5.tests.push_back({u});
  if (!u_list.empty()) {
    std::vector<std::vector<std::int32_t>> singles;
    singles.reserve(u_list.size());
    for (std::int32_t u : u_list) singles.push_back({u});
    for (auto& test : bitmask_identify(singles).tests) st5.tests.push_back(std::move(test));
  }
  if (!st5.tests.empty()) {
    oracle.begin_stage();
    for (const auto& test : st5.tests) oracle.add_test(test);
    st5.outcomes = oracle.commit_stage();
    tr.add_stage(std::move(st5));
  }

  std::vector<Hyperedge> survivors;
  for (std::int32_t ei : s.e1) {
    const Hyperedge& e = edges[static_cast<std::size_t>(ei)];
    if (e.contains(v) && detail::consistent_with_transcript(x, e, tr, y)) survivors.push_back(e);
  }
  if (survivors.size() != 1) return DecodeResult::fail(FailureReason::AmbiguousCandidates, std::move(tr));
  return DecodeResult::success(survivors.front(), std::move(tr));
}

}  // namespace mgt
