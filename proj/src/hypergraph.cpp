#include "mgt/hypergraph.hpp"

#include <algorithm>
#include <set>

namespace mgt {

ConflictGraph::ConflictGraph(int num_items, std::vector<std::pair<std::int32_t, std::int32_t>> arcs)
    : num_items_(num_items), arcs_(std::move(arcs)) {
  std::set<std::pair<std::int32_t, std::int32_t>> seen;
  for (const auto& [u, v] : arcs_) {
    if (u == v) throw InvalidParamsError("conflict graph may not contain self-arcs");
    if (u < 0 || v < 0 || u >= num_items_ || v >= num_items_) throw std::out_of_range("arc endpoint out of range");
    if (!seen.insert({u, v}).second) throw InvalidParamsError("duplicate arc");
  }
}

CandidateHypergraph candidates(const PoolMatrix& x, int s, const OutcomeVector& y) {
  if (s != 2 && s != 3) throw InvalidParamsError("uniformity must be 2 or 3");
  const int w = y.weight();
  std::vector<std::int32_t> covered;
  for (std::int64_t j = 0; j < x.num_items(); ++j)
    if (x.column(j).is_subset_of(y.bits())) covered.push_back(static_cast<std::int32_t>(j));

  std::vector<Hyperedge> edges;
  const std::size_t m = covered.size();
  if (s == 2) {
    for (std::size_t a = 0; a + 1 < m; ++a) {
      const BitVec& ca = x.column(covered[a]);
      for (std::size_t b = a + 1; b < m; ++b) {
        if (ca.popcount_or(x.column(covered[b])) == w) edges.push_back(Hyperedge{covered[a], covered[b]});
      }
    }
  } else {
    for (std::size_t a = 0; a + 2 < m; ++a) {
      for (std::size_t b = a + 1; b + 1 < m; ++b) {
        const BitVec or2 = x.column(covered[a]) | x.column(covered[b]);
        for (std::size_t c = b + 1; c < m; ++c) {
          if (or2.popcount_or(x.column(covered[c])) == w)
            edges.push_back(Hyperedge{covered[a], covered[b], covered[c]});
        }
      }
    }
  }
  return CandidateHypergraph::build(s, y, std::move(edges));
}

namespace {

struct VertexMask {
  std::vector<std::uint64_t> words;
  explicit VertexMask(std::int32_t max_vertex) : words(static_cast<std::size_t>(max_vertex) / 64 + 1, 0) {}
  bool any(std::span<const std::int32_t> vs) const {
    for (std::int32_t v : vs)
      if ((words[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1u) return true;
    return false;
  }
  void flip(std::span<const std::int32_t> vs, bool on) {
    for (std::int32_t v : vs) {
      if (on)
        words[static_cast<std::size_t>(v) >> 6] |= (std::uint64_t{1} << (v & 63));
      else
        words[static_cast<std::size_t>(v) >> 6] &= ~(std::uint64_t{1} << (v & 63));
    }
  }
};

// Take-or-skip search for target_size pairwise-disjoint residuals.
bool disjoint_search(const std::vector<std::vector<std::int32_t>>& residuals, std::size_t pos, int needed,
                     VertexMask& used, std::vector<std::size_t>& chosen) {
  if (needed == 0) return true;
  if (residuals.size() - pos < static_cast<std::size_t>(needed)) return false;
  for (std::size_t i = pos; i + static_cast<std::size_t>(needed) <= residuals.size(); ++i) {
    if (used.any(residuals[i])) continue;
    used.flip(residuals[i], true);
    chosen.push_back(i);
    if (disjoint_search(residuals, i + 1, needed - 1, used, chosen)) return true;
    chosen.pop_back();
    used.flip(residuals[i], false);
  }
  return false;
}

}  // namespace

std::optional<Configuration> find_configuration(const CandidateHypergraph& h, int core_size, int target_size) {
  const int s = h.uniformity();
  if (core_size < 0 || core_size >= s) throw InvalidParamsError("core size must satisfy 0 <= k < s");
  const auto& edges = h.edges();
  if (target_size <= 0) return Configuration{};
  if (edges.empty()) return std::nullopt;

  std::vector<std::vector<std::int32_t>> cores;
  if (core_size == 0) {
    cores.push_back({});
  } else {
    std::set<std::vector<std::int32_t>> uniq;
    for (const Hyperedge& e : edges) {
      const auto vs = e.vertices();
      if (core_size == 1) {
        for (std::int32_t v : vs) uniq.insert({v});
      } else {  // core_size == 2, s == 3
        uniq.insert({vs[0], vs[1]});
        uniq.insert({vs[0], vs[2]});
        uniq.insert({vs[1], vs[2]});
      }
    }
    cores.assign(uniq.begin(), uniq.end());
  }

  std::int32_t max_vertex = 0;
  for (const Hyperedge& e : edges)
    for (std::int32_t v : e.vertices()) max_vertex = std::max(max_vertex, v);

  for (const auto& core : cores) {
    std::vector<std::size_t> members;
    std::vector<std::vector<std::int32_t>> residuals;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      bool has_core = true;
      for (std::int32_t v : core) has_core = has_core && edges[i].contains(v);
      if (!has_core) continue;
      std::vector<std::int32_t> residual;
      for (std::int32_t v : edges[i].vertices())
        if (std::find(core.begin(), core.end(), v) == core.end()) residual.push_back(v);
      members.push_back(i);
      residuals.push_back(std::move(residual));
    }
    if (residuals.size() < static_cast<std::size_t>(target_size)) continue;
    VertexMask used(max_vertex);
    std::vector<std::size_t> chosen;
    if (disjoint_search(residuals, 0, target_size, used, chosen)) {
      Configuration cfg;
      cfg.core = core;
      for (std::size_t i : chosen) cfg.edges.push_back(edges[members[i]]);
      return cfg;
    }
  }
  return std::nullopt;
}

std::vector<Hyperedge> maximal_matching(const CandidateHypergraph& h) {
  std::vector<Hyperedge> out;
  std::set<std::int32_t> used;
  for (const Hyperedge& e : h.edges()) {
    bool free = true;
    for (std::int32_t v : e.vertices()) free = free && !used.contains(v);
    if (!free) continue;
    for (std::int32_t v : e.vertices()) used.insert(v);
    out.push_back(e);
  }
  return out;
}

std::vector<std::vector<std::int32_t>> greedy_partition(const ConflictGraph& g) {
  const int n = g.num_items();
  std::vector<std::vector<std::int32_t>> adj(static_cast<std::size_t>(n));
  for (const auto& [u, v] : g.arcs()) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  std::vector<int> color(static_cast<std::size_t>(n), -1);
  int max_color = -1;
  std::vector<char> taken;
  for (int i = 0; i < n; ++i) {
    taken.assign(static_cast<std::size_t>(max_color) + 2, 0);
    for (std::int32_t nb : adj[static_cast<std::size_t>(i)])
      if (color[static_cast<std::size_t>(nb)] >= 0) taken[static_cast<std::size_t>(color[static_cast<std::size_t>(nb)])] = 1;
    int c = 0;
    while (taken[static_cast<std::size_t>(c)]) ++c;
    color[static_cast<std::size_t>(i)] = c;
    max_color = std::max(max_color, c);
  }
  std::vector<std::vector<std::int32_t>> groups(static_cast<std::size_t>(max_color + 1));
  for (int i = 0; i < n; ++i) groups[static_cast<std::size_t>(color[static_cast<std::size_t>(i)])].push_back(i);
  return groups;
}

std::optional<std::size_t> BitmaskPlan::decode(std::span<const std::uint8_t> outcomes) const {
  if (outcomes.size() != tests.size()) throw InvalidParamsError("outcome count does not match test count");
  std::size_t idx = 0;
  for (std::size_t b = 0; b < outcomes.size(); ++b)
    if (outcomes[b]) idx |= (std::size_t{1} << b);
  if (idx >= item_count) return std::nullopt;
  return idx;
}

BitmaskPlan bitmask_identify(const std::vector<std::vector<std::int32_t>>& items) {
  if (items.empty()) throw InvalidParamsError("bitmask identification needs at least one item");
  BitmaskPlan plan;
  plan.item_count = items.size();
  int bits = 0;
  while ((std::size_t{1} << bits) < items.size()) ++bits;
  for (int b = 0; b < bits; ++b) {
    std::set<std::int32_t> u;
    for (std::size_t i = 0; i < items.size(); ++i)
      if (i & (std::size_t{1} << b)) u.insert(items[i].begin(), items[i].end());
    plan.tests.emplace_back(u.begin(), u.end());
  }
  return plan;
}

}  // namespace mgt
