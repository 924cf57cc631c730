#pragma once

// Brute-force reference implementations used only by tests. Each one is an
// independent route to a value the production code computes another way.

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "mgt/model.hpp"
#include "mgt/probability.hpp"

namespace mgt::testing {

// All weight-k columns of length n, lexicographic by support.
inline std::vector<BitVec> all_weight_k_columns(int n, int k) {
  std::vector<BitVec> out;
  std::vector<int> support(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) support[static_cast<std::size_t>(i)] = i;
  for (;;) {
    BitVec b(static_cast<std::size_t>(n));
    for (int v : support) b.set(static_cast<std::size_t>(v));
    out.push_back(std::move(b));
    int i = k - 1;
    while (i >= 0 && support[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++support[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      support[static_cast<std::size_t>(j)] = support[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

// Counts ordered s-tuples of weight-k columns whose union equals the first-w
// -positions target (union case) or completes a fixed covered y1 to it.
struct TupleCounts {
  prob::BigInt union_count = 0;
  prob::BigInt completion_count = 0;
  prob::BigInt total = 0;
};

inline TupleCounts enumerate_tuples(int s, int w1, int w, int n, int k) {
  const auto cols = all_weight_k_columns(n, k);
  BitVec target(static_cast<std::size_t>(n)), fixed(static_cast<std::size_t>(n));
  for (int i = 0; i < w; ++i) target.set(static_cast<std::size_t>(i));
  for (int i = 0; i < w1; ++i) fixed.set(static_cast<std::size_t>(i));

  TupleCounts counts;
  const std::size_t m = cols.size();
  std::vector<std::size_t> idx(static_cast<std::size_t>(s), 0);
  for (;;) {
    BitVec u(static_cast<std::size_t>(n));
    for (std::size_t i : idx) u |= cols[i];
    if (u == target) ++counts.union_count;
    if ((u | fixed) == target && u.is_subset_of(target)) ++counts.completion_count;
    ++counts.total;
    int pos = s - 1;
    while (pos >= 0) {
      if (++idx[static_cast<std::size_t>(pos)] < m) break;
      idx[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return counts;
}

// Exact maximum matching size by take-or-skip recursion; fine for the tiny
// graphs the property tests draw.
inline int max_matching_bruteforce(const std::vector<Hyperedge>& edges, std::size_t pos = 0,
                                   std::set<std::int32_t> used = {}) {
  if (pos == edges.size()) return 0;
  int best = max_matching_bruteforce(edges, pos + 1, used);
  bool free = true;
  for (std::int32_t v : edges[pos].vertices()) free = free && !used.contains(v);
  if (free) {
    auto next = used;
    for (std::int32_t v : edges[pos].vertices()) next.insert(v);
    best = std::max(best, 1 + max_matching_bruteforce(edges, pos + 1, std::move(next)));
  }
  return best;
}

// Largest configuration with a |core| = k over every subset of edges.
inline int max_configuration_bruteforce(const std::vector<Hyperedge>& edges, int core_size) {
  const int m = static_cast<int>(edges.size());
  int best = edges.empty() ? 0 : 1;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<int> members;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) members.push_back(i);
    if (static_cast<int>(members.size()) < 2) continue;
    bool ok = true;
    std::vector<std::int32_t> core;
    for (std::size_t a = 0; a < members.size() && ok; ++a)
      for (std::size_t b = a + 1; b < members.size() && ok; ++b) {
        const Hyperedge& ea = edges[static_cast<std::size_t>(members[a])];
        const Hyperedge& eb = edges[static_cast<std::size_t>(members[b])];
        std::vector<std::int32_t> inter;
        for (std::int32_t v : ea.vertices())
          if (eb.contains(v)) inter.push_back(v);
        if (static_cast<int>(inter.size()) != core_size) {
          ok = false;
        } else if (core.empty() && a == 0 && b == 1) {
          core = inter;
        } else if (inter != core) {
          ok = false;
        }
      }
    if (ok) best = std::max(best, static_cast<int>(members.size()));
  }
  return best;
}

// log2 of a positive rational without converting huge integers to double.
inline double log2_rational(const prob::BigRat& r) {
  const prob::BigInt num = boost::multiprecision::numerator(r);
  const prob::BigInt den = boost::multiprecision::denominator(r);
  auto log2_int = [](const prob::BigInt& x) {
    const auto bits = boost::multiprecision::msb(x);
    const prob::BigInt top = bits > 52 ? prob::BigInt(x >> (bits - 52)) : x;
    const auto shift = bits > 52 ? bits - 52 : 0u;
    return std::log2(top.convert_to<double>()) + static_cast<double>(shift);
  };
  return log2_int(num) - log2_int(den);
}

}  // namespace mgt::testing
