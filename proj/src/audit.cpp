#include "mgt/audit.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_set>

#include "mgt/design.hpp"
#include "mgt/hypergraph.hpp"
#include "mgt/probability.hpp"

namespace mgt {

namespace {

using prob::BigRat;

std::vector<OutcomeVector> scoped_outcomes(const PoolMatrix& x, int s, const OutcomeScope& scope) {
  switch (scope.kind) {
    case ScopeKind::Explicit:
      return scope.outcomes;
    case ScopeKind::All: {
      const int n = x.num_tests();
      if (n > 20) throw InvalidParamsError("exhaustive outcome scope supported only for N <= 20");
      std::vector<OutcomeVector> out;
      out.reserve(std::size_t{1} << n);
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        BitVec b(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
          if (bits & (std::uint64_t{1} << i)) b.set(static_cast<std::size_t>(i));
        out.emplace_back(std::move(b));
      }
      return out;
    }
    case ScopeKind::Reachable:
    default:
      return reachable_outcomes(x, s);
  }
}

std::string weight_detail(const char* what, std::int64_t got, const std::string& bound) {
  std::ostringstream os;
  os << what << " = " << got << ", bound " << bound;
  return os.str();
}

std::string rat_str(const BigRat& r) {
  std::ostringstream os;
  os << prob::to_double(r);
  return os.str();
}

}  // namespace

std::vector<OutcomeVector> reachable_outcomes(const PoolMatrix& x, int s, std::int64_t max_subsets) {
  const std::int64_t t = x.num_items();
  BigRat count = 1;
  for (int i = 0; i < s; ++i) count *= (t - i);
  for (int i = 2; i <= s; ++i) count /= i;
  if (count > BigRat(max_subsets)) throw InvalidParamsError("reachable scope exceeds subset budget");

  std::vector<OutcomeVector> out;
  std::unordered_set<BitVec, BitVecHash> seen;
  std::vector<std::int32_t> subset(static_cast<std::size_t>(s));
  auto visit = [&](std::span<const std::int32_t> vs) {
    OutcomeVector y = outcome(x, vs);
    if (seen.insert(y.bits()).second) out.push_back(std::move(y));
  };
  if (s == 2) {
    for (std::int32_t a = 0; a < t; ++a)
      for (std::int32_t b = a + 1; b < t; ++b) {
        subset = {a, b};
        visit(subset);
      }
  } else {
    for (std::int32_t a = 0; a < t; ++a)
      for (std::int32_t b = a + 1; b < t; ++b)
        for (std::int32_t c = b + 1; c < t; ++c) {
          subset = {a, b, c};
          visit(subset);
        }
  }
  return out;
}

AuditReport audit_s2(const PoolMatrix& x, const OutcomeScope& scope) {
  const DesignParams& p = x.params();
  if (p.num_defectives != 2) throw InvalidParamsError("audit_s2 needs a two-defective design");
  const int d = p.sparsity_threshold;
  const std::int64_t n = p.num_tests, t = p.num_items, k = p.column_weight;

  AuditReport rep;
  for (const OutcomeVector& y : scoped_outcomes(x, 2, scope)) {
    ++rep.checked_outcomes;
    const CandidateHypergraph h = candidates(x, 2, y);

    const int deg = h.max_degree();
    if (deg >= d) rep.violations.push_back({"max_degree", y, weight_detail("max vertex degree", deg, std::to_string(d))});

    const BigRat q = prob::pair_union_q(y.weight(), n, k);
    const BigRat bound = 10 * std::max(BigRat(n), BigRat(t) * BigRat(t) * q);
    const auto witness = static_cast<std::int64_t>(maximal_matching(h).size());
    bool violated = witness >= bound;
    if (!violated && BigRat(2 * witness) >= bound) {
      // Greedy witness within a factor two of the cap: confirm exactly.
      violated = find_configuration(h, 0, static_cast<int>(prob::ceil_to_int(bound))).has_value();
    }
    if (violated)
      rep.violations.push_back({"matching_size", y, weight_detail("matching", witness, rat_str(bound))});
  }
  return rep;
}

AuditReport audit_s3(const PoolMatrix& x, const OutcomeScope& scope) {
  const DesignParams& p = x.params();
  if (p.num_defectives != 3) throw InvalidParamsError("audit_s3 needs a three-defective design");
  const int l1 = p.sparsity_threshold;
  const std::int64_t n = p.num_tests, t = p.num_items, k = p.column_weight;

  AuditReport rep;
  for (const OutcomeVector& y : scoped_outcomes(x, 3, scope)) {
    ++rep.checked_outcomes;
    const CandidateHypergraph h = candidates(x, 3, y);
    const std::int64_t w = y.weight();

    if (auto cfg = find_configuration(h, 1, l1)) {
      std::ostringstream os;
      os << "(3,1) configuration of size " << cfg->edges.size() << " at core vertex " << cfg->core.front();
      rep.violations.push_back({"config_31", y, os.str()});
    }

    const BigRat bound30 = 10 * std::max(BigRat(t) * t * t * prob::union_probability(3, w, n, k), BigRat(n));
    const auto packing = static_cast<std::int64_t>(maximal_matching(h).size());
    bool violated = packing >= bound30;
    if (!violated && BigRat(3 * packing) >= bound30)
      violated = find_configuration(h, 0, static_cast<int>(prob::ceil_to_int(bound30))).has_value();
    if (violated)
      rep.violations.push_back({"config_30", y, weight_detail("(3,0) packing", packing, rat_str(bound30))});

    // Completion counts for every y1 realized by a covered column or a
    // covered pair; quantifying over all 2^w sub-vectors is not needed by
    // the decoders.
    std::vector<std::int32_t> covered;
    for (std::int64_t j = 0; j < t; ++j)
      if (x.column(j).is_subset_of(y.bits())) covered.push_back(static_cast<std::int32_t>(j));
    std::vector<BitVec> y1s;
    {
      std::unordered_set<BitVec, BitVecHash> seen;
      for (std::size_t a = 0; a < covered.size(); ++a) {
        if (seen.insert(x.column(covered[a])).second) y1s.push_back(x.column(covered[a]));
        for (std::size_t b = a + 1; b < covered.size(); ++b) {
          BitVec u = x.column(covered[a]) | x.column(covered[b]);
          if (seen.insert(u).second) y1s.push_back(std::move(u));
        }
      }
    }
    for (const BitVec& y1 : y1s) {
      std::int64_t cnt = 0;
      for (std::int32_t j : covered)
        if (x.column(j).popcount_or(y1) == w) ++cnt;
      const double cap = 10.0 * prob::completion_count_threshold(n, t, y1.popcount(), w, l1, k);
      if (static_cast<double>(cnt) >= cap) {
        std::ostringstream os;
        os << "completions of a weight-" << y1.popcount() << " vector: " << cnt << ", cap " << cap;
        rep.violations.push_back({"completion_count", y, os.str()});
      }
    }

    // Disjoint covered pairs, grouped by union weight (always 2k).
    std::map<std::int64_t, std::int64_t> disjoint_by_weight;
    for (std::size_t a = 0; a < covered.size(); ++a)
      for (std::size_t b = a + 1; b < covered.size(); ++b)
        if (!x.column(covered[a]).intersects(x.column(covered[b])))
          ++disjoint_by_weight[x.column(covered[a]).popcount_or(x.column(covered[b]))];
    for (const auto& [w1, cnt] : disjoint_by_weight) {
      const BigRat cap =
          10 * std::max(BigRat(n), prob::binomial(w, w1) * BigRat(t) * t * prob::union_probability(2, w1, n, k));
      if (BigRat(cnt) >= cap)
        rep.violations.push_back(
            {"disjoint_pairs", y, weight_detail("disjoint covered pairs", cnt, rat_str(cap))});
    }
  }
  return rep;
}

}  // namespace mgt
