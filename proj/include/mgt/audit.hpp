#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mgt/model.hpp"

namespace mgt {

struct AuditViolation {
  std::string property;
  OutcomeVector witness_outcome;
  std::string detail;
};

struct AuditReport {
  std::size_t checked_outcomes = 0;
  std::vector<AuditViolation> violations;
  bool passed() const { return violations.empty(); }
};

enum class ScopeKind {
  Reachable,  // { r(X,S) : |S| = s }, deduplicated in enumeration order
  All,        // every y in {0,1}^N; only feasible for N <= 20
  Explicit,   // caller-provided outcome list (e.g. the outcomes a campaign will decode)
};

struct OutcomeScope {
  ScopeKind kind = ScopeKind::Reachable;
  std::vector<OutcomeVector> outcomes;  // used when kind == Explicit

  static OutcomeScope reachable() { return {}; }
  static OutcomeScope all() { return {ScopeKind::All, {}}; }
  static OutcomeScope explicit_list(std::vector<OutcomeVector> ys) { return {ScopeKind::Explicit, std::move(ys)}; }
};

// Deduplicated outcomes of all s-subsets, in subset enumeration order.
// Guarded: throws if C(t,s) exceeds max_subsets.
std::vector<OutcomeVector> reachable_outcomes(const PoolMatrix& x, int s, std::int64_t max_subsets = 5'000'000);

// Degree / matching sparsity audit behind the two-defective decoder: for
// every scoped outcome, candidate degrees stay below d and the maximal
// matching stays below 10*max(N, t^2 q).
AuditReport audit_s2(const PoolMatrix& x, const OutcomeScope& scope = {});

// Configuration / completion-count audit behind the three-defective decoder
// (four properties: (3,1) configurations, (3,0) configurations, per-pair
// completion counts, disjoint covered pairs).
AuditReport audit_s3(const PoolMatrix& x, const OutcomeScope& scope = {});

}  // namespace mgt
