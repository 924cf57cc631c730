#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mgt/audit.hpp"
#include "mgt/design.hpp"

using namespace mgt;

namespace {

PoolMatrix matrix_from_strings(int s, int d, const std::vector<std::string>& columns) {
  const int t = static_cast<int>(columns.size());
  const int n = static_cast<int>(columns.front().size());
  DesignParams p;
  p.num_items = t;
  p.num_defectives = s;
  p.num_tests = n;
  p.sparsity_threshold = d;
  p.sibling_threshold = s == 3 ? 3 * d : 0;
  std::vector<BitVec> cols;
  for (const auto& c : columns) cols.push_back(BitVec::from_string(c));
  p.column_weight = cols.front().popcount();
  return PoolMatrix(p, std::move(cols));
}

PoolMatrix identity_matrix(int t, int s, int d) {
  std::vector<std::string> cols;
  for (int j = 0; j < t; ++j) {
    std::string c(static_cast<std::size_t>(t), '0');
    c[static_cast<std::size_t>(j)] = '1';
    cols.push_back(c);
  }
  return matrix_from_strings(s, d, cols);
}

}  // namespace

TEST_CASE("identity matrix passes the two-defective audit") {
  const PoolMatrix x = identity_matrix(10, 2, 2);
  const AuditReport rep = audit_s2(x);
  CHECK(rep.passed());
  CHECK(rep.checked_outcomes == 45);  // all pair outcomes are distinct
}

TEST_CASE("repeated columns trip the degree bound") {
  // three identical columns plus a partner: H(y) has a vertex of degree 3
  const PoolMatrix x = matrix_from_strings(2, 3, {"110000", "110000", "110000", "001100"});
  const AuditReport rep = audit_s2(x);
  CHECK_FALSE(rep.passed());
  bool saw_degree = false;
  for (const auto& v : rep.violations) saw_degree = saw_degree || v.property == "max_degree";
  CHECK(saw_degree);
}

TEST_CASE("audit over an explicit scope is deterministic") {
  ParamOverrides ov;
  ov.seed = 3;
  const DesignParams p = compute_params(32, 2, ov);
  const PoolMatrix x = generate_matrix(p);
  const auto scope = reachable_outcomes(x, 2);
  CHECK(scope.size() <= 496);
  const AuditReport a = audit_s2(x, OutcomeScope::explicit_list(scope));
  const AuditReport b = audit_s2(x, OutcomeScope::explicit_list(scope));
  CHECK(a.checked_outcomes == b.checked_outcomes);
  CHECK(a.violations.size() == b.violations.size());
  const AuditReport full = audit_s2(x);
  CHECK(full.checked_outcomes == scope.size());
}

TEST_CASE("reachable enumeration respects the subset budget") {
  ParamOverrides ov;
  const DesignParams p = compute_params(4096, 3, ov);
  const PoolMatrix x = generate_matrix(p);
  CHECK_THROWS_AS(reachable_outcomes(x, 3), InvalidParamsError);
  CHECK_THROWS_AS(audit_s3(x), InvalidParamsError);
}

TEST_CASE("exhaustive scope is capped at N = 20") {
  const PoolMatrix x = identity_matrix(8, 2, 2);
  const AuditReport rep = audit_s2(x, OutcomeScope::all());
  CHECK(rep.checked_outcomes == 256);
  ParamOverrides ov;
  const DesignParams p = compute_params(64, 2, ov);
  const PoolMatrix big = generate_matrix(p);
  CHECK_THROWS_AS(audit_s2(big, OutcomeScope::all()), InvalidParamsError);
}

TEST_CASE("repeated columns force a shared-core configuration violation") {
  // Triples {0,i,j} over the five copies of 0011 all union to 1111 and
  // pairwise intersect exactly in {0}: a (3,1) configuration of size 2
  // against L1 = 2.
  const PoolMatrix x = matrix_from_strings(3, 2, {"1100", "0011", "0011", "0011", "0011", "0011"});
  const AuditReport rep = audit_s3(x);
  CHECK_FALSE(rep.passed());
  bool saw_config = false;
  for (const auto& v : rep.violations) saw_config = saw_config || v.property == "config_31";
  CHECK(saw_config);
}

TEST_CASE("three-defective audit on generated designs") {
  // Desk-scale designs pass or fail the strict properties seed by seed; the
  // campaign regenerates on failure. Both verdicts are pinned here.
  ParamOverrides ov;
  ov.seed = 1;
  const DesignParams good = compute_params(24, 3, ov);
  const AuditReport pass_rep = audit_s3(generate_matrix(good));
  CHECK(pass_rep.checked_outcomes <= 2024);
  CHECK(pass_rep.passed());

  ov.seed = 4;
  const DesignParams bad = compute_params(24, 3, ov);
  const AuditReport fail_rep = audit_s3(generate_matrix(bad));
  CHECK_FALSE(fail_rep.passed());
  for (const auto& v : fail_rep.violations) CHECK(v.property == "completion_count");
}

TEST_CASE("trivial completion property holds with no covered columns") {
  // outcome far lighter than k: nothing is covered, counts are zero
  ParamOverrides ov;
  const DesignParams p = compute_params(16, 3, ov);
  const PoolMatrix x = generate_matrix(p);
  BitVec y(static_cast<std::size_t>(p.num_tests));
  y.set(0);
  const AuditReport rep = audit_s3(x, OutcomeScope::explicit_list({OutcomeVector(y)}));
  CHECK(rep.passed());
}
