#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <random>
#include <sstream>

#include "mgt/design.hpp"
#include "mgt/harness.hpp"
#include "mgt/io.hpp"
#include "mgt/rates.hpp"

using namespace mgt;

TEST_CASE("oracle answers subset-intersection queries in stage batches") {
  StagedOracle oracle({0, 1}, 10, 3);
  oracle.begin_stage();
  const std::int32_t t1[] = {2};
  const std::int32_t t2[] = {1, 8};
  oracle.add_test(t1);
  oracle.add_test(t2);
  const auto& outs = oracle.commit_stage();
  CHECK(outs == std::vector<std::uint8_t>{0, 1});
  CHECK(oracle.query_count() == 2);
}

TEST_CASE("firewall: outcomes are sealed until commit and stages are capped") {
  StagedOracle oracle({3, 4}, 10, 2);
  oracle.begin_stage();
  const std::int32_t t1[] = {3};
  oracle.add_test(t1);
  CHECK_THROWS_AS(oracle.outcomes(0), ProtocolViolation);  // mid-stage read
  oracle.commit_stage();
  CHECK(oracle.outcomes(0).size() == 1);

  oracle.begin_stage();
  oracle.add_test(t1);
  oracle.commit_stage();
  CHECK_THROWS_AS(oracle.begin_stage(), ProtocolViolation);  // third stage

  StagedOracle other({3, 4}, 10, 2);
  CHECK_THROWS_AS(other.add_test(t1), ProtocolViolation);  // outside a stage
  CHECK_THROWS_AS(other.commit_stage(), ProtocolViolation);
}

TEST_CASE("an adaptive decoder is rejected by the stage firewall") {
  // one-test-per-stage binary splitting needs far more than 3 stages
  StagedOracle oracle({5, 17}, 64, 3);
  CHECK_THROWS_AS(baseline_binary_splitting(64, 2, oracle), ProtocolViolation);
}

TEST_CASE("adaptive baseline finds everything within the test budget") {
  // three tests for one defective among eight
  StagedOracle one({5}, 8, -1);
  const DecodeResult r1 = baseline_binary_splitting(8, 1, one);
  REQUIRE(r1.ok());
  CHECK(r1.recovered->vertices()[0] == 5);
  CHECK(r1.transcript.total_tests() == 3);

  for (std::int32_t a = 0; a < 64; ++a) {
    for (std::int32_t b = a + 1; b < 64; ++b) {
      StagedOracle oracle({a, b}, 64, -1);
      const DecodeResult res = baseline_binary_splitting(64, 2, oracle);
      REQUIRE(res.ok());
      CHECK(*res.recovered == Hyperedge{a, b});
      CHECK(res.transcript.total_tests() <= 2 * 6);
    }
  }

  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 300; ++rep) {
    std::vector<std::int32_t> hidden;
    while (hidden.size() < 3) {
      const auto v = static_cast<std::int32_t>(rng() % 1024);
      if (std::find(hidden.begin(), hidden.end(), v) == hidden.end()) hidden.push_back(v);
    }
    StagedOracle oracle(hidden, 1024, -1);
    const DecodeResult res = baseline_binary_splitting(1024, 3, oracle);
    REQUIRE(res.ok());
    std::sort(hidden.begin(), hidden.end());
    CHECK(*res.recovered == Hyperedge(hidden));
    CHECK(res.transcript.total_tests() <= 3 * 10);
  }
}

TEST_CASE("exhaustive campaign at t=16 recovers every pair") {
  CampaignConfig cfg;
  cfg.mode = CampaignMode::Exhaustive;
  cfg.num_items = 16;
  cfg.num_defectives = 2;
  cfg.seed = 1;
  const CampaignReport rep = run_campaign(cfg);
  CHECK(rep.runs == 120);
  CHECK(rep.failure_total() == 0);
  CHECK(rep.max_tests >= rep.num_tests);
  CHECK(rep.ratio == doctest::Approx(static_cast<double>(rep.max_tests) / (2 * 4.0)));
}

TEST_CASE("campaigns are deterministic given the seed") {
  CampaignConfig cfg;
  cfg.mode = CampaignMode::Random;
  cfg.num_items = 128;
  cfg.num_defectives = 3;
  cfg.trials = 60;
  cfg.seed = 12;
  const CampaignReport a = run_campaign(cfg);
  const CampaignReport b = run_campaign(cfg);
  CHECK(io::campaign_csv_row(a) == io::campaign_csv_row(b));
  cfg.threads = 1;
  const CampaignReport c = run_campaign(cfg);
  CHECK(io::campaign_csv_row(a) == io::campaign_csv_row(c));
}

TEST_CASE("exhaustive campaigns respect the subset budget") {
  CampaignConfig cfg;
  cfg.mode = CampaignMode::Exhaustive;
  cfg.num_items = 4096;
  cfg.num_defectives = 3;
  cfg.exhaustive_budget = 1000;
  CHECK_THROWS_AS(run_campaign(cfg), InvalidParamsError);
}

TEST_CASE("matrix files round-trip bit-exactly") {
  ParamOverrides ov;
  ov.seed = 17;
  const DesignParams p = compute_params(48, 3, ov);
  const PoolMatrix x = generate_matrix(p);
  std::ostringstream first;
  io::write_matrix(x, first);
  std::istringstream in(first.str());
  const PoolMatrix back = io::read_matrix(in);
  std::ostringstream second;
  io::write_matrix(back, second);
  CHECK(first.str() == second.str());
  CHECK(back.params().num_items == 48);
  CHECK(back.params().column_weight == p.column_weight);
}

TEST_CASE("weight-inconsistent matrix files are rejected") {
  std::istringstream bad("GTMATRIX v1 N=3 t=2 s=2 k=2 seed=1\n10\n10\n01\n");
  CHECK_THROWS_AS(io::read_matrix(bad), IoError);
  std::istringstream garbled("GTMATRIX v2 N=3 t=2\n");
  CHECK_THROWS_AS(io::read_matrix(garbled), IoError);
  std::istringstream truncated("GTMATRIX v1 N=3 t=2 s=2 k=1 seed=1\n10\n");
  CHECK_THROWS_AS(io::read_matrix(truncated), IoError);
}

TEST_CASE("transcript JSON uses one-based vertices") {
  Transcript t;
  Stage s;
  s.tests = {{0, 4}, {2}};
  s.outcomes = {1, 0};
  t.add_stage(s);
  const auto j = io::transcript_json(t);
  CHECK(j["stages"].size() == 1);
  CHECK(j["stages"][0]["tests"][0] == nlohmann::json::array({1, 5}));
  CHECK(j["stages"][0]["outcomes"] == nlohmann::json::array({1, 0}));
}

TEST_CASE("campaign CSV header and row layout") {
  CHECK(io::campaign_csv_header() ==
        "t,s,seed,N,runs,failures,max_tests,mean_tests,stage_max_1,stage_max_2,stage_max_3,stage_max_4,"
        "stage_max_5,ratio");
  CampaignReport rep;
  rep.num_items = 64;
  rep.num_defectives = 2;
  rep.seed_used = 9;
  rep.num_tests = 25;
  rep.runs = 10;
  rep.max_tests = 31;
  rep.mean_tests = 26.5;
  rep.stage_max = {25, 4, 2, 0, 0};
  rep.ratio = 31.0 / 12.0;
  const std::string row = io::campaign_csv_row(rep);
  CHECK(row == "64,2,9,25,10,0,31,26.5000,25,4,2,0,0,2.583333");
}

TEST_CASE("rate report serializes with fixed keys") {
  rates::RateReport r;
  r.c3 = 1.35;
  r.omega_star_s2 = 0.5;
  r.value_s2 = -1.0;
  r.e1_bound = 2.96;
  const auto j = io::rate_report_json(r);
  CHECK(j.contains("c3"));
  CHECK(j.contains("omega_star_s2"));
  CHECK(j.contains("value_s2"));
  CHECK(j.contains("e1_bound"));
}
