// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Heavier than the unit tests; budgeted for a laptop.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <vector>

#include "mgt/audit.hpp"
#include "mgt/decode2.hpp"
#include "mgt/decode3.hpp"
#include "mgt/design.hpp"
#include "mgt/harness.hpp"
#include "mgt/probability.hpp"
#include "mgt/rates.hpp"
#include "support/oracles.hpp"

using namespace mgt;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome criterion1_exhaustive_s2() {
  CampaignConfig cfg;
  cfg.mode = CampaignMode::Exhaustive;
  cfg.num_items = 64;
  cfg.num_defectives = 2;
  cfg.seed = 1;
  const CampaignReport rep = run_campaign(cfg);
  Outcome out;
  std::ostringstream os;
  os << "runs=" << rep.runs << " failures=" << rep.failure_total() << " max_tests=" << rep.max_tests
     << " wall=" << rep.wall_seconds << "s audit{" << rep.audit_summary << "}";
  out.pass = rep.runs == 2016 && rep.failure_total() == 0 && rep.stage_max[3] == 0 && rep.stage_max[4] == 0 &&
             rep.wall_seconds < 120.0;
  out.detail = os.str();
  return out;
}

Outcome criterion2_exhaustive_s3() {
  CampaignConfig cfg;
  cfg.mode = CampaignMode::Exhaustive;
  cfg.num_items = 64;
  cfg.num_defectives = 3;
  cfg.seed = 1;
  const CampaignReport rep = run_campaign(cfg);
  Outcome out;
  std::ostringstream os;
  os << "runs=" << rep.runs << " failures=" << rep.failure_total() << " max_tests=" << rep.max_tests
     << " wall=" << rep.wall_seconds << "s audit{" << rep.audit_summary << "}";
  out.pass = rep.runs == 41664 && rep.failure_total() == 0 && rep.wall_seconds < 900.0;
  out.detail = os.str();
  return out;
}

Outcome criterion3_probability_oracle() {
  Outcome out;
  std::int64_t checked = 0;
  for (int n = 1; n <= 8 && out.pass; ++n) {
    for (int k = 1; k <= std::min(3, n) && out.pass; ++k) {
      for (int s = 1; s <= 3 && out.pass; ++s) {
        for (int w = 0; w <= n && out.pass; ++w) {
          for (int w1 = 0; w1 <= w && out.pass; ++w1) {
            const auto counts = mgt::testing::enumerate_tuples(s, w1, w, n, k);
            const prob::BigRat denom(counts.total);
            if (w1 == 0 && prob::union_probability(s, w, n, k) != prob::BigRat(counts.union_count) / denom) {
              out.pass = false;
              out.detail = "union probability mismatch";
            }
            if (prob::completion_probability(s, w1, w, n, k) != prob::BigRat(counts.completion_count) / denom) {
              out.pass = false;
              out.detail = "completion probability mismatch";
            }
            ++checked;
          }
        }
      }
    }
  }
  for (std::int64_t n = 1; n <= 12 && out.pass; ++n)
    for (std::int64_t k = 1; k < n && out.pass; ++k)
      for (std::int64_t w = 0; w <= n && out.pass; ++w) {
        if (prob::pair_union_q(w, n, k) != prob::union_probability(2, w, n, k)) {
          out.pass = false;
          out.detail = "pair q != two-column union probability";
        }
        ++checked;
      }
  if (out.pass) out.detail = "exact rational equality over " + std::to_string(checked) + " parameter points";
  return out;
}

Outcome criterion4_rate_constants() {
  const auto t0 = std::chrono::steady_clock::now();
  const rates::RateReport rep = rates::optimize_constants(1.0 - std::sqrt(0.5), 1.0 - std::cbrt(0.5));
  const double wall = seconds_since(t0);
  Outcome out;
  std::ostringstream os;
  os << "c3=" << rep.c3 << " omega*=" << rep.omega_star_s2 << " value=" << rep.value_s2
     << " e1=" << rep.e1_bound << " wall=" << wall << "s";
  out.pass = std::abs(rep.c3 - 1.35) <= 0.01 && std::abs(rep.omega_star_s2 - 0.5) <= 1e-6 &&
             std::abs(rep.value_s2 + 1.0) <= 1e-6 && rep.e1_bound <= 2.965 + 0.005 && wall < 10.0;
  out.detail = os.str();
  return out;
}

Outcome criterion5_structural_audit() {
  Outcome out;
  std::int64_t structures = 0, violations = 0;
  for (std::int64_t t : {256, 1024}) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      ParamOverrides ov;
      ov.seed = seed;
      const DesignParams p = compute_params(t, 3, ov);
      const PoolMatrix x = generate_matrix(p);
      std::mt19937_64 rng(seed * 7919 + static_cast<std::uint64_t>(t));
      std::mutex mu;
      std::vector<std::vector<std::int32_t>> hidden_sets;
      for (int i = 0; i < 500; ++i) {
        std::vector<std::int32_t> hs;
        while (hs.size() < 3) {
          const auto v = static_cast<std::int32_t>(rng() % static_cast<std::uint64_t>(t));
          if (std::find(hs.begin(), hs.end(), v) == hs.end()) hs.push_back(v);
        }
        hidden_sets.push_back(std::move(hs));
      }
      parallel_for(static_cast<std::int64_t>(hidden_sets.size()), 0, [&](std::int64_t i, int) {
        const OutcomeVector y = outcome(x, hidden_sets[static_cast<std::size_t>(i)]);
        const CandidateHypergraph h = candidates(x, 3, y);
        const StructuredHypergraph s = build_structure(h, p);
        const AuditReport rep = structural_audit(s, p);
        std::scoped_lock lock(mu);
        ++structures;
        violations += static_cast<std::int64_t>(rep.violations.size());
      });
    }
  }
  // Regeneration machinery: hunt for a seed whose design fails the goodness
  // audit at small t, then confirm the campaign walks past it.
  std::string regen = "regeneration not triggered in seed sweep";
  for (std::uint64_t seed = 1; seed <= 400; ++seed) {
    ParamOverrides ov;
    ov.seed = seed;
    const DesignParams p = compute_params(16, 2, ov);
    const PoolMatrix x = generate_matrix(p);
    if (!audit_s2(x).passed()) {
      CampaignConfig cfg;
      cfg.mode = CampaignMode::Exhaustive;
      cfg.num_items = 16;
      cfg.num_defectives = 2;
      cfg.seed = seed;
      const CampaignReport rep = run_campaign(cfg);
      std::ostringstream ros;
      ros << "regeneration exercised: seed " << seed << " -> " << rep.seed_used << ", failures "
          << rep.failure_total();
      regen = ros.str();
      if (rep.seed_used == seed || rep.failure_total() != 0) out.pass = false;
      break;
    }
  }
  std::ostringstream os;
  os << structures << " structures, " << violations << " violations; " << regen;
  out.pass = out.pass && violations == 0;
  out.detail = os.str();
  return out;
}

Outcome criterion6_firewall() {
  Outcome out;
  out.pass = false;
  StagedOracle oracle({5, 17}, 64, 3);
  try {
    baseline_binary_splitting(64, 2, oracle);  // adaptive: one stage per test
    out.detail = "adaptive decoder was not rejected";
  } catch (const ProtocolViolation&) {
    out.pass = true;
    out.detail = "adaptive decoder rejected after " + std::to_string(oracle.stages_used()) + " stages";
  }
  return out;
}

Outcome criterion7_finite_size_trend() {
  Outcome out;
  std::ostringstream os;
  double prev = 1e300;
  for (std::int64_t t : {std::int64_t{1} << 10, std::int64_t{1} << 13, std::int64_t{1} << 16}) {
    CampaignConfig cfg;
    cfg.mode = CampaignMode::Random;
    cfg.num_items = t;
    cfg.num_defectives = 3;
    cfg.trials = 1000;
    cfg.seed = 1;
    const CampaignReport rep = run_campaign(cfg);
    os << "t=2^" << static_cast<int>(std::log2(static_cast<double>(t))) << " ratio=" << rep.ratio << " (max "
       << rep.max_tests << ", failures " << rep.failure_total() << ")  ";
    if (rep.ratio > prev + 1e-12) out.pass = false;
    prev = rep.ratio;
  }
  out.detail = os.str();
  return out;
}

Outcome criterion8_baseline() {
  Outcome out;
  std::int64_t worst2 = 0, worst3 = 0;
  for (std::int32_t a = 0; a < 64 && out.pass; ++a) {
    for (std::int32_t b = a + 1; b < 64; ++b) {
      StagedOracle oracle({a, b}, 64, -1);
      const DecodeResult res = baseline_binary_splitting(64, 2, oracle);
      if (!res.ok() || !(*res.recovered == Hyperedge{a, b})) {
        out.pass = false;
        out.detail = "baseline misidentified a pair";
        break;
      }
      worst2 = std::max(worst2, static_cast<std::int64_t>(res.transcript.total_tests()));
    }
  }
  for (std::int32_t a = 0; a < 64 && out.pass; ++a) {
    for (std::int32_t b = a + 1; b < 64; ++b) {
      for (std::int32_t c = b + 1; c < 64; ++c) {
        StagedOracle oracle({a, b, c}, 64, -1);
        const DecodeResult res = baseline_binary_splitting(64, 3, oracle);
        if (!res.ok() || !(*res.recovered == Hyperedge{a, b, c})) {
          out.pass = false;
          out.detail = "baseline misidentified a triple";
          break;
        }
        worst3 = std::max(worst3, static_cast<std::int64_t>(res.transcript.total_tests()));
      }
    }
  }
  if (out.pass) {
    out.pass = worst2 <= 2 * 6 + 3 * 2 && worst3 <= 3 * 6 + 3 * 3;
    std::ostringstream os;
    os << "max tests: s=2 " << worst2 << " (cap 18), s=3 " << worst3 << " (cap 27)";
    out.detail = os.str();
  }
  return out;
}

Outcome criterion9_candidate_completeness() {
  Outcome out;
  struct GridPoint {
    std::int64_t t;
    int s;
    std::uint64_t seed;
    std::int64_t instances;
  };
  std::vector<GridPoint> grid;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    for (std::int64_t t : {16, 32, 48, 64}) grid.push_back({t, 2, seed, 30'000});
    for (std::int64_t t : {16, 24, 32}) grid.push_back({t, 3, seed, 27'000});
  }
  std::int64_t total = 0, bad = 0;
  std::mutex mu;
  for (const GridPoint& g : grid) {
    ParamOverrides ov;
    ov.seed = g.seed;
    const DesignParams p = compute_params(g.t, g.s, ov);
    const PoolMatrix x = generate_matrix(p);
    std::int64_t local_bad = 0;
    parallel_for(g.instances, 0, [&](std::int64_t i, int) {
      std::mt19937_64 rng(g.seed * 1'000'003ull + static_cast<std::uint64_t>(i) * 2'000'029ull +
                          static_cast<std::uint64_t>(g.t));
      std::vector<std::int32_t> hs;
      while (static_cast<int>(hs.size()) < g.s) {
        const auto v = static_cast<std::int32_t>(rng() % static_cast<std::uint64_t>(g.t));
        if (std::find(hs.begin(), hs.end(), v) == hs.end()) hs.push_back(v);
      }
      std::sort(hs.begin(), hs.end());
      const OutcomeVector y = outcome(x, hs);
      const CandidateHypergraph h = candidates(x, g.s, y);
      const auto& edges = h.edges();
      if (std::find(edges.begin(), edges.end(), Hyperedge(hs)) == edges.end()) {
        std::scoped_lock lock(mu);
        ++local_bad;
      }
    });
    total += g.instances;
    bad += local_bad;
  }
  out.pass = bad == 0 && total >= 1'000'000;
  std::ostringstream os;
  os << total << " randomized instances, " << bad << " completeness violations";
  out.detail = os.str();
  return out;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    Outcome (*fn)();
  };
  const Entry entries[] = {
      {1, "exhaustive correctness, s=2, t=64", criterion1_exhaustive_s2},
      {2, "exhaustive correctness, s=3, t=64", criterion2_exhaustive_s3},
      {3, "probability oracle equivalence", criterion3_probability_oracle},
      {4, "rate constants", criterion4_rate_constants},
      {5, "structural bound audit", criterion5_structural_audit},
      {6, "stage-protocol enforcement", criterion6_firewall},
      {7, "finite-size trend", criterion7_finite_size_trend},
      {8, "baseline sanity", criterion8_baseline},
      {9, "candidate completeness", criterion9_candidate_completeness},
  };
  int failures = 0;
  for (const Entry& e : entries) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = e.fn();
    } catch (const std::exception& ex) {
      out.pass = false;
      out.detail = std::string("exception: ") + ex.what();
    }
    const double wall = seconds_since(t0);
    std::printf("criterion %d [%s]: %s — %s (%.1fs)\n", e.id, e.name, out.pass ? "PASS" : "FAIL",
                out.detail.c_str(), wall);
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
