#include "mgt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "mgt/audit.hpp"
#include "mgt/decode2.hpp"
#include "mgt/decode3.hpp"
#include "mgt/design.hpp"

namespace mgt {

std::int64_t CampaignReport::failure_total() const {
  std::int64_t n = 0;
  for (const auto& [reason, cnt] : failures) n += cnt;
  return n;
}

void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t, int)>& body) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = static_cast<int>(std::max<std::int64_t>(1, std::min<std::int64_t>(threads, count)));
  if (threads == 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i, 0);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (;;) {
          const std::int64_t i = next.fetch_add(1);
          if (i >= count) break;
          body(i, w);
        }
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
        next.store(count);
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

namespace {

std::vector<std::vector<std::int32_t>> enumerate_hidden_sets(const CampaignConfig& cfg) {
  const std::int64_t t = cfg.num_items;
  const int s = cfg.num_defectives;
  std::vector<std::vector<std::int32_t>> sets;
  if (cfg.mode == CampaignMode::Exhaustive) {
    double count = 1.0;
    for (int i = 0; i < s; ++i) count = count * static_cast<double>(t - i) / (i + 1);
    if (count > static_cast<double>(cfg.exhaustive_budget))
      throw InvalidParamsError("exhaustive campaign exceeds subset budget");
    if (s == 2) {
      for (std::int32_t a = 0; a < t; ++a)
        for (std::int32_t b = a + 1; b < t; ++b) sets.push_back({a, b});
    } else {
      for (std::int32_t a = 0; a < t; ++a)
        for (std::int32_t b = a + 1; b < t; ++b)
          for (std::int32_t c = b + 1; c < t; ++c) sets.push_back({a, b, c});
    }
  } else {
    std::mt19937_64 rng(cfg.seed ^ 0xA5A5A5A5D00DFEEDull);
    auto bounded = [&rng](std::uint64_t n) {
      const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                  std::numeric_limits<std::uint64_t>::max() % n;
      std::uint64_t x;
      do {
        x = rng();
      } while (x > limit);
      return x % n;
    };
    sets.reserve(static_cast<std::size_t>(cfg.trials));
    for (std::int64_t i = 0; i < cfg.trials; ++i) {
      std::vector<std::int32_t> hs;
      while (static_cast<int>(hs.size()) < s) {
        const auto v = static_cast<std::int32_t>(bounded(static_cast<std::uint64_t>(t)));
        if (std::find(hs.begin(), hs.end(), v) == hs.end()) hs.push_back(v);
      }
      std::sort(hs.begin(), hs.end());
      sets.push_back(std::move(hs));
    }
  }
  return sets;
}

struct Accumulator {
  std::int64_t runs = 0;
  std::int64_t total_tests = 0;
  std::int64_t max_tests = 0;
  std::array<std::int64_t, 5> stage_max{};
  std::map<std::string, std::int64_t> failures;

  void absorb(const Accumulator& o) {
    runs += o.runs;
    total_tests += o.total_tests;
    max_tests = std::max(max_tests, o.max_tests);
    for (std::size_t i = 0; i < stage_max.size(); ++i) stage_max[i] = std::max(stage_max[i], o.stage_max[i]);
    for (const auto& [k, v] : o.failures) failures[k] += v;
  }
};

}  // namespace

CampaignReport run_campaign(const CampaignConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  if (cfg.num_defectives != 2 && cfg.num_defectives != 3) throw InvalidParamsError("campaign needs s in {2,3}");

  const auto hidden_sets = enumerate_hidden_sets(cfg);

  CampaignReport rep;
  rep.num_items = cfg.num_items;
  rep.num_defectives = cfg.num_defectives;
  rep.seed_initial = cfg.seed;

  // Sample a matrix, auditing the outcomes this campaign will actually
  // decode; on violation move to the next seed.
  std::optional<PoolMatrix> matrix;
  std::string audit_summary = "skipped";
  int retries = 0;
  for (int attempt = 0; attempt <= cfg.audit_retry_budget; ++attempt) {
    ParamOverrides ov;
    ov.seed = cfg.seed + static_cast<std::uint64_t>(attempt);
    ov.num_tests = cfg.num_tests_override;
    const DesignParams params = compute_params(cfg.num_items, cfg.num_defectives, ov);
    PoolMatrix cand = generate_matrix(params);
    if (!cfg.run_audit) {
      matrix = std::move(cand);
      break;
    }
    std::vector<OutcomeVector> scope;
    {
      std::unordered_set<BitVec, BitVecHash> seen;
      for (const auto& hs : hidden_sets) {
        OutcomeVector y = outcome(cand, hs);
        if (seen.insert(y.bits()).second) scope.push_back(std::move(y));
      }
    }
    const AuditReport audit = cfg.num_defectives == 2
                                  ? audit_s2(cand, OutcomeScope::explicit_list(std::move(scope)))
                                  : audit_s3(cand, OutcomeScope::explicit_list(std::move(scope)));
    if (audit.passed()) {
      std::ostringstream os;
      os << "passed over " << audit.checked_outcomes << " outcomes";
      if (retries > 0) os << " after " << retries << " regeneration(s)";
      audit_summary = os.str();
      matrix = std::move(cand);
      break;
    }
    ++retries;
  }
  if (!matrix) throw std::runtime_error("audit retry budget exhausted");
  rep.audit_retries = retries;
  rep.audit_summary = audit_summary;
  rep.seed_used = matrix->params().seed;
  rep.num_tests = matrix->params().num_tests;

  const int workers =
      cfg.threads > 0 ? cfg.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::vector<Accumulator> acc(static_cast<std::size_t>(workers));
  parallel_for(static_cast<std::int64_t>(hidden_sets.size()), workers, [&](std::int64_t i, int w) {
    const auto& hs = hidden_sets[static_cast<std::size_t>(i)];
    StagedOracle oracle = make_oracle(hs, cfg.num_items);
    const DecodeResult res =
        cfg.num_defectives == 2 ? decode_s2(*matrix, oracle) : decode_s3(*matrix, oracle);
    Accumulator& a = acc[static_cast<std::size_t>(w)];
    ++a.runs;
    const auto tests = static_cast<std::int64_t>(res.transcript.total_tests());
    a.total_tests += tests;
    a.max_tests = std::max(a.max_tests, tests);
    for (int si = 0; si < res.transcript.stage_count() && si < 5; ++si)
      a.stage_max[static_cast<std::size_t>(si)] =
          std::max(a.stage_max[static_cast<std::size_t>(si)],
                   static_cast<std::int64_t>(res.transcript.tests_in_stage(si)));
    if (!res.ok()) {
      ++a.failures[to_string(*res.failure)];
    } else {
      const auto got = res.recovered->vertices();
      if (!std::equal(got.begin(), got.end(), hs.begin(), hs.end())) ++a.failures["WrongRecovery"];
    }
  });

  Accumulator total;
  for (const Accumulator& a : acc) total.absorb(a);
  rep.runs = total.runs;
  rep.failures = total.failures;
  rep.max_tests = total.max_tests;
  rep.mean_tests = total.runs > 0 ? static_cast<double>(total.total_tests) / static_cast<double>(total.runs) : 0.0;
  rep.stage_max = total.stage_max;
  rep.ratio = static_cast<double>(rep.max_tests) /
              (cfg.num_defectives * std::log2(static_cast<double>(cfg.num_items)));
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

DecodeResult baseline_binary_splitting(std::int64_t t, int s, StagedOracle& oracle) {
  Transcript tr(-1);
  std::vector<std::int32_t> remaining(static_cast<std::size_t>(t));
  for (std::int64_t i = 0; i < t; ++i) remaining[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(i);
  std::vector<std::int32_t> found;

  auto run_test = [&](const std::vector<std::int32_t>& subset) {
    oracle.begin_stage();
    oracle.add_test(subset);
    Stage st;
    st.tests.push_back(subset);
    st.outcomes = oracle.commit_stage();
    const bool hit = st.outcomes.front() != 0;
    tr.add_stage(std::move(st));
    return hit;
  };

  for (int round = 0; round < s; ++round) {
    // remaining holds the s-round unfound defectives, so a search space
    // never needs a positivity test first.
    std::vector<std::int32_t> space = remaining;
    while (space.size() > 1) {
      const std::size_t half = (space.size() + 1) / 2;
      std::vector<std::int32_t> left(space.begin(), space.begin() + static_cast<std::ptrdiff_t>(half));
      if (run_test(left)) {
        space = std::move(left);
      } else {
        space.assign(space.begin() + static_cast<std::ptrdiff_t>(half), space.end());
      }
    }
    const std::int32_t defective = space.front();
    found.push_back(defective);
    remaining.erase(std::remove(remaining.begin(), remaining.end(), defective), remaining.end());
  }
  std::sort(found.begin(), found.end());
  return DecodeResult::success(Hyperedge(found), std::move(tr));
}

}  // namespace mgt
