#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "mgt/audit.hpp"
#include "mgt/decode2.hpp"
#include "mgt/decode3.hpp"
#include "mgt/design.hpp"
#include "mgt/harness.hpp"
#include "mgt/io.hpp"
#include "mgt/rates.hpp"

namespace {

using nlohmann::json;

std::ostream& open_or_stdout(std::optional<std::ofstream>& holder, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  holder.emplace(path);
  if (!*holder) throw mgt::IoError("cannot open for writing: " + path);
  return *holder;
}

mgt::Rational parse_rate(const std::string& text) {
  // Decimal in (0,1), stored over 10^12 so k = floor(p*N) stays exact.
  const double v = std::stod(text);
  if (!(v > 0.0 && v < 1.0)) throw mgt::InvalidParamsError("column rate must lie in (0,1)");
  return mgt::Rational{static_cast<std::int64_t>(std::llround(v * 1e12)), 1'000'000'000'000LL};
}

std::vector<std::int32_t> parse_hidden(const std::string& text) {
  std::vector<std::int32_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const long v = std::stol(tok);
    if (v < 1) throw mgt::InvalidParamsError("hidden indices are 1-based");
    out.push_back(static_cast<std::int32_t>(v - 1));
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Multistage group-testing designs, decoders and verification"};
  app.require_subcommand(1);

  // design
  auto* design = app.add_subcommand("design", "Sample a pool matrix and write it out");
  std::int64_t d_t = 0;
  int d_s = 2;
  std::optional<int> d_n;
  std::string d_p, d_out;
  std::uint64_t d_seed = 1;
  design->add_option("--t", d_t, "sample count")->required();
  design->add_option("--s", d_s, "defective count (2 or 3)")->required();
  design->add_option("--N", d_n, "override test count");
  design->add_option("--p", d_p, "override column rate (decimal)");
  design->add_option("--seed", d_seed, "RNG seed");
  design->add_option("--out", d_out, "output path (default stdout)");

  // audit
  auto* audit = app.add_subcommand("audit", "Check the sparsity properties of a matrix");
  std::string a_matrix, a_scope = "reachable";
  audit->add_option("--matrix", a_matrix, "matrix file")->required();
  audit->add_option("--scope", a_scope, "reachable|all")->check(CLI::IsMember({"reachable", "all"}));

  // decode
  auto* decode = app.add_subcommand("decode", "Decode a hidden set against a matrix");
  std::string c_matrix, c_hidden, c_transcript;
  decode->add_option("--matrix", c_matrix, "matrix file")->required();
  decode->add_option("--hidden", c_hidden, "comma-separated 1-based defective indices")->required();
  decode->add_option("--transcript", c_transcript, "write transcript JSON here");

  // verify
  auto* verify = app.add_subcommand("verify", "Run a decode campaign and print its CSV report");
  std::int64_t v_t = 0;
  int v_s = 2;
  std::string v_mode = "exhaustive", v_out;
  std::int64_t v_trials = 1000;
  std::uint64_t v_seed = 1;
  std::optional<int> v_n;
  verify->add_option("--t", v_t, "sample count")->required();
  verify->add_option("--s", v_s, "defective count")->required();
  verify->add_option("--mode", v_mode, "exhaustive|random")->check(CLI::IsMember({"exhaustive", "random"}));
  verify->add_option("--trials", v_trials, "random-mode trial count");
  verify->add_option("--seed", v_seed, "campaign seed");
  verify->add_option("--N", v_n, "override test count");
  verify->add_option("--out", v_out, "output path (default stdout)");

  // rates
  auto* rates_cmd = app.add_subcommand("rates", "Emit the rate-constant report as JSON");
  std::string r_out;
  rates_cmd->add_option("--out", r_out, "output path (default stdout)");

  // bench
  auto* bench = app.add_subcommand("bench", "Random campaigns across a list of sample counts");
  std::string b_tlist, b_out;
  int b_s = 3;
  std::int64_t b_trials = 1000;
  std::uint64_t b_seed = 1;
  bool b_baseline = false;
  bench->add_option("--t-list", b_tlist, "comma-separated sample counts")->required();
  bench->add_option("--s", b_s, "defective count");
  bench->add_option("--trials", b_trials, "trials per size");
  bench->add_option("--seed", b_seed, "campaign seed");
  bench->add_flag("--baseline", b_baseline, "also log adaptive-splitting maxima to stderr");
  bench->add_option("--out", b_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  std::optional<std::ofstream> sink;

  if (design->parsed()) {
    mgt::ParamOverrides ov;
    ov.seed = d_seed;
    ov.num_tests = d_n;
    if (!d_p.empty()) ov.column_rate = parse_rate(d_p);
    const mgt::DesignParams params = mgt::compute_params(d_t, d_s, ov);
    const mgt::PoolMatrix x = mgt::generate_matrix(params);
    mgt::io::write_matrix(x, open_or_stdout(sink, d_out));
    return 0;
  }

  if (audit->parsed()) {
    const mgt::PoolMatrix x = mgt::io::read_matrix_file(a_matrix);
    const mgt::OutcomeScope scope = a_scope == "all" ? mgt::OutcomeScope::all() : mgt::OutcomeScope::reachable();
    const mgt::AuditReport rep =
        x.params().num_defectives == 2 ? mgt::audit_s2(x, scope) : mgt::audit_s3(x, scope);
    std::cout << mgt::io::audit_report_json(rep).dump(2) << "\n";
    return rep.passed() ? 0 : 1;
  }

  if (decode->parsed()) {
    const mgt::PoolMatrix x = mgt::io::read_matrix_file(c_matrix);
    const auto hidden = parse_hidden(c_hidden);
    if (static_cast<int>(hidden.size()) != x.params().num_defectives)
      throw mgt::InvalidParamsError("hidden set size must equal the matrix's s");
    mgt::StagedOracle oracle = mgt::make_oracle(hidden, x.num_items());
    const mgt::DecodeResult res =
        x.params().num_defectives == 2 ? mgt::decode_s2(x, oracle) : mgt::decode_s3(x, oracle);
    std::cout << mgt::io::decode_result_json(res).dump(2) << "\n";
    if (!c_transcript.empty()) {
      std::ofstream ts(c_transcript);
      if (!ts) throw mgt::IoError("cannot open for writing: " + c_transcript);
      ts << mgt::io::transcript_json(res.transcript).dump(2) << "\n";
    }
    return res.ok() ? 0 : 1;
  }

  if (verify->parsed()) {
    mgt::CampaignConfig cfg;
    cfg.mode = v_mode == "random" ? mgt::CampaignMode::Random : mgt::CampaignMode::Exhaustive;
    cfg.num_items = v_t;
    cfg.num_defectives = v_s;
    cfg.trials = v_trials;
    cfg.seed = v_seed;
    cfg.num_tests_override = v_n;
    const mgt::CampaignReport rep = mgt::run_campaign(cfg);
    mgt::io::write_campaign_csv(rep, open_or_stdout(sink, v_out));
    return rep.failure_total() == 0 ? 0 : 1;
  }

  if (rates_cmd->parsed()) {
    const double p2 = 1.0 - std::sqrt(0.5);
    const double p3 = 1.0 - std::cbrt(0.5);
    const mgt::rates::RateReport rep = mgt::rates::optimize_constants(p2, p3);
    open_or_stdout(sink, r_out) << mgt::io::rate_report_json(rep).dump(2) << "\n";
    return 0;
  }

  if (bench->parsed()) {
    std::vector<std::int64_t> ts;
    std::stringstream ss(b_tlist);
    std::string tok;
    while (std::getline(ss, tok, ',')) ts.push_back(std::stoll(tok));
    std::ostream& os = open_or_stdout(sink, b_out);
    os << mgt::io::campaign_csv_header() << "\n";
    for (std::int64_t t : ts) {
      mgt::CampaignConfig cfg;
      cfg.mode = mgt::CampaignMode::Random;
      cfg.num_items = t;
      cfg.num_defectives = b_s;
      cfg.trials = b_trials;
      cfg.seed = b_seed;
      const mgt::CampaignReport rep = mgt::run_campaign(cfg);
      os << mgt::io::campaign_csv_row(rep) << "\n";
      if (b_baseline) {
        std::mt19937_64 rng(b_seed ^ 0xB453714Eull);
        std::int64_t worst = 0;
        for (int i = 0; i < 200; ++i) {
          std::vector<std::int32_t> hidden;
          while (static_cast<int>(hidden.size()) < b_s) {
            const auto v = static_cast<std::int32_t>(rng() % static_cast<std::uint64_t>(t));
            if (std::find(hidden.begin(), hidden.end(), v) == hidden.end()) hidden.push_back(v);
          }
          mgt::StagedOracle oracle(hidden, t, -1);
          const auto res = mgt::baseline_binary_splitting(t, b_s, oracle);
          worst = std::max(worst, static_cast<std::int64_t>(res.transcript.total_tests()));
        }
        std::cerr << "t=" << t << " adaptive-splitting max tests (200 draws): " << worst << "\n";
      }
    }
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
