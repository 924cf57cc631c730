#include "mgt/io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mgt/design.hpp"

namespace mgt::io {

using nlohmann::json;

void write_matrix(const PoolMatrix& x, std::ostream& os) {
  const DesignParams& p = x.params();
  os << "GTMATRIX v1 N=" << p.num_tests << " t=" << p.num_items << " s=" << p.num_defectives
     << " k=" << p.column_weight << " seed=" << p.seed << "\n";
  for (const BitVec& row : x.rows()) os << row.to_string() << "\n";
}

void write_matrix_file(const PoolMatrix& x, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path);
  write_matrix(x, os);
}

PoolMatrix read_matrix(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw IoError("empty matrix file");
  long long n = 0, t = 0, k = 0;
  int s = 0;
  unsigned long long seed = 0;
  if (std::sscanf(header.c_str(), "GTMATRIX v1 N=%lld t=%lld s=%d k=%lld seed=%llu", &n, &t, &s, &k, &seed) != 5)
    throw IoError("malformed matrix header");
  if (n <= 0 || t <= 0 || (s != 2 && s != 3) || k <= 0 || k >= n) throw IoError("matrix header out of range");

  std::vector<BitVec> columns(static_cast<std::size_t>(t), BitVec(static_cast<std::size_t>(n)));
  std::string line;
  for (long long i = 0; i < n; ++i) {
    if (!std::getline(is, line)) throw IoError("matrix file truncated");
    if (static_cast<long long>(line.size()) != t) throw IoError("matrix row has wrong length");
    for (long long j = 0; j < t; ++j) {
      if (line[static_cast<std::size_t>(j)] == '1')
        columns[static_cast<std::size_t>(j)].set(static_cast<std::size_t>(i));
      else if (line[static_cast<std::size_t>(j)] != '0')
        throw IoError("matrix rows may contain only '0' and '1'");
    }
  }
  for (const BitVec& c : columns)
    if (c.popcount() != k) throw IoError("column weight disagrees with header k");

  // Derived fields are recomputed from (t, s); the file format carries only
  // the operational parameters.
  ParamOverrides ov;
  ov.seed = seed;
  ov.num_tests = static_cast<int>(n);
  DesignParams params;
  params.num_items = t;
  params.num_defectives = s;
  params.num_tests = static_cast<int>(n);
  params.column_weight = static_cast<int>(k);
  params.seed = seed;
  params.n_overridden = true;
  const double ll = std::log2(std::log2(static_cast<double>(t)));
  params.sparsity_threshold = std::max(1, static_cast<int>(std::ceil(ll - 1e-12)));
  params.sibling_threshold = s == 3 ? 3 * params.sparsity_threshold : 0;
  params.column_rate = Rational{k, n};
  return PoolMatrix(params, std::move(columns));
}

PoolMatrix read_matrix_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open matrix file: " + path);
  return read_matrix(is);
}

json transcript_json(const Transcript& t) {
  json stages = json::array();
  for (const Stage& st : t.stages()) {
    json tests = json::array();
    for (const auto& test : st.tests) {
      json vs = json::array();
      for (std::int32_t v : test) vs.push_back(v + 1);
      tests.push_back(std::move(vs));
    }
    json outcomes = json::array();
    for (std::uint8_t o : st.outcomes) outcomes.push_back(static_cast<int>(o));
    stages.push_back({{"tests", std::move(tests)}, {"outcomes", std::move(outcomes)}});
  }
  return {{"stages", std::move(stages)}};
}

json decode_result_json(const DecodeResult& r) {
  json out;
  if (r.ok()) {
    json vs = json::array();
    for (std::int32_t v : r.recovered->vertices()) vs.push_back(v + 1);
    out["recovered"] = std::move(vs);
  } else {
    out["failure"] = to_string(*r.failure);
  }
  out["stages"] = r.transcript.stage_count();
  out["total_tests"] = r.transcript.total_tests();
  json per_stage = json::array();
  for (int i = 0; i < r.transcript.stage_count(); ++i) per_stage.push_back(r.transcript.tests_in_stage(i));
  out["tests_per_stage"] = std::move(per_stage);
  return out;
}

json audit_report_json(const AuditReport& r) {
  json out;
  out["checked_outcomes"] = r.checked_outcomes;
  out["passed"] = r.passed();
  json vs = json::array();
  for (const AuditViolation& v : r.violations) {
    vs.push_back({{"property", v.property},
                  {"outcome", v.witness_outcome.bits().to_string()},
                  {"detail", v.detail}});
  }
  out["violations"] = std::move(vs);
  return out;
}

json rate_report_json(const rates::RateReport& r) {
  return {{"c3", r.c3}, {"omega_star_s2", r.omega_star_s2}, {"value_s2", r.value_s2}, {"e1_bound", r.e1_bound}};
}

std::string campaign_csv_header() {
  return "t,s,seed,N,runs,failures,max_tests,mean_tests,stage_max_1,stage_max_2,stage_max_3,stage_max_4,"
         "stage_max_5,ratio";
}

std::string campaign_csv_row(const CampaignReport& r) {
  char buf[64];
  std::ostringstream os;
  os << r.num_items << ',' << r.num_defectives << ',' << r.seed_used << ',' << r.num_tests << ',' << r.runs << ','
     << r.failure_total() << ',' << r.max_tests << ',';
  std::snprintf(buf, sizeof buf, "%.4f", r.mean_tests);
  os << buf;
  for (std::int64_t sm : r.stage_max) os << ',' << sm;
  std::snprintf(buf, sizeof buf, "%.6f", r.ratio);
  os << ',' << buf;
  return os.str();
}

void write_campaign_csv(const CampaignReport& r, std::ostream& os) {
  os << campaign_csv_header() << "\n" << campaign_csv_row(r) << "\n";
}

}  // namespace mgt::io
