#pragma once

#include <nlohmann/json_fwd.hpp>

#include <iosfwd>
#include <string>

#include "mgt/audit.hpp"
#include "mgt/harness.hpp"
#include "mgt/model.hpp"
#include "mgt/rates.hpp"

namespace mgt::io {

// Text matrix format:
//   GTMATRIX v1 N=<int> t=<int> s=<int> k=<int> seed=<u64>
// followed by N rows of t characters from {0,1}. Round-trips losslessly;
// readers reject files whose column weights disagree with k.
void write_matrix(const PoolMatrix& x, std::ostream& os);
PoolMatrix read_matrix(std::istream& is);
void write_matrix_file(const PoolMatrix& x, const std::string& path);
PoolMatrix read_matrix_file(const std::string& path);

// {"stages":[{"tests":[[v,...],...],"outcomes":[0|1,...]},...]}, 1-based.
nlohmann::json transcript_json(const Transcript& t);

nlohmann::json decode_result_json(const DecodeResult& r);
nlohmann::json audit_report_json(const AuditReport& r);
nlohmann::json rate_report_json(const rates::RateReport& r);

std::string campaign_csv_header();
std::string campaign_csv_row(const CampaignReport& r);
void write_campaign_csv(const CampaignReport& r, std::ostream& os);

}  // namespace mgt::io
