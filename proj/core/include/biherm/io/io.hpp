#pragma once

// JSON documents and reports.
//
// Hopf group data:
//   {"alpha": {"re": .., "im": ..}, "beta": {..}, "lambda": {..}, "m": int,
//    "H": [[h11, h12, h21, h22], ...], "arg_alpha": real, "arg_beta": real}
// complex entries are {"re", "im"} objects or plain numbers; lambda, m, H and
// the branch arguments are optional.
//
// Inoue data:
//   {"family": "S_M" | "S+-",
//    "generators": [{"alpha": real, "a": real, "beta": c, "b": c, "c": c}, ...]}

#include "biherm/certificate/certificate.hpp"
#include "biherm/groups/hopf_group.hpp"
#include "biherm/inoue/inoue.hpp"
#include "biherm/oracles.hpp"

#include "json.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace biherm {

inline constexpr const char* kReportSchema = "biherm.report/1";

/// Throws ParseError naming the offending line/column or JSON pointer.
nlohmann::json parse_json_text(const std::string& text);
nlohmann::json read_json_file(const std::string& path);

HopfGroupData parse_group_data(const nlohmann::json& doc);
InoueGroupData parse_inoue_data(const nlohmann::json& doc);

nlohmann::json to_json(const Complex& z);
nlohmann::json to_json(const HopfGroupData& data);
nlohmann::json to_json(const InoueGroupData& data);
nlohmann::json to_json(const Classification& c);
nlohmann::json to_json(const Tolerances& t);
nlohmann::json to_json(const ResidualStats& s);
nlohmann::json to_json(const OracleResult& r);
nlohmann::json to_json(const DegreeVerdict& v);

/// Orientation, dd^c normalization, codifferential sign, residual norm.
nlohmann::json conventions_json();

/// Git-style blob SHA-1 of the canonical dump of the document.
std::string config_hash(const nlohmann::json& effective_config);
std::string git_blob_sha1(const std::string& content);

struct ReportContext {
  nlohmann::json effective_config;  // hashed into config_hash
  double ode_tol = 0.0;
  double fd_step = 0.0;
};

nlohmann::json certificate_report_json(const CertificateConfig& config, const CertificateReport& report,
                                       const ReportContext& ctx);

/// Columns t, min_margin, argmin_sample_index, p_min, p_max (sorted by t).
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// "a:b:step" -> a, a + step, ..., <= b (inclusive within 1e-9 step).
std::vector<double> parse_t_grid(const std::string& spec);

/// Stable text for a JSON document (2-space indent, trailing newline).
std::string dump_stable(const nlohmann::json& doc);

}  // namespace biherm
