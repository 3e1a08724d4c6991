#include "biherm/io/io.hpp"

#include "biherm/errors.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

namespace biherm {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& ptr, const std::string& what) {
  throw ParseError("at " + (ptr.empty() ? std::string("/") : ptr) + ": " + what);
}

void require_keys(const json& obj, const std::string& ptr, const std::set<std::string>& allowed) {
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) fail(ptr + "/" + key, "unknown field");
}

double number_at(const json& j, const std::string& ptr) {
  if (!j.is_number()) fail(ptr, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(ptr, "expected a finite number");
  return v;
}

Complex complex_at(const json& j, const std::string& ptr) {
  if (j.is_number()) return {number_at(j, ptr), 0.0};
  if (!j.is_object()) fail(ptr, "expected {\"re\": .., \"im\": ..} or a number");
  require_keys(j, ptr, {"re", "im"});
  if (!j.contains("re")) fail(ptr + "/re", "missing");
  const double re = number_at(j.at("re"), ptr + "/re");
  const double im = j.contains("im") ? number_at(j.at("im"), ptr + "/im") : 0.0;
  return {re, im};
}

const json& field(const json& obj, const std::string& ptr, const char* key) {
  if (!obj.contains(key)) fail(ptr + "/" + key, "missing required field");
  return obj.at(key);
}

json stats_json(const ResidualStats& s) {
  return json{{"max", s.max}, {"mean", s.mean}, {"q95", s.q95}, {"count", s.count}};
}

}  // namespace

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                     e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

HopfGroupData parse_group_data(const json& doc) {
  if (!doc.is_object()) fail("", "expected an object");
  require_keys(doc, "", {"alpha", "beta", "lambda", "m", "H", "arg_alpha", "arg_beta", "name",
                         "description"});
  HopfGroupData data;
  ContractionParams& c = data.contraction;
  c.alpha = complex_at(field(doc, "", "alpha"), "/alpha");
  c.beta = complex_at(field(doc, "", "beta"), "/beta");
  c.lambda = doc.contains("lambda") ? complex_at(doc.at("lambda"), "/lambda") : Complex{};
  if (doc.contains("m")) {
    const json& m = doc.at("m");
    if (!m.is_number_integer()) fail("/m", "expected an integer");
    if (m.get<long long>() < 1 || m.get<long long>() > 1000) fail("/m", "expected 1 <= m <= 1000");
    c.m = static_cast<int>(m.get<long long>());
  }
  if (doc.contains("arg_alpha")) c.arg_alpha = number_at(doc.at("arg_alpha"), "/arg_alpha");
  if (doc.contains("arg_beta")) c.arg_beta = number_at(doc.at("arg_beta"), "/arg_beta");
  if (doc.contains("H")) {
    const json& h = doc.at("H");
    if (!h.is_array()) fail("/H", "expected an array of matrices");
    for (std::size_t k = 0; k < h.size(); ++k) {
      const std::string ptr = "/H/" + std::to_string(k);
      if (!h[k].is_array() || h[k].size() != 4) fail(ptr, "expected 4 complex entries [h11, h12, h21, h22]");
      Mat2c mat;
      for (int e = 0; e < 4; ++e) mat(e / 2, e % 2) = complex_at(h[k][e], ptr + "/" + std::to_string(e));
      data.h_generators.push_back(mat);
    }
  }
  return data;
}

InoueGroupData parse_inoue_data(const json& doc) {
  if (!doc.is_object()) fail("", "expected an object");
  require_keys(doc, "", {"family", "generators", "name", "description"});
  InoueGroupData data;
  const json& fam = field(doc, "", "family");
  if (!fam.is_string()) fail("/family", "expected \"S_M\" or \"S+-\"");
  const auto tag = fam.get<std::string>();
  if (tag == "S_M") {
    data.family = InoueFamily::SM;
  } else if (tag == "S+-" || tag == "S+" || tag == "S-") {
    data.family = InoueFamily::SPlusMinus;
  } else {
    fail("/family", "expected \"S_M\" or \"S+-\"");
  }
  const json& gens = field(doc, "", "generators");
  if (!gens.is_array()) fail("/generators", "expected an array");
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const std::string ptr = "/generators/" + std::to_string(k);
    const json& g = gens[k];
    if (!g.is_object()) fail(ptr, "expected an object");
    require_keys(g, ptr, {"alpha", "a", "beta", "b", "c"});
    AffineGenerator out;
    if (g.contains("alpha")) out.alpha = number_at(g.at("alpha"), ptr + "/alpha");
    if (g.contains("a")) out.a = number_at(g.at("a"), ptr + "/a");
    if (g.contains("beta")) out.beta = complex_at(g.at("beta"), ptr + "/beta");
    if (g.contains("b")) out.b = complex_at(g.at("b"), ptr + "/b");
    if (g.contains("c")) out.c = complex_at(g.at("c"), ptr + "/c");
    data.generators.push_back(out);
  }
  return data;
}

json to_json(const Complex& z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const HopfGroupData& data) {
  const auto& c = data.contraction;
  json h = json::array();
  for (const auto& m : data.h_generators)
    h.push_back(json::array({to_json(m(0, 0)), to_json(m(0, 1)), to_json(m(1, 0)), to_json(m(1, 1))}));
  json out{{"alpha", to_json(c.alpha)}, {"beta", to_json(c.beta)}, {"lambda", to_json(c.lambda)},
           {"m", c.m}, {"H", h}};
  out["arg_alpha"] = c.branch_alpha();
  out["arg_beta"] = c.branch_beta();
  return out;
}

json to_json(const InoueGroupData& data) {
  json gens = json::array();
  for (const auto& g : data.generators)
    gens.push_back({{"alpha", g.alpha}, {"a", g.a}, {"beta", to_json(g.beta)}, {"b", to_json(g.b)},
                    {"c", to_json(g.c)}});
  return {{"family", family_tag(data.family)}, {"generators", gens}};
}

json to_json(const Classification& c) {
  json out{{"case", case_tag(c.label)}, {"group_order", c.group_order},
           {"diagnostics", c.diagnostics}};
  std::visit(
      [&](const auto& l) {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, CaseB>) {
          out["a"] = l.a;
          out["ell"] = l.ell;
        } else if constexpr (std::is_same_v<L, CaseC>) {
          out["a"] = l.a;
          out["ell"] = l.ell;
          out["k"] = l.k;
        } else if constexpr (std::is_same_v<L, NotRealType> || std::is_same_v<L, Invalid>) {
          out["reason"] = l.reason;
        }
      },
      c.label);
  return out;
}

json to_json(const Tolerances& t) {
  json out = json::object();
  for (Tier tier : kAllTiers) out[std::string(tier_name(tier))] = t.get(tier);
  return out;
}

json to_json(const ResidualStats& s) { return stats_json(s); }

json to_json(const OracleResult& r) {
  return {{"name", r.name}, {"value", r.value}, {"tolerance", r.tolerance}, {"pass", r.pass}};
}

json to_json(const DegreeVerdict& v) {
  return {{"excluded", v.excluded},
          {"verdict", v.verdict},
          {"samples", v.samples},
          {"weight_invariance", stats_json(v.invariance)},
          {"curvature_min_eigenvalue", v.curvature_min_eigenvalue},
          {"curvature_max_density", v.curvature_max_density},
          {"density_max_rel_error", v.density_max_rel_error},
          {"min_pairing_with_positive_forms", v.min_pairing}};
}

json conventions_json() {
  return {{"frame", "(x1, y1, x2, y2), z_k = x_k + i y_k"},
          {"orientation", "dx1^dy1^dx2^dy2 (complex orientation)"},
          {"ddc", "d^c = i(dbar - d), dd^c f = 2i d dbar f"},
          {"codifferential", "(delta F)^j = -(1/sqrt g) d_i(sqrt g F^{ij}); theta = J delta F, (J a)(X) = -a(JX)"},
          {"metric", "g = (Psi_-)^{1,1}(., J0 .)"},
          {"residual", "max|lhs - rhs| / max(1, max|lhs|, max|rhs|)"}};
}

std::string git_blob_sha1(const std::string& content) {
  const std::string blob = "blob " + std::to_string(content.size()) + std::string(1, '\0') + content;
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(blob.data(), blob.size(), digest, &len, EVP_sha1(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i)
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return os.str();
}

std::string config_hash(const json& effective_config) {
  return git_blob_sha1(effective_config.dump());
}

std::string dump_stable(const json& doc) { return doc.dump(2) + "\n"; }

json certificate_report_json(const CertificateConfig& config, const CertificateReport& report,
                             const ReportContext& ctx) {
  json identities = json::object();
  for (const auto& id : report.identities) {
    json entry = stats_json(id.stats);
    entry["pass"] = id.pass;
    entry["tier"] = std::string(tier_name(id.tier));
    entry["tolerance"] = report.tolerances.get(id.tier);
    identities[id.name] = entry;
  }
  json exclusions = json::array();
  for (const auto& e : report.exclusions)
    exclusions.push_back({{"index", e.index}, {"error", e.error}, {"message", e.message}});

  json out;
  out["schema_version"] = kReportSchema;
  out["command"] = "certify";
  out["params"] = to_json(config.group);
  out["case"] = to_json(report.classification);
  out["t"] = report.t;
  out["t_selected"] = report.t_selected;
  out["n"] = report.samples;
  out["seed"] = report.seed;
  out["ode_tol"] = ctx.ode_tol;
  out["fd_step"] = ctx.fd_step;
  out["tolerances"] = to_json(report.tolerances);
  out["conventions"] = conventions_json();
  out["config_hash"] = config_hash(ctx.effective_config);
  out["identities"] = identities;
  out["excluded_samples"] = report.exclusions.size();
  out["exclusions"] = exclusions;
  out["numerical_failures"] = report.numerical_failures;
  out["positivity"] = {{"min_margin", report.min_positivity_margin},
                       {"p_min", report.p_min},
                       {"p_max", report.p_max}};
  if (report.t_selected) {
    json sweep = json::array();
    for (const auto& r : report.sweep)
      sweep.push_back({{"t", r.t}, {"min_margin", r.min_margin}, {"min_margin_ratio", r.min_margin_ratio}});
    out["sweep"] = sweep;
  }
  out["pass"] = report.pass;
  return out;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "t,min_margin,argmin_sample_index,p_min,p_max\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%zu,%.17g,%.17g\n", r.t, r.min_margin,
                  r.argmin_sample_index, r.p_min, r.p_max);
    os << buf;
  }
}

std::vector<double> parse_t_grid(const std::string& spec) {
  double a = 0, b = 0, step = 0;
  char tail = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf%c", &a, &b, &step, &tail) != 3)
    throw ParseError("t-grid '" + spec + "': expected a:b:step");
  if (!(step > 0.0) || !(b >= a) || !std::isfinite(a) || !std::isfinite(b))
    throw ParseError("t-grid '" + spec + "': need step > 0 and b >= a");
  const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
  if (count > 100000) throw ParseError("t-grid '" + spec + "': too many points");
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(a + static_cast<double>(k) * step);
  return out;
}

}  // namespace biherm
