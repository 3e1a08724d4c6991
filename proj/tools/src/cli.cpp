#include "cli.hpp"

#include "biherm/certificate/certificate.hpp"
#include "biherm/errors.hpp"
#include "biherm/groups/sampling.hpp"
#include "biherm/io/io.hpp"
#include "biherm/oracles.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace biherm::cli {

using nlohmann::json;

namespace {

struct Flags {
  std::string config;
  std::string out;
  std::uint64_t seed = 7;
  std::size_t samples = 0;
  double t = 0.0;
  std::string t_grid;
  double ode_tol = 1e-10;
  double fd_step = 1e-3;
  std::vector<std::string> tol_tiers;
};

struct Given {
  bool seed = false, samples = false, t = false, t_grid = false, ode_tol = false, fd_step = false;
};

struct RunConfig {
  std::string command;
  json group_doc;
  std::optional<double> t;
  std::vector<double> t_grid;
  std::size_t samples = 0;
  std::uint64_t seed = 7;
  double ode_tol = 1e-10;
  double fd_step = 1e-3;
  Tolerances tolerances;
  std::string out;
};

std::size_t default_samples(const std::string& command) {
  if (command == "construct") return 4;
  if (command == "inoue") return 100;
  return 200;
}

double parse_real(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw ParseError(what + ": '" + text + "' is not a number");
  return v;
}

void apply_tolerances(Tolerances& tol, const json& doc) {
  if (!doc.is_object()) throw ParseError("at /tolerances: expected an object");
  for (const auto& [name, value] : doc.items()) {
    if (!value.is_number()) throw ParseError("at /tolerances/" + name + ": expected a number");
    tol.set(name, value.get<double>());
  }
}

std::uint64_t integer_field(const json& j, const char* key) {
  if (!j.is_number_unsigned()) throw ParseError(std::string("at /") + key + ": expected a non-negative integer");
  return j.get<std::uint64_t>();
}

double number_field(const json& j, const char* key) {
  if (!j.is_number()) throw ParseError(std::string("at /") + key + ": expected a number");
  return j.get<double>();
}

/// Defaults < config document < command-line flags.
RunConfig resolve(const std::string& command, const Flags& f, const Given& given) {
  RunConfig rc;
  rc.command = command;
  rc.samples = default_samples(command);
  rc.out = f.out;

  if (!f.config.empty()) {
    json doc = read_json_file(f.config);
    const char* wrapper = command == "inoue" ? "inoue" : "group";
    if (doc.is_object() && doc.contains(wrapper)) {
      static const std::set<std::string> allowed = {"group", "inoue", "seed", "samples", "t", "t_grid",
                                                    "ode_tol", "fd_step", "tolerances", "name",
                                                    "description"};
      for (const auto& [key, _] : doc.items())
        if (!allowed.count(key)) throw ParseError("at /" + key + ": unknown field");
      rc.group_doc = doc.at(wrapper);
      if (doc.contains("seed")) rc.seed = integer_field(doc.at("seed"), "seed");
      if (doc.contains("samples")) rc.samples = integer_field(doc.at("samples"), "samples");
      if (doc.contains("t")) rc.t = number_field(doc.at("t"), "t");
      if (doc.contains("t_grid")) {
        const json& g = doc.at("t_grid");
        if (g.is_string()) {
          rc.t_grid = parse_t_grid(g.get<std::string>());
        } else if (g.is_array()) {
          for (const auto& v : g) rc.t_grid.push_back(number_field(v, "t_grid"));
        } else {
          throw ParseError("at /t_grid: expected \"a:b:step\" or an array");
        }
      }
      if (doc.contains("ode_tol")) rc.ode_tol = number_field(doc.at("ode_tol"), "ode_tol");
      if (doc.contains("fd_step")) rc.fd_step = number_field(doc.at("fd_step"), "fd_step");
      if (doc.contains("tolerances")) apply_tolerances(rc.tolerances, doc.at("tolerances"));
    } else {
      rc.group_doc = std::move(doc);
    }
  }

  if (given.seed) rc.seed = f.seed;
  if (given.samples) rc.samples = f.samples;
  if (given.t) {
    rc.t = f.t;
    rc.t_grid.clear();
  }
  if (given.t_grid) {
    rc.t_grid = parse_t_grid(f.t_grid);
    rc.t.reset();
  }
  if (given.ode_tol) rc.ode_tol = f.ode_tol;
  if (given.fd_step) rc.fd_step = f.fd_step;
  for (const auto& item : f.tol_tiers) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("--tol-tier '" + item + "': expected NAME=X");
    rc.tolerances.set(item.substr(0, eq), parse_real(item.substr(eq + 1), "--tol-tier"));
  }

  if (rc.samples == 0) throw ParseError("samples must be positive");
  if (!(rc.ode_tol > 0.0)) throw ParseError("ode_tol must be positive");
  if (!(rc.fd_step > 0.0)) throw ParseError("fd_step must be positive");
  if (rc.t && !(*rc.t >= 0.0)) throw ParseError("t must be non-negative");
  return rc;
}

json effective_config(const RunConfig& rc, const json& params) {
  json out;
  out["command"] = rc.command;
  out["params"] = params;
  out["t"] = rc.t ? json(*rc.t) : json(nullptr);
  out["t_grid"] = rc.t_grid;
  out["samples"] = rc.samples;
  out["seed"] = rc.seed;
  out["ode_tol"] = rc.ode_tol;
  out["fd_step"] = rc.fd_step;
  out["tolerances"] = to_json(rc.tolerances);
  return out;
}

json header(const RunConfig& rc) {
  json out;
  out["schema_version"] = kReportSchema;
  out["command"] = rc.command;
  return out;
}

void emit(const RunConfig& rc, std::ostream& out, const std::string& text) {
  if (rc.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(rc.out, std::ios::binary);
  if (!file) throw ParseError("cannot write '" + rc.out + "'");
  file << text;
}

json matrix_json(const Mat4& m) {
  json rows = json::array();
  for (int i = 0; i < 4; ++i) rows.push_back({m(i, 0), m(i, 1), m(i, 2), m(i, 3)});
  return rows;
}

json vector_json(const Vec4& v) { return {v(0), v(1), v(2), v(3)}; }

HopfGroupData require_group(const RunConfig& rc) {
  if (rc.group_doc.is_null()) throw ParseError("--config is required");
  return parse_group_data(rc.group_doc);
}

std::string refusal_reason(const Classification& c) {
  if (const auto* nr = std::get_if<NotRealType>(&c.label)) return nr->reason;
  if (const auto* inv = std::get_if<Invalid>(&c.label)) return inv->reason;
  return {};
}

int cmd_classify(const RunConfig& rc, std::ostream& out) {
  const HopfGroupData group = require_group(rc);
  const Classification c = classify(group);
  json doc = header(rc);
  doc["params"] = to_json(group);
  const json label = to_json(c);
  for (const auto& [key, value] : label.items()) doc[key] = value;
  doc["config_hash"] = config_hash(effective_config(rc, doc["params"]));
  emit(rc, out, dump_stable(doc));
  return c.admits_construction() ? kPass : kRefused;
}

/// Classifies and refuses with exit 2 before any numerics.
std::optional<int> refuse_if_needed(const RunConfig& rc, const HopfGroupData& group, std::ostream& out,
                                    std::ostream& err) {
  const Classification c = classify(group);
  if (c.admits_construction()) return std::nullopt;
  json doc = header(rc);
  doc["params"] = to_json(group);
  doc["case"] = to_json(c);
  doc["refused"] = true;
  doc["reason"] = refusal_reason(c);
  doc["pass"] = false;
  emit(rc, out, dump_stable(doc));
  err << "refused: " << case_tag(c.label) << ": " << refusal_reason(c) << "\n";
  return kRefused;
}

std::vector<double> sweep_grid(const RunConfig& rc) {
  if (rc.t) return {*rc.t};
  return rc.t_grid.empty() ? default_t_grid() : rc.t_grid;
}

int cmd_sweep(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  const HopfGroupData group = require_group(rc);
  if (auto code = refuse_if_needed(rc, group, out, err)) return *code;
  const FlowSpec spec = FlowSpec::from_contraction(group.contraction);
  const auto samples = fundamental_annulus_sample(rc.seed, group.contraction, rc.samples);
  require_potential(spec, samples, default_thread_count());
  IntegratorOptions ode;
  ode.ode_tol = rc.ode_tol;
  const auto rows = positivity_sweep(spec, sweep_grid(rc), samples, ode);
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  emit(rc, out, csv.str());
  return kPass;
}

int cmd_construct(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  const HopfGroupData group = require_group(rc);
  if (auto code = refuse_if_needed(rc, group, out, err)) return *code;
  const FlowSpec spec = FlowSpec::from_contraction(group.contraction);
  const auto samples = fundamental_annulus_sample(rc.seed, group.contraction, rc.samples);
  require_potential(spec, samples, default_thread_count());
  IntegratorOptions ode;
  ode.ode_tol = rc.ode_tol;

  double t = 0.0;
  bool selected = false;
  if (rc.t) {
    t = *rc.t;
  } else {
    const auto rows = positivity_sweep(spec, sweep_grid(rc), samples, ode);
    t = select_deformation_time(rows);
    selected = true;
    if (!(t > 0.0)) throw NotPositive("no grid time keeps the (1,1)-part of Psi_- positive at every sample");
  }

  const DeformationPipeline pipeline(spec, t, ode);
  json points = json::array();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const StepSchedule schedule = pipeline.schedule_at(samples[i]);
    const StructureField field = make_structure_field(pipeline, schedule);
    const Vec4 x = samples[i].coords();
    const LocalData center = field(x);
    const double h = rc.fd_step * std::max(1.0, x.norm());
    const auto [theta_plus, theta_minus] = lee_forms(build_stencil(field, center, x, h, true));
    points.push_back({{"index", i},
                      {"x", vector_json(x)},
                      {"f", center.triple.f},
                      {"p", center.s.p},
                      {"positivity_margin", positivity_margin(center.triple)},
                      {"g", matrix_json(center.s.g.mat)},
                      {"J_plus", matrix_json(center.s.J_plus.mat)},
                      {"J_minus", matrix_json(center.s.J_minus.mat)},
                      {"theta_plus", vector_json(theta_plus.coeff)},
                      {"theta_minus", vector_json(theta_minus.coeff)}});
  }
  json doc = header(rc);
  doc["params"] = to_json(group);
  doc["case"] = to_json(classify(group));
  doc["t"] = t;
  doc["t_selected"] = selected;
  doc["n"] = rc.samples;
  doc["seed"] = rc.seed;
  doc["ode_tol"] = rc.ode_tol;
  doc["fd_step"] = rc.fd_step;
  doc["conventions"] = conventions_json();
  doc["config_hash"] = config_hash(effective_config(rc, doc["params"]));
  doc["samples"] = points;
  emit(rc, out, dump_stable(doc));
  return kPass;
}

int cmd_certify(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  CertificateConfig config;
  config.group = require_group(rc);
  if (auto code = refuse_if_needed(rc, config.group, out, err)) return *code;
  config.t = rc.t;
  if (!rc.t_grid.empty()) config.t_grid = rc.t_grid;
  config.samples = rc.samples;
  config.seed = rc.seed;
  config.ode.ode_tol = rc.ode_tol;
  config.fd.step = rc.fd_step;
  config.tolerances = rc.tolerances;

  const CertificateReport report = run_certificate(config);
  ReportContext ctx;
  ctx.effective_config = effective_config(rc, to_json(config.group));
  ctx.ode_tol = rc.ode_tol;
  ctx.fd_step = rc.fd_step;
  emit(rc, out, dump_stable(certificate_report_json(config, report, ctx)));
  if (!report.pass) err << "certificate failed: see the identities block\n";
  return report.pass ? kPass : kNumerical;
}

int cmd_inoue(const RunConfig& rc, std::ostream& out) {
  if (rc.group_doc.is_null()) throw ParseError("--config is required");
  const InoueGroupData data = parse_inoue_data(rc.group_doc);
  const DegreeVerdict verdict = degree_sign_report(data, rc.seed, rc.samples);
  json doc = header(rc);
  doc["params"] = to_json(data);
  doc["seed"] = rc.seed;
  doc["n"] = rc.samples;
  doc["weight_exponent"] = weight_exponent(data.family);
  doc["report"] = to_json(verdict);
  doc["config_hash"] = config_hash(effective_config(rc, doc["params"]));
  doc["pass"] = verdict.excluded;
  emit(rc, out, dump_stable(doc));
  return verdict.excluded ? kPass : kNumerical;
}

int cmd_oracle(const RunConfig& rc, std::ostream& out) {
  json doc = header(rc);
  doc["seed"] = rc.seed;
  json list = json::array();
  bool all = true;
  for (const auto& r : run_oracles(rc.seed)) {
    list.push_back(to_json(r));
    all = all && r.pass;
  }
  doc["oracles"] = list;
  doc["pass"] = all;
  emit(rc, out, dump_stable(doc));
  return all ? kPass : kNumerical;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return kParse;
    case ErrorKind::Classification: return kRefused;
    case ErrorKind::Analytic: return kAnalytic;
    case ErrorKind::Numerical: return kNumerical;
  }
  return kNumerical;
}

std::string hint(const Error& e) {
  if (dynamic_cast<const NotPlurisubharmonic*>(&e))
    return "the potential needs a small shear coefficient: reduce |lambda|";
  if (dynamic_cast<const NotPositive*>(&e)) return "choose a smaller --t or a finer --t-grid";
  if (dynamic_cast<const AmbiguousRadialTime*>(&e))
    return "the unit sphere is not transverse to the flow: reduce |lambda|";
  if (dynamic_cast<const StepSizeUnderflow*>(&e)) return "relax --ode-tol";
  return {};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Strongly bihermitian structures on Hopf surfaces: construction and certificates", "biherm"};
  app.require_subcommand(1);
  Flags flags;

  struct Sub {
    const char* name;
    const char* help;
    bool needs_config;
    bool time_flags;
  };
  const Sub subs[] = {
      {"classify", "Classify Hopf group data into cases a, b, c or refuse", true, false},
      {"construct", "Evaluate g, J+, J-, p and Lee forms at sample points", true, true},
      {"sweep", "Positivity margin of the deformation over a t-grid (CSV)", true, true},
      {"certify", "Full bihermitian certificate over seeded samples (JSON)", true, true},
      {"inoue", "Canonical-degree sign report for Inoue surfaces", true, false},
      {"oracle", "Closed-form oracle suite", false, false},
  };
  std::map<std::string, CLI::App*> apps;
  std::map<std::string, std::map<std::string, CLI::Option*>> opts;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    auto& o = opts[s.name];
    if (s.needs_config) o["config"] = sub->add_option("--config", flags.config, "Input JSON document")->required();
    o["out"] = sub->add_option("--out", flags.out, "Output path (default stdout)");
    o["seed"] = sub->add_option("--seed", flags.seed, "Sampling seed");
    if (std::string(s.name) != "classify" && std::string(s.name) != "oracle")
      o["samples"] = sub->add_option("--samples", flags.samples, "Number of samples");
    if (s.time_flags) {
      o["t"] = sub->add_option("--t", flags.t, "Deformation time");
      o["t_grid"] = sub->add_option("--t-grid", flags.t_grid, "Grid a:b:step for the sweep / selection");
      o["t"]->excludes(o["t_grid"]);
      o["ode_tol"] = sub->add_option("--ode-tol", flags.ode_tol, "Integrator tolerance");
      o["fd_step"] = sub->add_option("--fd-step", flags.fd_step, "Finite-difference step");
      o["tol"] = sub->add_option("--tol-tier", flags.tol_tiers, "Tolerance override NAME=X")
                     ->allow_extra_args(false);
    }
    apps[s.name] = sub;
  }

  std::vector<const char*> argv{"biherm"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? kPass : kParse;
  }

  std::string command;
  for (const auto& [name, sub] : apps)
    if (sub->parsed()) command = name;
  const auto& o = opts[command];
  const auto given_opt = [&](const char* key) {
    auto it = o.find(key);
    return it != o.end() && it->second->count() > 0;
  };
  Given given{given_opt("seed"), given_opt("samples"), given_opt("t"), given_opt("t_grid"),
              given_opt("ode_tol"), given_opt("fd_step")};

  RunConfig rc;
  try {
    rc = resolve(command, flags, given);
    if (command == "classify") return cmd_classify(rc, out);
    if (command == "construct") return cmd_construct(rc, out, err);
    if (command == "sweep") return cmd_sweep(rc, out, err);
    if (command == "certify") return cmd_certify(rc, out, err);
    if (command == "inoue") return cmd_inoue(rc, out);
    return cmd_oracle(rc, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    const std::string h = hint(e);
    if (!h.empty()) err << "hint: " << h << "\n";
    if (e.kind() != ErrorKind::Parse && !rc.command.empty()) {
      json doc = header(rc);
      doc["error"] = {{"kind", exit_code(e.kind())}, {"message", e.what()}};
      if (!h.empty()) doc["error"]["hint"] = h;
      doc["pass"] = false;
      try {
        emit(rc, out, dump_stable(doc));
      } catch (const Error&) {
      }
    }
    return exit_code(e.kind());
  }
}

}  // namespace biherm::cli
