#include "biherm/certificate/certificate.hpp"

#include "biherm/errors.hpp"
#include "biherm/groups/sampling.hpp"
#include "biherm/parallel.hpp"
#include "biherm/potentials/potential.hpp"
#include "biherm/tensor/exterior.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

namespace biherm {

namespace {

// "NotPositive: ..." -> "NotPositive"
std::string error_class(const std::exception& e) {
  const std::string what = e.what();
  const auto colon = what.find(':');
  return colon == std::string::npos ? std::string("Error") : what.substr(0, colon);
}

void merge(ResidualMap& into, const ResidualMap& from) {
  for (const auto& [k, v] : from) into[k] = v;
}

}  // namespace

const std::vector<IdentitySpec>& identity_table() {
  static const std::vector<IdentitySpec> table = {
      {"acs_plus_square", Tier::Algebraic},
      {"acs_minus_square", Tier::Algebraic},
      {"metric_compat_plus", Tier::Algebraic},
      {"metric_compat_minus", Tier::Algebraic},
      {"anticommutator", Tier::Algebraic},
      {"same_orientation", Tier::Algebraic},
      {"f_exchange_plus", Tier::Algebraic},
      {"f_exchange_minus", Tier::Algebraic},
      {"phi_square", Tier::Algebraic},
      {"psi_square", Tier::Algebraic},
      {"phi_psi_orthogonal", Tier::Algebraic},
      {"psi_cross", Tier::Algebraic},
      {"psi_minus_invariant_part", Tier::Algebraic},
      {"selfduality", Tier::Algebraic},
      {"criterion_square", Tier::Quotient},
      {"criterion_orthogonal", Tier::Quotient},
      {"criterion_cross", Tier::Quotient},
      {"reconstruction", Tier::Quotient},
      {"flow_symplectic", Tier::Quotient},
      {"potential_conservation", Tier::Quotient},
      {"angle_function", Tier::Angle},
      {"quotient_d_phi", Tier::FirstOrder},
      {"quotient_d_psi_plus", Tier::FirstOrder},
      {"quotient_d_psi_minus", Tier::FirstOrder},
      {"lee_consistency", Tier::FirstOrder},
      {"nijenhuis_plus", Tier::Integrability},
      {"nijenhuis_minus", Tier::Integrability},
      {"type_12", Tier::Integrability},
      {"poisson_identity", Tier::SecondOrder},
      {"lee_sum_selfdual", Tier::SecondOrder},
      {"lee_sum_closed", Tier::SecondOrder},
      {"lee_scalar", Tier::LeeScalar},
      {"equivariance_metric", Tier::Equivariance},
      {"equivariance_acs", Tier::Equivariance},
  };
  return table;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("BIHERM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> default_t_grid() {
  std::vector<double> grid;
  for (int k = 1; k <= 10; ++k) grid.push_back(0.05 * k);
  return grid;
}

StructureField make_structure_field(const DeformationPipeline& pipeline, const StepSchedule& schedule) {
  return [pipeline, schedule](const Vec4& y) {
    const RealPoint4 point(y);
    auto pt = pipeline.evaluate(point, schedule);
    LocalData out;
    out.s = assemble_structure(pt.triple, point, pipeline.t());
    out.triple = std::move(pt.triple);
    out.state = pt.state;
    return out;
  };
}

std::vector<GroupElement> equivariance_elements(const HopfGroupData& data) {
  std::vector<GroupElement> out{GroupElement::contraction(1)};
  for (const auto& h : data.h_generators) out.push_back(GroupElement::unitary(h));
  return out;
}

ResidualMap check_gamma_equivariance(const DeformationPipeline& pipeline, const ContractionParams& c,
                                     const std::vector<GroupElement>& elements, const RealPoint4& x,
                                     const BihermitianSample& at_x) {
  double metric = 0.0, acs = 0.0;
  for (const auto& el : elements) {
    const RealPoint4 y = el.apply(c, x);
    const auto pt = pipeline.evaluate(y);
    const BihermitianSample at_y = assemble_structure(pt.triple, y, pipeline.t());
    const Mat4 a = el.jacobian(c, x);
    metric = std::max(metric, scaled_residual(Mat4(a.transpose() * at_y.g.mat * a), at_x.g.mat));
    acs = std::max(acs, scaled_residual(Mat4(a.inverse() * at_y.J_minus.mat * a), at_x.J_minus.mat));
  }
  return {{"equivariance_metric", metric}, {"equivariance_acs", acs}};
}

SampleOutcome certify_sample(const DeformationPipeline& pipeline, const HopfGroupData& group,
                             const std::vector<GroupElement>& elements, const RealPoint4& x,
                             std::size_t index, const DifferentialOptions& fd, bool equivariance) {
  SampleOutcome o;
  try {
    const StepSchedule schedule = pipeline.schedule_at(x);
    const StructureField field = make_structure_field(pipeline, schedule);
    const LocalData center = field(x.coords());
    o.p = center.s.p;
    o.margin = positivity_margin(center.triple);

    ResidualMap r = check_pointwise_algebra(center.s);
    merge(r, check_criterion(center.triple, center.s));
    const Mat4& d = center.state.D;
    r["flow_symplectic"] =
        scaled_residual(Mat4(d.transpose() * frame::phi0().coeff() * d), frame::phi0().coeff());
    const double f_t = potential_jet(pipeline.spec(), center.state.x_t).value();
    r["potential_conservation"] = std::abs(f_t - center.triple.f) / center.triple.f;
    r["angle_function"] = std::abs(center.s.p);

    merge(r, check_differential_identities(field, center, x.coords(), fd).residuals);
    if (equivariance)
      merge(r, check_gamma_equivariance(pipeline, group.contraction, elements, x, center.s));
    o.residuals = std::move(r);
    o.included = true;
  } catch (const NotPositive& e) {
    o.exclusion = Exclusion{index, error_class(e), e.what()};
  } catch (const std::exception& e) {
    o.exclusion = Exclusion{index, error_class(e), e.what()};
    o.numerical_failure = true;
  }
  return o;
}

void require_potential(const FlowSpec& spec, std::span<const RealPoint4> samples, unsigned threads) {
  std::vector<std::string> errors(samples.size());
  std::vector<int> kind(samples.size(), -1);
  parallel_for(samples.size(), threads, [&](std::size_t i) {
    try {
      potential(spec, samples[i]);
    } catch (const Error& e) {
      const std::string what = e.what();
      const auto colon = what.find(": ");
      errors[i] = colon == std::string::npos ? what : what.substr(colon + 2);
      kind[i] = static_cast<int>(e.kind());
    }
  });
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (kind[i] < 0) continue;
    if (kind[i] == static_cast<int>(ErrorKind::Analytic))
      throw NotPlurisubharmonic("sample " + std::to_string(i) + ": " + errors[i]);
    throw AmbiguousRadialTime("sample " + std::to_string(i) + ": " + errors[i]);
  }
}

CertificateReport run_certificate(const CertificateConfig& config) {
  CertificateReport report;
  report.classification = classify(config.group);
  if (!report.classification.admits_construction()) {
    const auto& label = report.classification.label;
    std::string reason = case_tag(label);
    if (const auto* nr = std::get_if<NotRealType>(&label)) reason += ": " + nr->reason;
    if (const auto* inv = std::get_if<Invalid>(&label)) reason += ": " + inv->reason;
    throw InvalidGroupData(reason);
  }
  report.samples = config.samples;
  report.seed = config.seed;
  report.tolerances = config.tolerances;

  const ContractionParams& c = config.group.contraction;
  const FlowSpec spec = FlowSpec::from_contraction(c);
  const auto samples = fundamental_annulus_sample(config.seed, c, config.samples);
  const unsigned threads = config.threads ? config.threads : default_thread_count();

  // The construction needs a Kahler potential: refuse before flowing.
  require_potential(spec, samples, threads);

  if (config.t) {
    report.t = *config.t;
  } else {
    report.sweep = positivity_sweep(spec, config.t_grid, samples, config.ode);
    report.t = select_deformation_time(report.sweep);
    report.t_selected = true;
    if (!(report.t > 0.0))
      throw NotPositive("no grid time keeps the (1,1)-part of Psi_- positive at every sample");
  }

  const DeformationPipeline pipeline(spec, report.t, config.ode);
  const auto elements = equivariance_elements(config.group);
  std::vector<SampleOutcome> outcomes(samples.size());
  parallel_for(samples.size(), threads, [&](std::size_t i) {
    outcomes[i] = certify_sample(pipeline, config.group, elements, samples[i], i, config.fd,
                                 config.equivariance);
  });

  report.min_positivity_margin = std::numeric_limits<double>::infinity();
  report.p_min = std::numeric_limits<double>::infinity();
  report.p_max = -std::numeric_limits<double>::infinity();
  std::size_t included = 0;
  for (const auto& o : outcomes) {
    if (o.exclusion) report.exclusions.push_back(*o.exclusion);
    if (o.numerical_failure) ++report.numerical_failures;
    if (!o.included) continue;
    ++included;
    report.min_positivity_margin = std::min(report.min_positivity_margin, o.margin);
    report.p_min = std::min(report.p_min, o.p);
    report.p_max = std::max(report.p_max, o.p);
  }

  bool all_pass = included > 0 && report.numerical_failures == 0;
  for (const auto& id : identity_table()) {
    std::vector<double> values;
    for (const auto& o : outcomes) {
      if (!o.included) continue;
      if (auto it = o.residuals.find(id.name); it != o.residuals.end()) values.push_back(it->second);
    }
    if (values.empty()) continue;
    IdentityResult res;
    res.name = id.name;
    res.tier = id.tier;
    res.stats = ResidualStats::from(values);
    res.pass = res.stats.max < config.tolerances.get(id.tier);
    all_pass = all_pass && res.pass;
    report.identities.push_back(std::move(res));
  }
  report.pass = all_pass;
  return report;
}

}  // namespace biherm
