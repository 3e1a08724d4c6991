#include "doctest.h"

#include "biherm/certificate/certificate.hpp"
#include "biherm/errors.hpp"
#include "biherm/groups/sampling.hpp"
#include "biherm/tensor/exterior.hpp"
#include "biherm/tensor/finite_difference.hpp"

#include <cmath>
#include <set>

using namespace biherm;

namespace {

const Complex I{0.0, 1.0};
const Endomorphism4 J0 = frame::standard_j();

HopfGroupData group(Complex alpha, Complex beta, Complex lambda = 0.0, int m = 1, std::vector<Mat2c> h = {}) {
  HopfGroupData d;
  d.contraction.alpha = alpha;
  d.contraction.beta = beta;
  d.contraction.lambda = lambda;
  d.contraction.m = m;
  d.h_generators = std::move(h);
  return d;
}

Mat2c diag(Complex a, Complex b) {
  Mat2c m = Mat2c::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

struct Evaluated {
  DeformationPipeline pipeline;
  StepSchedule schedule;
  StructureField field;
  LocalData center;
  RealPoint4 x;
};

Evaluated evaluate(const HopfGroupData& g, double t, std::uint64_t seed) {
  const FlowSpec spec = FlowSpec::from_contraction(g.contraction);
  DeformationPipeline pipe(spec, t);
  const RealPoint4 x = fundamental_annulus_sample(seed, g.contraction, 1)[0];
  StepSchedule sched = pipe.schedule_at(x);
  StructureField field = make_structure_field(pipe, sched);
  LocalData center = field(x.coords());
  return {pipe, sched, field, center, x};
}

double worst(const ResidualMap& m) {
  double w = 0.0;
  for (const auto& [_, v] : m) w = std::max(w, v);
  return w;
}

}  // namespace

TEST_CASE("identity table is ordered and unique") {
  const auto& table = identity_table();
  CHECK(table.size() >= 10);
  std::set<std::string> names;
  for (const auto& id : table) names.insert(id.name);
  CHECK(names.size() == table.size());
}

TEST_CASE("boundary structure J- = J0 has p = 1") {
  const BihermitianSample s = assemble_from_metric(Metric4{}, J0, J0);
  CHECK(s.p == doctest::Approx(1.0));
  const ResidualMap r = check_pointwise_algebra(s);
  CHECK(r.at("anticommutator") < 1e-15);
  CHECK(r.at("acs_minus_square") < 1e-15);
}

TEST_CASE("assembled structure satisfies the pointwise algebra") {
  for (const auto& g : {group(0.5, 0.6), group(0.6, 0.6, 0.1, 1, {-Mat2c::Identity()}), group(0.5, 0.5)}) {
    const Evaluated e = evaluate(g, 0.3, 11);
    const BihermitianSample& s = e.center.s;
    CHECK(std::abs(s.p) < 1.0);
    CHECK(min_eigenvalue(s.g) > 0.0);
    CHECK(worst(check_pointwise_algebra(s)) < 1e-9);
    CHECK(worst(check_criterion(e.center.triple, s)) < 1e-7);
    // J+ = J0 and J- differs from it
    CHECK((s.J_plus.mat - J0.mat).cwiseAbs().maxCoeff() == 0.0);
    CHECK((s.J_minus.mat - J0.mat).cwiseAbs().maxCoeff() > 1e-3);
  }
}

TEST_CASE("case (a): J- is the pullback of J0 by the flow") {
  const Evaluated e = evaluate(group(0.5, 0.5), 0.2, 3);
  const Mat4& d = e.center.state.D;
  const Mat4 expected = d.inverse() * J0.mat * d;
  CHECK((e.center.s.J_minus.mat - expected).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("perturbing Psi- is detected") {
  const Evaluated e = evaluate(group(0.5, 0.6), 0.3, 11);
  QuotientTriple bad = e.center.triple;
  bad.psi_minus += 1e-3 * frame::omega0();
  const BihermitianSample s = assemble_structure(bad, e.x, 0.3);
  const ResidualMap crit = check_criterion(bad, s);
  CHECK(crit.at("criterion_square") > 1e-4);
  CHECK(crit.at("reconstruction") > 1e-4);
  CHECK(check_pointwise_algebra(s).at("acs_minus_square") > 1e-4);
}

TEST_CASE("positivity guard") {
  const Evaluated e = evaluate(group(0.5, 0.6), 0.3, 11);
  QuotientTriple flat = e.center.triple;
  flat.psi_minus = flat.psi_plus;
  CHECK_THROWS_AS(assemble_structure(flat, e.x, 0.0), NotPositive);
}

TEST_CASE("Lee forms: flat and conformally rescaled") {
  const auto flat_g = [](const Vec4&) { return Metric4{}; };
  const auto j0 = [](const Vec4&) { return J0; };
  const Vec4 x(0.3, -0.2, 0.6, 0.1);
  CHECK(lee_form(flat_g, j0, x).max_abs() < 1e-10);

  // g = e^phi Id: theta = d phi
  const auto phi = [](const Vec4& y) { return 0.3 * y[0] * y[1] + std::sin(y[2]) - 0.2 * y[3] * y[3]; };
  const auto conformal = [&](const Vec4& y) { return Metric4{std::exp(phi(y)) * Mat4::Identity()}; };
  const OneForm theta = lee_form(conformal, j0, x);
  const Vec4 dphi(0.3 * x[1], 0.3 * x[0], std::cos(x[2]), -0.4 * x[3]);
  CHECK((theta.coeff - dphi).cwiseAbs().maxCoeff() < 1e-8);

  // conformal covariance on top of a non-flat hermitian metric
  const auto base = [](const Vec4& y) {
    Mat4 g = Mat4::Identity();
    g(0, 0) = g(1, 1) = 1.0 + 0.3 * y[2] * y[2];
    return Metric4{g};
  };
  const auto scaled = [&](const Vec4& y) { return Metric4{std::exp(phi(y)) * base(y).mat}; };
  const OneForm shift = lee_form(scaled, j0, x) - lee_form(base, j0, x);
  CHECK((shift.coeff - dphi).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("differential identities at a case (b) sample") {
  const Evaluated e = evaluate(group(0.5, 0.6), 0.5, 17);
  const DifferentialResult r = check_differential_identities(e.field, e.center, e.x.coords());
  const Tolerances tol;
  for (const auto& id : identity_table()) {
    const auto it = r.residuals.find(id.name);
    if (it == r.residuals.end()) continue;
    INFO(id.name);
    CHECK(it->second < tol.get(id.tier));
  }
  CHECK(r.residuals.count("lee_scalar") == 1);
  CHECK(r.residuals.count("nijenhuis_minus") == 1);
}

TEST_CASE("equivariance and the constraint-violation detector") {
  const HopfGroupData c = group(0.6, 0.6, 0.1, 1, {-Mat2c::Identity()});
  const Evaluated e = evaluate(c, 0.3, 5);
  const ResidualMap good = check_gamma_equivariance(e.pipeline, c.contraction, equivariance_elements(c), e.x, e.center.s);
  CHECK(good.at("equivariance_metric") < 1e-7);
  CHECK(good.at("equivariance_acs") < 1e-7);

  // eps = i with m = 1: eps^(m+1) != 1; classify would refuse this input
  const std::vector<GroupElement> broken{GroupElement::unitary(diag(I, -I))};
  const ResidualMap bad = check_gamma_equivariance(e.pipeline, c.contraction, broken, e.x, e.center.s);
  CHECK(std::max(bad.at("equivariance_metric"), bad.at("equivariance_acs")) > 1e-2);
}

TEST_CASE("run_certificate: small runs pass and are thread independent") {
  CertificateConfig cfg;
  cfg.group = group(0.5, 0.6);
  cfg.samples = 6;
  cfg.threads = 1;
  const CertificateReport one = run_certificate(cfg);
  CHECK(one.pass);
  CHECK(one.t_selected);
  CHECK(one.t > 0.0);
  CHECK(one.identities.size() >= 10);
  CHECK(one.p_max < 1.0);
  cfg.threads = 3;
  const CertificateReport three = run_certificate(cfg);
  REQUIRE(one.identities.size() == three.identities.size());
  for (std::size_t i = 0; i < one.identities.size(); ++i) {
    CHECK(one.identities[i].stats.max == three.identities[i].stats.max);
    CHECK(one.identities[i].stats.mean == three.identities[i].stats.mean);
  }
}

TEST_CASE("run_certificate refusals") {
  CertificateConfig cfg;
  cfg.samples = 4;
  cfg.group = group(0.5 * I, 0.6);
  CHECK_THROWS_AS(run_certificate(cfg), InvalidGroupData);
  cfg.group = group(0.6, 0.6, 100.0, 1, {-Mat2c::Identity()});
  CHECK_THROWS_AS(run_certificate(cfg), NotPlurisubharmonic);
  cfg.group = group(0.5, 0.6);
  cfg.t_grid = {20.0};
  CHECK_THROWS_AS(run_certificate(cfg), NotPositive);
}

TEST_CASE("explicit t skips the sweep") {
  CertificateConfig cfg;
  cfg.group = group(0.5, 0.5, 0.0, 1, {-Mat2c::Identity()});
  cfg.samples = 3;
  cfg.t = 0.1;
  const CertificateReport r = run_certificate(cfg);
  CHECK_FALSE(r.t_selected);
  CHECK(r.t == 0.1);
  CHECK(r.sweep.empty());
  CHECK(r.pass);
}
