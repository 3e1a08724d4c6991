#include "doctest.h"

#include "biherm/errors.hpp"
#include "biherm/groups/hopf_group.hpp"
#include "biherm/groups/sampling.hpp"
#include "biherm/potentials/potential.hpp"

#include <cmath>

using namespace biherm;

namespace {

const Complex I{0.0, 1.0};

Mat2c diag(Complex a, Complex b) {
  Mat2c m = Mat2c::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

Complex root_of_unity(int ell) { return std::polar(1.0, 2.0 * M_PI / ell); }

HopfGroupData group(Complex alpha, Complex beta, Complex lambda = 0.0, int m = 1,
                    std::vector<Mat2c> h = {}) {
  HopfGroupData d;
  d.contraction.alpha = alpha;
  d.contraction.beta = beta;
  d.contraction.lambda = lambda;
  d.contraction.m = m;
  d.h_generators = std::move(h);
  return d;
}

}  // namespace

TEST_CASE("group closure") {
  CHECK(group_closure({-Mat2c::Identity()}).size() == 2);
  const Complex eps = root_of_unity(3);
  const auto c3 = group_closure({diag(eps, 1.0 / eps)});
  CHECK(c3.size() == 3);
  CHECK(element_order(diag(eps, 1.0 / eps)) == 3);
  CHECK(group_closure({}).size() == 1);
  CHECK_THROWS_AS(group_closure({diag(std::exp(I), std::exp(-I))}), NotFinite);
  // quaternion group
  Mat2c jq;
  jq << 0.0, 1.0, -1.0, 0.0;
  CHECK(group_closure({diag(I, -I), jq}).size() == 8);
}

TEST_CASE("real type check") {
  CHECK(real_type_check(group({0.3, 0.4}, {0.3, -0.4}, 0.0, 1, {-Mat2c::Identity()})).real_type);
  const auto det = real_type_check(group(0.5, 0.7, 0.0, 1, {diag(I, I)}));
  CHECK_FALSE(det.real_type);
  CHECK_FALSE(det.special_unitary);
  CHECK(det.product_positive);
  const auto imag = real_type_check(group(0.5 * I, 0.6));
  CHECK_FALSE(imag.real_type);
  CHECK_FALSE(imag.product_positive);
}

TEST_CASE("classification of the three cases") {
  const Complex eps = root_of_unity(3);
  const auto b = classify(group(0.5, 0.6, 0.0, 1, {diag(eps, 1.0 / eps)}));
  REQUIRE(std::holds_alternative<CaseB>(b.label));
  CHECK(std::get<CaseB>(b.label).a == doctest::Approx(0.3));
  CHECK(std::get<CaseB>(b.label).ell == 3);
  CHECK(case_tag(b.label) == "B");

  const auto c = classify(group(0.6, 0.6, 0.1, 1, {-Mat2c::Identity()}));
  REQUIRE(std::holds_alternative<CaseC>(c.label));
  CHECK(std::get<CaseC>(c.label).ell == 2);
  CHECK(std::get<CaseC>(c.label).k == 1);

  const auto a = classify(group({0.3, 0.4}, {0.3, -0.4}, 0.0, 1, {-Mat2c::Identity()}));
  CHECK(std::holds_alternative<CaseA>(a.label));
  CHECK(a.admits_construction());

  // |alpha|^2 = 0.2916 < a = 0.324 < |alpha| holds: accepted.
  const auto twin = classify(group(0.54, 0.6, 0.0, 1, {diag(eps, 1.0 / eps)}));
  CHECK(std::holds_alternative<CaseB>(twin.label));
}

TEST_CASE("classification refusals") {
  CHECK(std::get<NotRealType>(classify(group(0.5, 0.7, 0.0, 1, {diag(I, I)})).label).reason ==
        "H not in SU(2)");
  CHECK(std::holds_alternative<NotRealType>(classify(group(0.5 * I, 0.6)).label));
  // m = 1 with H of order 4
  const auto bad_m = classify(group(0.6, 0.6, 0.1, 1, {diag(I, -I)}));
  CHECK(std::holds_alternative<Invalid>(bad_m.label));
  CHECK_FALSE(bad_m.admits_construction());
  // resonance lambda (alpha - beta^m) != 0
  CHECK(std::holds_alternative<Invalid>(classify(group(0.5, 0.6, 0.1, 1)).label));
  CHECK(std::holds_alternative<Invalid>(classify(group(0.65, 0.6)).label));
  CHECK(std::holds_alternative<Invalid>(classify(group(0.5, 1.2)).label));
  // infinite H never throws out of classify
  CHECK(std::holds_alternative<Invalid>(classify(group(0.5, 0.5, 0.0, 1, {diag(std::exp(I), std::exp(-I))})).label));
}

TEST_CASE("group action and Jacobians") {
  ContractionParams b;
  b.alpha = 0.5;
  b.beta = 0.6;
  const auto g0 = GroupElement::contraction();
  const RealPoint4 img = g0.apply(b, RealPoint4::from_complex(1.0, 0.0));
  CHECK(std::abs(img.z1() - 0.5) < 1e-15);
  CHECK(std::abs(img.z2()) < 1e-15);
  const Mat2c jac = g0.holomorphic_jacobian(b, RealPoint4::from_complex(1.0, 0.0));
  CHECK(std::abs(jac(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(jac(1, 1) - 0.6) < 1e-15);
  CHECK(std::abs(g0.canonical_multiplier(b, RealPoint4(0.3, 0.1, 0.2, 0.5)) - 0.3) < 1e-15);

  ContractionParams c;
  c.alpha = 0.6;
  c.beta = 0.6;
  c.lambda = 0.1;
  c.m = 1;
  const RealPoint4 ci = g0.apply(c, RealPoint4::from_complex(0.0, 1.0));
  CHECK(std::abs(ci.z1() - 0.1) < 1e-15);
  CHECK(std::abs(ci.z2() - 0.6) < 1e-15);

  const Mat2c h = diag(I, -I);
  CHECK(std::abs(GroupElement::unitary(h).canonical_multiplier(c, RealPoint4(1, 0, 0, 0)) - 1.0) < 1e-15);
  // gamma0^-1 undoes gamma0
  const RealPoint4 z(0.3, -0.2, 0.4, 0.1);
  const RealPoint4 back = (GroupElement::contraction(-1) * g0).apply(c, z);
  CHECK((back.coords() - z.coords()).cwiseAbs().maxCoeff() < 1e-14);
  // real Jacobian matches finite differences of the action
  const Mat4 jr = g0.jacobian(c, z);
  for (int i = 0; i < 4; ++i) {
    Vec4 dp = z.coords(), dm = z.coords();
    dp[i] += 1e-6;
    dm[i] -= 1e-6;
    const Vec4 col = (g0.apply(c, RealPoint4(dp)).coords() - g0.apply(c, RealPoint4(dm)).coords()) / 2e-6;
    CHECK((col - jr.col(i)).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("commutation with the contraction") {
  ContractionParams c;
  c.alpha = 0.6;
  c.beta = 0.6;
  c.lambda = 0.1;
  c.m = 1;
  CHECK(commutes_with_contraction(c, -Mat2c::Identity()));
  CHECK_FALSE(commutes_with_contraction(c, diag(I, -I)));
}

TEST_CASE("fundamental annulus sampling") {
  ContractionParams a;
  a.alpha = 0.5;
  a.beta = 0.5;
  const auto one = fundamental_annulus_sample(3, a, 1);
  REQUIRE(one.size() == 1);
  const double r = std::log(one[0].norm()) / std::log(0.5);
  CHECK(r >= 0.0);
  CHECK(r < 1.0);

  const auto pts = fundamental_annulus_sample(7, a, 200);
  for (const auto& p : pts) {
    CHECK(p.norm() <= 1.0 + 1e-12);
    CHECK(p.norm() > 0.5);
  }
  CHECK(fundamental_annulus_sample(7, a, 200)[17].coords() == pts[17].coords());

  ContractionParams b;
  b.alpha = 0.5;
  b.beta = 0.6;
  const FlowSpec spec = FlowSpec::from_contraction(b);
  for (const auto& p : fundamental_annulus_sample(5, b, 20)) {
    const double r0 = radial_time(spec, p).value();
    CHECK(r0 >= -1e-12);
    CHECK(r0 < 1.0);
    const double r1 = radial_time(spec, GroupElement::contraction().apply(b, p)).value();
    CHECK(r1 - r0 == doctest::Approx(1.0).epsilon(1e-12));
  }
}
