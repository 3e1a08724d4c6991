#include "doctest.h"

#include "biherm/errors.hpp"
#include "biherm/groups/sampling.hpp"
#include "biherm/potentials/potential.hpp"
#include "biherm/tensor/exterior.hpp"

#include <cmath>
#include <random>

using namespace biherm;

namespace {

const Complex I{0.0, 1.0};

ContractionParams params(Complex alpha, Complex beta, Complex lambda = 0.0, int m = 1) {
  ContractionParams c;
  c.alpha = alpha;
  c.beta = beta;
  c.lambda = lambda;
  c.m = m;
  return c;
}

Mat2c diag(Complex a, Complex b) {
  Mat2c m = Mat2c::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

std::vector<RealPoint4> sphere_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<RealPoint4> out;
  for (std::size_t i = 0; i < n; ++i) {
    Vec4 v(g(rng), g(rng), g(rng), g(rng));
    out.emplace_back(v / v.norm());
  }
  return out;
}

}  // namespace

TEST_CASE("one-parameter groups") {
  const FlowSpec diag_spec = FlowSpec::diagonal(0.5, 0.6);
  const RealPoint4 one = flow_apply(diag_spec, 1.0, RealPoint4::from_complex(1.0, 1.0));
  CHECK(std::abs(one.z1() - 0.5) < 1e-15);
  CHECK(std::abs(one.z2() - 0.6) < 1e-15);

  const FlowSpec shear = FlowSpec::from_contraction(params(0.6, 0.6, 0.1, 1));
  CHECK(shear.is_shear());
  const RealPoint4 s1 = flow_apply(shear, 1.0, RealPoint4::from_complex(0.0, 1.0));
  CHECK(std::abs(s1.z1() - 0.1) < 1e-15);
  CHECK(std::abs(s1.z2() - 0.6) < 1e-15);

  const RealPoint4 z(0.3, -0.1, 0.7, 0.2);
  CHECK(flow_apply(shear, 0.0, z).coords() == z.coords());
  CHECK(flow_apply(diag_spec, 0.0, z).coords() == z.coords());
  CHECK(diag_spec.multiplier() == doctest::Approx(0.3));
  CHECK(shear.multiplier() == doctest::Approx(0.36));
}

TEST_CASE("radial time closed forms") {
  const FlowSpec equal = FlowSpec::diagonal(0.5, 0.5);
  CHECK(radial_time(equal, RealPoint4(2, 0, 0, 0)).value() == doctest::Approx(-1.0).epsilon(1e-13));
  const FlowSpec b = FlowSpec::diagonal(0.5, 0.6);
  CHECK(radial_time(b, RealPoint4(0.5, 0, 0, 0)).value() == doctest::Approx(1.0).epsilon(1e-13));
  const FlowSpec c = FlowSpec::from_contraction(params(0.6, 0.6, 0.1, 1));
  for (const auto& p : sphere_points(20, 1)) {
    CHECK(std::abs(radial_time(b, p).value()) < 1e-13);
    CHECK(std::abs(radial_time(c, p).value()) < 1e-13);
  }
}

TEST_CASE("radial time gradient against finite differences") {
  const FlowSpec c = FlowSpec::from_contraction(params(0.6, 0.6, 0.1, 1));
  const RealPoint4 z(0.4, -0.3, 0.2, 0.6);
  const JetScalar r = radial_time(c, z);
  for (int i = 0; i < 4; ++i) {
    Vec4 p = z.coords(), m = z.coords();
    p[i] += 1e-5;
    m[i] -= 1e-5;
    const double fd = (radial_time(c, RealPoint4(p)).value() - radial_time(c, RealPoint4(m)).value()) / 2e-5;
    CHECK(r.grad()[i] == doctest::Approx(fd).epsilon(1e-7));
    const double fd2 = (radial_time(c, RealPoint4(p)).grad()[i] - radial_time(c, RealPoint4(m)).grad()[i]) / 2e-5;
    CHECK(r.hess()(i, i) == doctest::Approx(fd2).epsilon(1e-6));
  }
  // Newton seeded by a hint reaches the same root
  CHECK(radial_time(c, z, r.value() + 0.05).value() == doctest::Approx(r.value()).epsilon(1e-14));
}

TEST_CASE("potential of equal moduli is |z|^2") {
  const FlowSpec equal = FlowSpec::diagonal(std::polar(0.5, 0.4), std::polar(0.5, -0.4));
  const RealPoint4 z(0.6, 0.0, 0.0, 0.8);
  const PotentialEval pot = potential(equal, z);
  CHECK(pot.f.value() == doctest::Approx(1.0));
  CHECK((pot.ddc_f - 4.0 * frame::omega0()).max_abs() < 1e-12);
  CHECK(pot.min_metric_eigenvalue == doctest::Approx(4.0));
  CHECK((pot.lck_form - 4.0 * frame::omega0()).max_abs() < 1e-12);
  // dd^c = -H J0 - J0 H on the Euclidean Hessian 2 Id
  CHECK((ddc_from_hessian(2.0 * Mat4::Identity()) - 4.0 * frame::omega0()).max_abs() < 1e-15);
}

TEST_CASE("potential values for case (b)") {
  const FlowSpec b = FlowSpec::diagonal(0.5, 0.6);
  CHECK(potential(b, RealPoint4(1, 0, 0, 0)).f.value() == doctest::Approx(1.0));
  CHECK(potential(b, RealPoint4(0.5, 0, 0, 0)).f.value() == doctest::Approx(0.3));
  for (const auto& p : sphere_points(10, 2)) CHECK(potential(b, p).f.value() == doctest::Approx(1.0));
}

TEST_CASE("rescaling under gamma0") {
  const auto check = [](const ContractionParams& c) {
    const FlowSpec spec = FlowSpec::from_contraction(c);
    const auto pts = fundamental_annulus_sample(7, c, 100);
    const auto g0 = GroupElement::contraction();
    const auto gamma = [&](const RealPoint4& z) { return g0.apply(c, z); };
    CHECK(verify_rescaling(spec, gamma, pts).max < 1e-10);
    const auto id = [](const RealPoint4& z) { return z; };
    CHECK(verify_rescaling(spec, id, pts).max == doctest::Approx(1.0 - spec.multiplier()).epsilon(1e-9));
  };
  check(params(0.5, 0.6));
  check(params(0.6, 0.6, 0.1, 1));
  check(params(0.5, 0.5));
}

TEST_CASE("H-invariance and its detector") {
  const Complex eps = std::polar(1.0, 2.0 * M_PI / 3.0);
  const ContractionParams b = params(0.5, 0.6);
  const std::vector<Mat2c> cyc{diag(eps, 1.0 / eps), diag(eps * eps, 1.0 / (eps * eps))};
  CHECK(verify_h_invariance(FlowSpec::from_contraction(b), cyc, fundamental_annulus_sample(1, b, 100)).max <
        1e-12);

  const ContractionParams c = params(0.6, 0.6, 0.1, 1);
  const auto pts = fundamental_annulus_sample(1, c, 100);
  const std::vector<Mat2c> good{-Mat2c::Identity()};
  CHECK(verify_h_invariance(FlowSpec::from_contraction(c), good, pts).max < 1e-10);
  const std::vector<Mat2c> bad{diag(I, -I)};
  CHECK(verify_h_invariance(FlowSpec::from_contraction(c), bad, pts).max > 1e-2);
}

TEST_CASE("plurisubharmonicity and its failure") {
  const ContractionParams c = params(0.6, 0.6, 0.1, 1);
  const FlowSpec spec = FlowSpec::from_contraction(c);
  for (const auto& p : fundamental_annulus_sample(3, c, 200)) CHECK(potential(spec, p).min_metric_eigenvalue > 0.0);

  const ContractionParams big = params(0.6, 0.6, 100.0, 1);
  const FlowSpec big_spec = FlowSpec::from_contraction(big);
  bool refused = false;
  for (const auto& p : fundamental_annulus_sample(3, big, 20)) {
    try {
      potential(big_spec, p);
    } catch (const NotPlurisubharmonic&) {
      refused = true;
    }
  }
  CHECK(refused);
}
