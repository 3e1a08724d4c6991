#include "doctest.h"

#include "biherm/deformation/deformation.hpp"
#include "biherm/groups/sampling.hpp"
#include "biherm/potentials/potential.hpp"
#include "biherm/tensor/exterior.hpp"

#include <cmath>

using namespace biherm;

namespace {

ContractionParams params(Complex alpha, Complex beta, Complex lambda = 0.0, int m = 1) {
  ContractionParams c;
  c.alpha = alpha;
  c.beta = beta;
  c.lambda = lambda;
  c.m = m;
  return c;
}

const ContractionParams kA = params(0.5, 0.5);
const ContractionParams kB = params(0.5, 0.6);
const ContractionParams kC = params(0.6, 0.6, 0.1, 1);

double rel(const TwoForm& a, const TwoForm& b) {
  return (a - b).max_abs() / std::max(1.0, std::max(a.max_abs(), b.max_abs()));
}

}  // namespace

TEST_CASE("Hamiltonian vector field of |z|^2") {
  const Vec4 x = hamiltonian_vector(OneForm{Vec4(2, 0, 0, 0)});
  CHECK((x - Vec4(0, 0, -2, 0)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(hamiltonian_vector(OneForm{}).cwiseAbs().maxCoeff() == 0.0);
  // i_X Phi0 = df
  const OneForm df{Vec4(0.3, -1.2, 0.5, 2.0)};
  const Vec4 v = hamiltonian_vector(df);
  const Vec4 contraction = frame::phi0().coeff().transpose() * v;
  CHECK((contraction - df.coeff).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("case (a) flow: closed form, t = 0 and conservation") {
  const FlowSpec spec = FlowSpec::from_contraction(kA);
  const RealPoint4 x(0.3, -0.4, 0.5, 0.2);
  const auto zero = integrate_flow(spec, 0.0, x).state;
  CHECK(zero.x_t.coords() == x.coords());
  CHECK(zero.D == Mat4::Identity());

  const double t = 0.3, c = std::cos(2 * t), s = std::sin(2 * t);
  const auto st = integrate_flow(spec, t, x).state;
  CHECK(std::abs(st.x_t.z1() - (c * x.z1() + s * std::conj(x.z2()))) < 1e-9);
  CHECK(std::abs(st.x_t.z2() - (c * x.z2() - s * std::conj(x.z1()))) < 1e-9);
  // the closed-form map is real-linear, so D is its matrix
  Mat4 exact;
  for (int i = 0; i < 4; ++i) {
    Vec4 e = Vec4::Zero();
    e[i] = 1.0;
    const RealPoint4 p(e);
    const Complex w1 = c * p.z1() + s * std::conj(p.z2()), w2 = c * p.z2() - s * std::conj(p.z1());
    exact.col(i) = Vec4(w1.real(), w1.imag(), w2.real(), w2.imag());
  }
  CHECK((st.D - exact).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("flow preserves f and Phi0") {
  for (const auto& cp : {kB, kC}) {
    const FlowSpec spec = FlowSpec::from_contraction(cp);
    for (const auto& x : fundamental_annulus_sample(5, cp, 10)) {
      const double f0 = potential(spec, x).f.value();
      for (double t : {0.1, 0.3, 0.5}) {
        const auto st = integrate_flow(spec, t, x).state;
        CHECK(std::abs(potential(spec, st.x_t).f.value() - f0) / f0 < 1e-8);
        CHECK(rel(pullback(frame::phi0(), st.D), frame::phi0()) < 1e-7);
      }
    }
  }
}

TEST_CASE("pulled-back Psi satisfies the quadratic relations") {
  const FlowSpec spec = FlowSpec::from_contraction(kB);
  const RealPoint4 x = fundamental_annulus_sample(2, kB, 1)[0];
  const auto zero = integrate_flow(spec, 0.0, x).state;
  CHECK((pullback_psi(zero) - frame::psi0()).max_abs() == 0.0);
  const auto st = integrate_flow(spec, 0.4, x).state;
  const TwoForm psi = pullback_psi(st);
  CHECK(std::abs(wedge_to_volume(psi, psi) - wedge_to_volume(frame::phi0(), frame::phi0())) < 1e-8);
  CHECK(std::abs(wedge_to_volume(frame::phi0(), psi)) < 1e-8);
}

TEST_CASE("frozen schedule replay reproduces the adaptive run") {
  const FlowSpec spec = FlowSpec::from_contraction(kC);
  const RealPoint4 x = fundamental_annulus_sample(9, kC, 1)[0];
  const FlowResult run = integrate_flow(spec, 0.5, x);
  CHECK_FALSE(run.schedule.steps.empty());
  const DeformationState replay = integrate_flow(spec, run.schedule, x);
  CHECK((replay.x_t.coords() - run.state.x_t.coords()).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((replay.D - run.state.D).cwiseAbs().maxCoeff() < 1e-12);
  // continuing from t = 0.2 agrees with a direct run
  const FlowResult part = integrate_flow(spec, 0.2, x);
  const FlowResult rest = continue_flow(spec, part.state, 0.5);
  CHECK((rest.state.D - run.state.D).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("quotient triple at t = 0") {
  const FlowSpec spec = FlowSpec::from_contraction(kB);
  const RealPoint4 x = fundamental_annulus_sample(4, kB, 1)[0];
  const auto q = quotient_triple(spec, integrate_flow(spec, 0.0, x).state);
  CHECK((q.psi_minus - q.psi_plus).max_abs() == 0.0);
  CHECK(invariant_part(q.psi_minus, frame::standard_j()).max_abs() < 1e-15);
  CHECK(std::abs(positivity_margin(q)) < 1e-12);
  const JetScalar f = potential_jet(spec, x);
  CHECK((q.tau.coeff + f.grad() / f.value()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((q.phi - frame::phi0() / f.value()).max_abs() < 1e-14);
}

TEST_CASE("derivative at t = 0 is the LCK form") {
  // case (a) on the unit sphere: F = 4 omega0 / |z|^2
  const FlowSpec a = FlowSpec::from_contraction(kA);
  CHECK(t_zero_derivative_check(a, RealPoint4(0.6, 0, 0, 0.8)) < 1e-5);
  const FlowSpec b = FlowSpec::from_contraction(kB);
  double worst = 0.0;
  for (const auto& x : fundamental_annulus_sample(7, kB, 50)) worst = std::max(worst, t_zero_derivative_check(b, x));
  CHECK(worst < 1e-5);
}

TEST_CASE("positivity sweep and time selection") {
  const FlowSpec spec = FlowSpec::from_contraction(kB);
  const auto pts = fundamental_annulus_sample(7, kB, 20);
  // reversed grid: output sorted
  const auto rows = positivity_sweep(spec, {0.2, 0.1, 0.0, 0.05}, pts);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].t == 0.0);
  CHECK(rows[0].min_margin == doctest::Approx(0.0));
  CHECK(rows[0].p_min == doctest::Approx(1.0));
  CHECK(rows[0].p_max == doctest::Approx(1.0));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].t > rows[i - 1].t);
    CHECK(rows[i].min_margin > 0.0);
    CHECK(rows[i].p_max < 1.0);
  }
  // nearly linear in t at the start
  CHECK(rows[2].min_margin / rows[1].min_margin == doctest::Approx(2.0).epsilon(0.1));

  const auto grid = positivity_sweep(spec, {0.05, 0.1, 0.2, 0.3}, pts);
  CHECK(select_deformation_time(grid) == doctest::Approx(0.3));
  std::vector<SweepRow> bad = grid;
  bad[1].min_margin = -1.0;
  bad[1].min_margin_ratio = -1.0;
  CHECK(select_deformation_time(bad) == doctest::Approx(0.05));
  bad[0].min_margin = -1.0;
  bad[0].min_margin_ratio = -1.0;
  CHECK(select_deformation_time(bad) == 0.0);
}

TEST_CASE("large deformation times lose positivity somewhere") {
  const FlowSpec spec = FlowSpec::from_contraction(kA);
  const auto pts = fundamental_annulus_sample(7, kA, 20);
  const auto rows = positivity_sweep(spec, {0.1, 1.0}, pts);
  CHECK(rows[0].min_margin > 0.0);
  CHECK(rows[1].min_margin < 0.0);
  // case (a) angle function is cos(4t)
  CHECK(rows[0].p_min == doctest::Approx(std::cos(0.4)).epsilon(1e-8));
  CHECK(rows[1].p_max == doctest::Approx(std::cos(4.0)).epsilon(1e-8));
}

TEST_CASE("pipeline evaluation with a frozen schedule") {
  const FlowSpec spec = FlowSpec::from_contraction(kB);
  const DeformationPipeline pipe(spec, 0.3);
  const RealPoint4 x = fundamental_annulus_sample(8, kB, 1)[0];
  const StepSchedule sched = pipe.schedule_at(x);
  const auto a = pipe.evaluate(x, sched);
  const auto b = pipe.evaluate(x);
  CHECK(rel(a.triple.psi_minus, b.triple.psi_minus) < 1e-9);
  CHECK(a.f.value() == doctest::Approx(b.f.value()));
  // deterministic
  const auto again = pipe.evaluate(x, sched);
  CHECK((again.triple.psi_minus - a.triple.psi_minus).max_abs() == 0.0);
}
