#include "biherm/deformation/deformation.hpp"

#include "biherm/errors.hpp"
#include "biherm/potentials/potential.hpp"
#include "biherm/tensor/exterior.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace biherm {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::array<double, 20>;  // x (4) followed by D (16, column-major)

const Mat4& phi0_inverse() {
  static const Mat4 inv = frame::phi0().coeff().inverse();
  return inv;
}

State pack(const Vec4& x, const Mat4& d) {
  State s{};
  for (int i = 0; i < 4; ++i) s[i] = x[i];
  Eigen::Map<Mat4>(s.data() + 4) = d;
  return s;
}

Vec4 unpack_x(const State& s) { return Vec4(s[0], s[1], s[2], s[3]); }
Mat4 unpack_d(const State& s) { return Eigen::Map<const Mat4>(s.data() + 4); }

// Right-hand side of the flow plus its variational equation. The radial time
// found at the previous evaluation seeds the next root solve.
struct FlowSystem {
  const FlowSpec* spec;
  double* r_hint;

  void operator()(const State& s, State& ds, double /*t*/) const {
    const RealPoint4 x(unpack_x(s));
    const JetScalar r = radial_time(*spec, x, *r_hint);
    *r_hint = r.value();
    const JetScalar f = exp(spec->log_multiplier() * r);
    const Vec4 v = -phi0_inverse() * f.grad();
    const Mat4 dv = -phi0_inverse() * f.hess();
    const Mat4 dd = dv * unpack_d(s);
    for (int i = 0; i < 4; ++i) ds[i] = v[i];
    Eigen::Map<Mat4>(ds.data() + 4) = dd;
  }
};

double initial_hint(const FlowSpec& spec, const Vec4& x) {
  return radial_time(spec, RealPoint4(x)).value();
}

State integrate_adaptive(const FlowSpec& spec, State s, double t0, double t1,
                         const IntegratorOptions& opt, StepSchedule& schedule) {
  if (t1 == t0) return s;
  double hint = initial_hint(spec, unpack_x(s));
  FlowSystem sys{&spec, &hint};
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(opt.ode_tol, opt.ode_tol);
  const double dir = t1 > t0 ? 1.0 : -1.0;
  double t = t0;
  double dt = dir * std::min(opt.initial_step, std::abs(t1 - t0));
  std::size_t steps = 0;
  while (dir * (t1 - t) > 0.0) {
    if (dir * (t + dt - t1) > 0.0) dt = t1 - t;
    const double before = t;
    const auto result = stepper.try_step(std::ref(sys), s, t, dt);
    if (result == odeint::success) {
      schedule.steps.push_back(t - before);
      if (++steps > opt.max_steps) throw StepSizeUnderflow("maximum step count exceeded");
    } else if (std::abs(dt) < opt.min_step) {
      throw StepSizeUnderflow("step size fell below " + std::to_string(opt.min_step));
    }
    // Snap onto the endpoint when rounding leaves a sliver.
    if (std::abs(t1 - t) <= 1e-14 * std::max(1.0, std::abs(t1))) break;
  }
  return s;
}

DeformationState make_state(double t, const RealPoint4& x, const State& s) {
  return {t, x, unpack_d(s), RealPoint4(unpack_x(s))};
}

}  // namespace

Vec4 hamiltonian_vector(const OneForm& df) { return -phi0_inverse() * df.coeff; }

HamiltonianField hamiltonian_field(const FlowSpec& spec, const RealPoint4& z) {
  HamiltonianField out;
  out.f = potential_jet(spec, z);
  out.vector = hamiltonian_vector(OneForm{out.f.grad()});
  out.jacobian = -phi0_inverse() * out.f.hess();
  return out;
}

FlowResult integrate_flow(const FlowSpec& spec, double t, const RealPoint4& x,
                          const IntegratorOptions& opt) {
  FlowResult out;
  const State s = integrate_adaptive(spec, pack(x.coords(), Mat4::Identity()), 0.0, t, opt,
                                     out.schedule);
  out.state = make_state(t, x, s);
  return out;
}

FlowResult continue_flow(const FlowSpec& spec, const DeformationState& from, double t_new,
                         const IntegratorOptions& opt) {
  FlowResult out;
  const State s =
      integrate_adaptive(spec, pack(from.x_t.coords(), from.D), from.t, t_new, opt, out.schedule);
  out.state = make_state(t_new, from.x, s);
  return out;
}

DeformationState integrate_flow(const FlowSpec& spec, const StepSchedule& schedule,
                                const RealPoint4& x) {
  State s = pack(x.coords(), Mat4::Identity());
  double hint = initial_hint(spec, x.coords());
  FlowSystem sys{&spec, &hint};
  odeint::runge_kutta_dopri5<State> stepper;
  double t = 0.0;
  for (double dt : schedule.steps) {
    stepper.do_step(std::ref(sys), s, t, dt);
    t += dt;
  }
  return make_state(t, x, s);
}

TwoForm pullback_psi(const DeformationState& state) { return pullback(frame::psi0(), state.D); }

QuotientTriple quotient_triple(const JetScalar& f, const DeformationState& state) {
  QuotientTriple q;
  q.f = f.value();
  q.phi = frame::phi0() / q.f;
  q.psi_plus = frame::psi0() / q.f;
  q.psi_minus = pullback_psi(state) / q.f;
  q.tau = OneForm{-f.grad() / q.f};
  return q;
}

QuotientTriple quotient_triple(const FlowSpec& spec, const DeformationState& state) {
  return quotient_triple(potential_jet(spec, state.x), state);
}

double positivity_margin(const QuotientTriple& triple) {
  const auto j0 = frame::standard_j();
  return min_eigenvalue(metric_from_form(invariant_part(triple.psi_minus, j0), j0));
}

double t_zero_derivative_check(const FlowSpec& spec, const RealPoint4& x, double h_t,
                               const IntegratorOptions& opt) {
  const PotentialEval pot = potential_unchecked(spec, x);
  const auto fwd = quotient_triple(pot.f, integrate_flow(spec, h_t, x, opt).state);
  const auto bwd = quotient_triple(pot.f, integrate_flow(spec, -h_t, x, opt).state);
  const TwoForm derivative = (fwd.psi_minus - bwd.psi_minus) / (2.0 * h_t);
  return (derivative - pot.lck_form).max_abs() / pot.lck_form.max_abs();
}

std::vector<SweepRow> positivity_sweep(const FlowSpec& spec, std::vector<double> t_grid,
                                       std::span<const RealPoint4> samples,
                                       const IntegratorOptions& opt) {
  std::sort(t_grid.begin(), t_grid.end());
  t_grid.erase(std::unique(t_grid.begin(), t_grid.end()), t_grid.end());
  std::vector<SweepRow> rows(t_grid.size());
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    rows[k].t = t_grid[k];
    rows[k].min_margin = std::numeric_limits<double>::infinity();
    rows[k].min_margin_ratio = std::numeric_limits<double>::infinity();
    rows[k].p_min = std::numeric_limits<double>::infinity();
    rows[k].p_max = -std::numeric_limits<double>::infinity();
  }
  const auto j0 = frame::standard_j();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const PotentialEval pot = potential_unchecked(spec, samples[i]);
    const double slope = pot.min_metric_eigenvalue / pot.f.value();
    DeformationState state{0.0, samples[i], Mat4::Identity(), samples[i]};
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
      state = continue_flow(spec, state, t_grid[k], opt).state;
      const QuotientTriple q = quotient_triple(pot.f, state);
      const double margin = positivity_margin(q);
      const double p = angle_function(j0, acs_from_form_pair(q.phi, q.psi_minus));
      SweepRow& row = rows[k];
      if (margin < row.min_margin) {
        row.min_margin = margin;
        row.argmin_sample_index = i;
      }
      if (t_grid[k] != 0.0)
        row.min_margin_ratio = std::min(row.min_margin_ratio, margin / (t_grid[k] * slope));
      row.p_min = std::min(row.p_min, p);
      row.p_max = std::max(row.p_max, p);
    }
  }
  for (auto& row : rows)
    if (row.t == 0.0) row.min_margin_ratio = 0.0;
  return rows;
}

double select_deformation_time(std::span<const SweepRow> sweep, double fraction) {
  double best = 0.0;
  for (const auto& row : sweep) {
    if (row.t <= 0.0) continue;
    if (!(row.min_margin_ratio > fraction)) break;
    best = row.t;
  }
  return best;
}

StepSchedule DeformationPipeline::schedule_at(const RealPoint4& x) const {
  return integrate_flow(spec_, t_, x, opt_).schedule;
}

DeformationPipeline::Point DeformationPipeline::evaluate(const RealPoint4& x,
                                                         const StepSchedule& schedule) const {
  Point p;
  p.f = potential_jet(spec_, x);
  p.state = integrate_flow(spec_, schedule, x);
  p.state.t = t_;
  p.triple = quotient_triple(p.f, p.state);
  return p;
}

DeformationPipeline::Point DeformationPipeline::evaluate(const RealPoint4& x) const {
  Point p;
  p.f = potential_jet(spec_, x);
  p.state = integrate_flow(spec_, t_, x, opt_).state;
  p.triple = quotient_triple(p.f, p.state);
  return p;
}

}  // namespace biherm
