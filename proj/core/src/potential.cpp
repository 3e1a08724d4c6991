#include "biherm/potentials/potential.hpp"

#include "biherm/errors.hpp"
#include "biherm/tensor/exterior.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace biherm {

namespace {

// Forward-mode first derivative in r only, for the double-precision solve.
struct Dual {
  double v = 0.0;
  double d = 0.0;
  friend Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
  friend Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
  friend Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
  friend Dual operator*(double s, Dual a) { return {s * a.v, s * a.d}; }
  friend Dual exp(Dual a) {
    const double e = std::exp(a.v);
    return {e, e * a.d};
  }
};

template <class T>
struct ComplexT {
  T re, im;
};

template <class T>
ComplexT<T> mul(const ComplexT<T>& a, const ComplexT<T>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

// G(r, z) = |phi_{-r}(z)|^2 - 1, generic in the scalar type.
template <class T>
T radial_g(const FlowSpec& spec, const T& r, const T& x1, const T& y1, const T& x2, const T& y2) {
  using std::exp;
  const T z2sq = x2 * x2 + y2 * y2;
  if (const auto* d = std::get_if<DiagonalFlow>(&spec.kind())) {
    const double la = std::log(std::abs(d->alpha)), lb = std::log(std::abs(d->beta));
    return exp((-2.0 * la) * r) * (x1 * x1 + y1 * y1) + exp((-2.0 * lb) * r) * z2sq - T(1.0);
  }
  const auto& s = std::get<ShearFlow>(spec.kind());
  const double lb = std::log(std::abs(s.beta));
  ComplexT<T> p{T(1.0), T(0.0)};
  const ComplexT<T> z2{x2, y2};
  for (int i = 0; i < s.m; ++i) p = mul(p, z2);
  const ComplexT<T> lp = mul(ComplexT<T>{T(s.lambda_hat.real()), T(s.lambda_hat.imag())}, p);
  // phi_{-r}: first coordinate beta^{-mr} (z1 - r lhat z2^m)
  const T wre = x1 - r * lp.re;
  const T wim = y1 - r * lp.im;
  return exp((-2.0 * s.m * lb) * r) * (wre * wre + wim * wim) + exp((-2.0 * lb) * r) * z2sq - T(1.0);
}

Dual radial_g_dual(const FlowSpec& spec, double r, const RealPoint4& z) {
  const auto c = [](double v) { return Dual{v, 0.0}; };
  return radial_g(spec, Dual{r, 1.0}, c(z[0]), c(z[1]), c(z[2]), c(z[3]));
}

// Safeguarded Newton on a sign-changing bracket.
double solve_bracketed(const FlowSpec& spec, const RealPoint4& z, double lo, double hi) {
  double r = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const Dual g = radial_g_dual(spec, r, z);
    if (g.v < 0.0) lo = r; else hi = r;
    double next = (g.d > 0.0) ? r - g.v / g.d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - r);
    r = next;
    if (step <= 1e-15 * (1.0 + std::abs(r)) || hi - lo <= 4e-16 * (1.0 + std::abs(r))) break;
  }
  return r;
}

double solve_radial_time(const FlowSpec& spec, const RealPoint4& z) {
  double lo = -1.0, hi = 1.0;
  for (int it = 0; it < 64 && radial_residual(spec, lo, z) >= 0.0; ++it) lo *= 2.0;
  for (int it = 0; it < 64 && radial_residual(spec, hi, z) <= 0.0; ++it) hi *= 2.0;
  if (!(radial_residual(spec, lo, z) < 0.0 && radial_residual(spec, hi, z) > 0.0))
    throw AmbiguousRadialTime("no sign change found while bracketing");

  if (spec.is_shear()) {
    constexpr int kGrid = 64;
    int changes = 0;
    double prev = radial_residual(spec, lo, z);
    for (int i = 1; i <= kGrid; ++i) {
      const double cur = radial_residual(spec, lo + (hi - lo) * i / kGrid, z);
      if ((prev < 0.0) != (cur < 0.0)) ++changes;
      prev = cur;
    }
    if (changes > 1)
      throw AmbiguousRadialTime(std::to_string(changes) + " sign changes on the bracket");
  }
  return solve_bracketed(spec, z, lo, hi);
}

bool try_newton(const FlowSpec& spec, const RealPoint4& z, double& r) {
  for (int it = 0; it < 12; ++it) {
    const Dual g = radial_g_dual(spec, r, z);
    if (!(g.d > 0.0)) return false;
    const double step = g.v / g.d;
    r -= step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(r))) return std::isfinite(r);
  }
  return false;
}

// Implicit derivatives of r from the (r, z) jet of G at the root.
JetScalar implicit_radial_jet(const FlowSpec& spec, const RealPoint4& z, double r) {
  using J5 = Jet<5>;
  const J5 g = radial_g(spec, J5::variable(0, r), J5::variable(1, z[0]), J5::variable(2, z[1]),
                        J5::variable(3, z[2]), J5::variable(4, z[3]));
  if (std::abs(g.value()) > 1e-12)
    throw AmbiguousRadialTime("root residual " + std::to_string(g.value()) + " too large");
  const double gr = g.grad()[0];
  if (!(gr > 0.0)) throw AmbiguousRadialTime("dG/dr <= 0 at the root");

  const Vec4 gx = g.grad().tail<4>();
  const Vec4 grx = g.hess().block<4, 1>(1, 0);
  const Mat4 gxx = g.hess().block<4, 4>(1, 1);
  const double grr = g.hess()(0, 0);
  const Vec4 dr = -gx / gr;
  const Mat4 cross = grx * dr.transpose();
  const Mat4 hr = -(gxx + cross + cross.transpose() + grr * dr * dr.transpose()) / gr;
  return JetScalar(r, dr, 0.5 * (hr + hr.transpose()));
}

void require_nonzero(const RealPoint4& z) {
  if (!(z.norm2() > 0.0)) throw AmbiguousRadialTime("radial time undefined at the origin");
}

}  // namespace

FlowSpec::FlowSpec(Kind kind) : kind_(std::move(kind)) {
  if (const auto* d = std::get_if<DiagonalFlow>(&kind_)) {
    log_multiplier_ = std::log(std::abs(d->alpha)) + std::log(std::abs(d->beta));
  } else {
    const auto& s = std::get<ShearFlow>(kind_);
    log_multiplier_ = (s.m + 1) * std::log(std::abs(s.beta));
  }
  multiplier_ = std::exp(log_multiplier_);
}

FlowSpec FlowSpec::diagonal(Complex alpha, Complex beta) {
  return FlowSpec(DiagonalFlow{alpha, beta, std::arg(alpha), std::arg(beta)});
}

FlowSpec FlowSpec::shear(Complex beta, int m, Complex lambda) {
  return FlowSpec(ShearFlow{beta, m, lambda / std::pow(beta, m), std::arg(beta)});
}

FlowSpec FlowSpec::from_contraction(const ContractionParams& c) {
  if (c.has_shear()) {
    Complex beta_m{1.0, 0.0};
    for (int i = 0; i < c.m; ++i) beta_m *= c.beta;
    return FlowSpec(ShearFlow{c.beta, c.m, c.lambda / beta_m, c.branch_beta()});
  }
  return FlowSpec(DiagonalFlow{c.alpha, c.beta, c.branch_alpha(), c.branch_beta()});
}

RealPoint4 flow_apply(const FlowSpec& spec, double t, const RealPoint4& z) {
  const auto power = [t](Complex base, double arg, double scale) {
    return std::exp(Complex{scale * t * std::log(std::abs(base)), scale * t * arg});
  };
  if (const auto* d = std::get_if<DiagonalFlow>(&spec.kind())) {
    return RealPoint4::from_complex(power(d->alpha, d->arg_alpha, 1.0) * z.z1(),
                                    power(d->beta, d->arg_beta, 1.0) * z.z2());
  }
  const auto& s = std::get<ShearFlow>(spec.kind());
  Complex z2m{1.0, 0.0};
  for (int i = 0; i < s.m; ++i) z2m *= z.z2();
  const Complex w1 = power(s.beta, s.arg_beta, s.m) * (z.z1() + t * s.lambda_hat * z2m);
  return RealPoint4::from_complex(w1, power(s.beta, s.arg_beta, 1.0) * z.z2());
}

double radial_residual(const FlowSpec& spec, double r, const RealPoint4& z) {
  return radial_g(spec, r, z[0], z[1], z[2], z[3]);
}

JetScalar radial_time(const FlowSpec& spec, const RealPoint4& z) {
  require_nonzero(z);
  return implicit_radial_jet(spec, z, solve_radial_time(spec, z));
}

JetScalar radial_time(const FlowSpec& spec, const RealPoint4& z, double hint) {
  require_nonzero(z);
  double r = hint;
  if (!try_newton(spec, z, r)) r = solve_radial_time(spec, z);
  return implicit_radial_jet(spec, z, r);
}

JetScalar potential_jet(const FlowSpec& spec, const RealPoint4& z) {
  return exp(spec.log_multiplier() * radial_time(spec, z));
}

JetScalar potential_jet(const FlowSpec& spec, const RealPoint4& z, double r_hint) {
  return exp(spec.log_multiplier() * radial_time(spec, z, r_hint));
}

TwoForm ddc_from_hessian(const Mat4& hessian) {
  const Mat4 j = frame::standard_j().mat;
  return TwoForm::from_matrix(-hessian * j - j * hessian);
}

PotentialEval potential_unchecked(const FlowSpec& spec, const RealPoint4& z) {
  PotentialEval out;
  out.r = radial_time(spec, z);
  out.f = exp(spec.log_multiplier() * out.r);
  out.ddc_f = ddc_from_hessian(out.f.hess());
  out.lck_form = out.ddc_f / out.f.value();
  out.min_metric_eigenvalue = min_eigenvalue(metric_from_form(out.ddc_f, frame::standard_j()));
  return out;
}

PotentialEval potential(const FlowSpec& spec, const RealPoint4& z) {
  PotentialEval out = potential_unchecked(spec, z);
  if (!(out.min_metric_eigenvalue > 0.0)) {
    std::ostringstream os;
    os << "dd^c f not positive at (" << z[0] << ", " << z[1] << ", " << z[2] << ", " << z[3]
       << "): min eigenvalue " << out.min_metric_eigenvalue;
    throw NotPlurisubharmonic(os.str());
  }
  return out;
}

ResidualStats verify_rescaling(const FlowSpec& spec,
                               const std::function<RealPoint4(const RealPoint4&)>& gamma,
                               std::span<const RealPoint4> samples,
                               std::optional<double> multiplier) {
  const double a = multiplier.value_or(spec.multiplier());
  std::vector<double> res;
  res.reserve(samples.size());
  for (const auto& z : samples) {
    const double f = potential_jet(spec, z).value();
    const double fg = potential_jet(spec, gamma(z)).value();
    res.push_back(std::abs(fg - a * f) / f);
  }
  return ResidualStats::from(res);
}

ResidualStats verify_h_invariance(const FlowSpec& spec, std::span<const Mat2c> elements,
                                  std::span<const RealPoint4> samples) {
  std::vector<double> res;
  for (const auto& z : samples) {
    const double f = potential_jet(spec, z).value();
    for (const auto& h : elements) {
      const RealPoint4 hz = GroupElement::unitary(h).apply(ContractionParams{}, z);
      res.push_back(std::abs(potential_jet(spec, hz).value() - f) / f);
    }
  }
  return ResidualStats::from(res);
}

}  // namespace biherm
