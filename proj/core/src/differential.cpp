#include "biherm/certificate/differential.hpp"

#include "biherm/tensor/exterior.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

namespace biherm {

namespace {

using Cx = std::complex<double>;
using Vec4c = Eigen::Matrix<Cx, 4, 1>;

// sqrt(g) g^{-1} F g^{-1}, the density whose divergence is -sqrt(g) delta F.
Mat4 divergence_density(const Metric4& g, const TwoForm& f) {
  const Mat4 ginv = g.mat.inverse();
  return volume_density(g) * ginv * f.coeff() * ginv;
}

OneForm lee_from_density(const Metric4& g, const Endomorphism4& j, const Partials<Mat4>& dn) {
  Vec4 up = Vec4::Zero();
  for (int jj = 0; jj < 4; ++jj)
    for (int i = 0; i < 4; ++i) up[jj] -= dn[i](i, jj);
  up /= volume_density(g);
  return apply_to_covector(j, OneForm{g.mat * up});
}

// sqrt(g) g^{ij} theta_j; its divergence gives -sqrt(g) delta theta.
Vec4 vector_density(const Metric4& g, const OneForm& theta) {
  return volume_density(g) * g.mat.ldlt().solve(theta.coeff);
}

template <class T>
T combine(const T& p, const T& m, const T& ph, const T& mh, double h, bool richardson) {
  T d = p;
  d -= m;
  d *= 0.5 / h;
  if (!richardson) return d;
  T fine = ph;
  fine -= mh;
  fine *= 4.0 / h;
  fine -= d;
  fine *= 1.0 / 3.0;
  return fine;
}

Cx det3(const Vec4c& a, const Vec4c& b, const Vec4c& c, int i, int j, int k) {
  return a[i] * (b[j] * c[k] - b[k] * c[j]) - a[j] * (b[i] * c[k] - b[k] * c[i]) +
         a[k] * (b[i] * c[j] - b[j] * c[i]);
}

Cx eval3(const ThreeForm& re, const ThreeForm& im, const Vec4c& a, const Vec4c& b, const Vec4c& c) {
  Cx out = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k)
        out += Cx(re.component(i, j, k), im.component(i, j, k)) * det3(a, b, c, i, j, k);
  return out;
}

double max_partial(const Partials<OneForm>& d) {
  double m = 0.0;
  for (const auto& v : d) m = std::max(m, v.max_abs());
  return m;
}

}  // namespace

Stencil build_stencil(const StructureField& field, const LocalData& center, const Vec4& x, double h,
                      bool richardson) {
  Stencil st;
  st.center = x;
  st.h = h;
  st.richardson = richardson;
  st.c = center;
  for (int i = 0; i < 4; ++i) {
    Vec4 e = Vec4::Zero();
    e[i] = 1.0;
    st.plus[i] = field(x + h * e);
    st.minus[i] = field(x - h * e);
    if (richardson) {
      st.plus_half[i] = field(x + 0.5 * h * e);
      st.minus_half[i] = field(x - 0.5 * h * e);
    }
  }
  return st;
}

Stencil build_stencil(const StructureField& field, const Vec4& x, double h, bool richardson) {
  return build_stencil(field, field(x), x, h, richardson);
}

std::pair<OneForm, OneForm> lee_forms(const Stencil& st) {
  const auto dn_plus = st.partials(
      [](const LocalData& d) { return divergence_density(d.s.g, d.s.F_plus); });
  const auto dn_minus = st.partials(
      [](const LocalData& d) { return divergence_density(d.s.g, d.s.F_minus); });
  return {lee_from_density(st.c.s.g, st.c.s.J_plus, dn_plus),
          lee_from_density(st.c.s.g, st.c.s.J_minus, dn_minus)};
}

OneForm lee_form(const std::function<Metric4(const Vec4&)>& g,
                 const std::function<Endomorphism4(const Vec4&)>& j, const Vec4& x,
                 const FdOptions& opt) {
  const auto density = [&](const Vec4& y) -> Mat4 {
    const Metric4 gy = g(y);
    return divergence_density(gy, fundamental_form(gy, j(y)));
  };
  return lee_from_density(g(x), j(x), partials(density, x, opt));
}

double type_12_norm(const ThreeForm& re, const ThreeForm& im, const Endomorphism4& j) {
  const Cx i(0.0, 1.0);
  std::array<Vec4c, 4> hol, antihol;
  for (int a = 0; a < 4; ++a) {
    Vec4 e = Vec4::Zero();
    e[a] = 1.0;
    const Vec4 je = j.mat * e;
    hol[a] = e.cast<Cx>() - i * je.cast<Cx>();
    antihol[a] = e.cast<Cx>() + i * je.cast<Cx>();
  }
  double m = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = b + 1; c < 4; ++c)
        m = std::max(m, std::abs(eval3(re, im, hol[a], antihol[b], antihol[c])));
  return m;
}

DifferentialResult check_differential_identities(const StructureField& field, const LocalData& center,
                                                 const Vec4& x, const DifferentialOptions& opt) {
  DifferentialResult out;
  const double h = opt.step * std::max(1.0, x.norm());
  const Stencil st = build_stencil(field, center, x, h, opt.richardson);
  out.evaluations = opt.richardson ? 16 : 8;
  const BihermitianSample& s = st.c.s;
  const QuotientTriple& q = st.c.triple;

  // Quotient triple: dB = tau ^ B.
  const ThreeForm d_phi = exterior_derivative(st.partials([](const LocalData& d) { return d.triple.phi; }));
  const ThreeForm d_psi_plus =
      exterior_derivative(st.partials([](const LocalData& d) { return d.triple.psi_plus; }));
  const ThreeForm d_psi_minus =
      exterior_derivative(st.partials([](const LocalData& d) { return d.triple.psi_minus; }));
  out.residuals["quotient_d_phi"] = scaled_residual(d_phi, wedge(q.tau, q.phi));
  out.residuals["quotient_d_psi_plus"] = scaled_residual(d_psi_plus, wedge(q.tau, q.psi_plus));
  out.residuals["quotient_d_psi_minus"] = scaled_residual(d_psi_minus, wedge(q.tau, q.psi_minus));

  // Lee forms and their defining relation dF = theta ^ F.
  const auto [theta_plus, theta_minus] = lee_forms(st);
  out.theta_plus = theta_plus;
  out.theta_minus = theta_minus;
  const ThreeForm d_f_plus =
      exterior_derivative(st.partials([](const LocalData& d) { return d.s.F_plus; }));
  const ThreeForm d_f_minus =
      exterior_derivative(st.partials([](const LocalData& d) { return d.s.F_minus; }));
  out.residuals["lee_consistency"] = std::max(scaled_residual(d_f_plus, wedge(theta_plus, s.F_plus)),
                                              scaled_residual(d_f_minus, wedge(theta_minus, s.F_minus)));

  // d Omega_pm^g = tau_g ^ Omega_pm^g with tau_g = (theta_+ + theta_-)/2 + d log(1 - p^2).
  const OneForm dp = exterior_derivative(st.partials([](const LocalData& d) { return d.s.p; }));
  const double one_minus_p2 = 1.0 - s.p * s.p;
  out.tau_g = 0.5 * (theta_plus + theta_minus) + (-2.0 * s.p / one_minus_p2) * dp;
  double poisson = 0.0;
  const auto poisson_term = [&](auto pick) {
    const ThreeForm d = exterior_derivative(st.partials([&](const LocalData& l) { return pick(l.s); }));
    poisson = std::max(poisson, scaled_residual(d, wedge(out.tau_g, pick(s))));
  };
  poisson_term([](const BihermitianSample& b) { return b.Phi_g; });
  poisson_term([](const BihermitianSample& b) { return b.Psi_plus_g; });
  poisson_term([](const BihermitianSample& b) { return b.Psi_minus_g; });
  out.residuals["poisson_identity"] = poisson;

  // Integrability.
  const auto dj_plus = st.partials([](const LocalData& d) -> Mat4 { return d.s.J_plus.mat; });
  const auto dj_minus = st.partials([](const LocalData& d) -> Mat4 { return d.s.J_minus.mat; });
  out.residuals["nijenhuis_plus"] = max_abs(nijenhuis(s.J_plus.mat, dj_plus));
  out.residuals["nijenhuis_minus"] = max_abs(nijenhuis(s.J_minus.mat, dj_minus));
  out.residuals["type_12"] = type_12_norm(d_phi, d_psi_minus, s.J_minus) /
                             std::max({1.0, d_phi.max_abs(), d_psi_minus.max_abs()});

  if (!opt.second_layer) return out;

  // Second layer: theta at the outer stencil points from inner stencils.
  struct Outer {
    OneForm tp, tm;
    Vec4 vp, vm;
  };
  const auto outer = [&](const LocalData& y_data, const Vec4& y) {
    const Stencil inner = build_stencil(field, y_data, y, h, opt.inner_richardson);
    out.evaluations += opt.inner_richardson ? 16 : 8;
    const auto [tp, tm] = lee_forms(inner);
    return Outer{tp, tm, vector_density(y_data.s.g, tp), vector_density(y_data.s.g, tm)};
  };
  std::array<Outer, 4> op, om, oph, omh;
  for (int i = 0; i < 4; ++i) {
    Vec4 e = Vec4::Zero();
    e[i] = 1.0;
    op[i] = outer(st.plus[i], x + h * e);
    om[i] = outer(st.minus[i], x - h * e);
    if (opt.richardson) {
      oph[i] = outer(st.plus_half[i], x + 0.5 * h * e);
      omh[i] = outer(st.minus_half[i], x - 0.5 * h * e);
    }
  }
  Partials<OneForm> d_sum;
  double div_plus = 0.0, div_minus = 0.0;
  for (int i = 0; i < 4; ++i) {
    const auto sum = [](const Outer& o) { return o.tp + o.tm; };
    d_sum[i] = combine(sum(op[i]), sum(om[i]), sum(oph[i]), sum(omh[i]), h, opt.richardson);
    div_plus += combine(op[i].vp[i], om[i].vp[i], oph[i].vp[i], omh[i].vp[i], h, opt.richardson);
    div_minus += combine(op[i].vm[i], om[i].vm[i], oph[i].vm[i], omh[i].vm[i], h, opt.richardson);
  }
  const double vol = volume_density(s.g);
  const double delta_plus = -div_plus / vol;
  const double delta_minus = -div_minus / vol;
  const double lhs = 2.0 * delta_plus + norm2(s.g, theta_plus);
  const double rhs = 2.0 * delta_minus + norm2(s.g, theta_minus);
  out.residuals["lee_scalar"] = std::abs(lhs - rhs) /
                                std::max({1.0, std::abs(2.0 * delta_plus), std::abs(2.0 * delta_minus),
                                          norm2(s.g, theta_plus), norm2(s.g, theta_minus)});

  const TwoForm d_theta_sum = exterior_derivative(d_sum);
  const double scale = std::max(1.0, max_partial(d_sum));
  out.residuals["lee_sum_selfdual"] = selfdual_part(s.g, d_theta_sum).max_abs() / scale;
  out.residuals["lee_sum_closed"] = d_theta_sum.max_abs() / scale;
  return out;
}

}  // namespace biherm
