#include "biherm/certificate/structure.hpp"

#include "biherm/errors.hpp"
#include "biherm/tensor/exterior.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace biherm {

namespace {

double max_abs(const Mat4& m) { return m.cwiseAbs().maxCoeff(); }

double wedge_residual(const TwoForm& a, const TwoForm& b, double expected, double scale) {
  return std::abs(wedge_to_volume(a, b) - expected) / std::max(1.0, scale);
}

}  // namespace

double scaled_residual(const Mat4& a, const Mat4& b) {
  return max_abs(a - b) / std::max({1.0, max_abs(a), max_abs(b)});
}

double scaled_residual(const TwoForm& a, const TwoForm& b) {
  return scaled_residual(a.coeff(), b.coeff());
}

double scaled_residual(const ThreeForm& a, const ThreeForm& b) {
  return (a - b).max_abs() / std::max({1.0, a.max_abs(), b.max_abs()});
}

double scaled_residual(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

BihermitianSample assemble_from_metric(const Metric4& g, const Endomorphism4& j_plus,
                                       const Endomorphism4& j_minus) {
  BihermitianSample s;
  s.g = g;
  s.J_plus = j_plus;
  s.J_minus = j_minus;
  s.p = angle_function(j_plus, j_minus);
  s.F_plus = fundamental_form(g, j_plus);
  s.F_minus = fundamental_form(g, j_minus);
  const Mat4 bracket = j_plus.mat * j_minus.mat - j_minus.mat * j_plus.mat;
  // Phi^g(u, v) = g([J+, J-] u, v) / 2
  s.Phi_g = TwoForm::from_matrix(0.5 * bracket.transpose() * g.mat);
  s.Psi_plus_g = TwoForm::from_matrix(-j_plus.mat.transpose() * s.Phi_g.coeff());
  s.Psi_minus_g = TwoForm::from_matrix(-j_minus.mat.transpose() * s.Phi_g.coeff());
  return s;
}

BihermitianSample assemble_structure(const QuotientTriple& triple, const RealPoint4& x, double t) {
  const Endomorphism4 j0 = frame::standard_j();
  const Metric4 g = metric_from_form(invariant_part(triple.psi_minus, j0), j0);
  const double lmin = min_eigenvalue(g);
  if (!(lmin > 0.0)) {
    std::ostringstream os;
    os << "(1,1)-part of Psi_- not positive at t = " << t << ": min eigenvalue " << lmin;
    throw NotPositive(os.str());
  }
  BihermitianSample s = assemble_from_metric(g, j0, acs_from_form_pair(triple.phi, triple.psi_minus));
  s.x = x;
  s.t = t;
  return s;
}

ResidualMap check_pointwise_algebra(const BihermitianSample& s) {
  const Mat4 id = Mat4::Identity();
  const Mat4& jp = s.J_plus.mat;
  const Mat4& jm = s.J_minus.mat;
  const Mat4& g = s.g.mat;
  const double p = s.p;
  const double vol = volume_density(s.g);
  const double q = 1.0 - p * p;

  ResidualMap r;
  r["acs_plus_square"] = scaled_residual(Mat4(jp * jp), Mat4(-id));
  r["acs_minus_square"] = scaled_residual(Mat4(jm * jm), Mat4(-id));
  r["metric_compat_plus"] = scaled_residual(Mat4(jp.transpose() * g * jp), g);
  r["metric_compat_minus"] = scaled_residual(Mat4(jm.transpose() * g * jm), g);
  r["anticommutator"] = scaled_residual(Mat4(jp * jm + jm * jp), Mat4(-2.0 * p * id));
  // Both fundamental forms are selfdual of length sqrt 2: F ^ F = 2 dv_g.
  r["same_orientation"] = std::max(wedge_residual(s.F_plus, s.F_plus, 2.0 * vol, 2.0 * vol),
                                   wedge_residual(s.F_minus, s.F_minus, 2.0 * vol, 2.0 * vol));
  r["f_exchange_plus"] = scaled_residual(s.F_plus, p * s.F_minus + s.Psi_minus_g);
  r["f_exchange_minus"] = scaled_residual(s.F_minus, p * s.F_plus - s.Psi_plus_g);

  const double vol_expected = 2.0 * q * vol;
  const double scale = 2.0 * vol;
  r["phi_square"] = wedge_residual(s.Phi_g, s.Phi_g, vol_expected, scale);
  r["psi_square"] = std::max(wedge_residual(s.Psi_plus_g, s.Psi_plus_g, vol_expected, scale),
                             wedge_residual(s.Psi_minus_g, s.Psi_minus_g, vol_expected, scale));
  r["phi_psi_orthogonal"] = std::max(wedge_residual(s.Phi_g, s.Psi_plus_g, 0.0, scale),
                                     wedge_residual(s.Phi_g, s.Psi_minus_g, 0.0, scale));
  r["psi_cross"] = wedge_residual(s.Psi_plus_g, s.Psi_minus_g,
                                  p * wedge_to_volume(s.Phi_g, s.Phi_g), scale);
  r["psi_minus_invariant_part"] =
      scaled_residual(invariant_part(s.Psi_minus_g, s.J_plus), q * s.F_plus);

  double sd = 0.0;
  for (const TwoForm* b : {&s.F_plus, &s.F_minus, &s.Phi_g, &s.Psi_plus_g, &s.Psi_minus_g})
    sd = std::max(sd, scaled_residual(hodge_star(s.g, *b), *b));
  r["selfduality"] = sd;
  return r;
}

ResidualMap check_criterion(const QuotientTriple& triple, const BihermitianSample& s) {
  const double phi2 = wedge_to_volume(triple.phi, triple.phi);
  const double scale = std::abs(phi2);
  const double q = 1.0 - s.p * s.p;

  ResidualMap r;
  r["criterion_square"] =
      std::max(wedge_residual(triple.psi_plus, triple.psi_plus, phi2, scale),
               wedge_residual(triple.psi_minus, triple.psi_minus, phi2, scale));
  r["criterion_orthogonal"] = std::max(wedge_residual(triple.phi, triple.psi_plus, 0.0, scale),
                                       wedge_residual(triple.phi, triple.psi_minus, 0.0, scale));
  r["criterion_cross"] = wedge_residual(triple.psi_plus, triple.psi_minus, s.p * phi2, scale);
  r["reconstruction"] = std::max({scaled_residual(s.Phi_g, q * triple.phi),
                                  scaled_residual(s.Psi_plus_g, q * triple.psi_plus),
                                  scaled_residual(s.Psi_minus_g, q * triple.psi_minus)});
  return r;
}

}  // namespace biherm
