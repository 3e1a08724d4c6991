#pragma once

// Pointwise bihermitian data and its algebraic identities.
//
// From a quotient triple (Phi, Psi_+, Psi_-) with positive (1,1)-part of
// Psi_- the structure is
//   g = (Psi_-)^{1,1}(., J0 .),  J_+ = J0,  J_- from Psi_- = -Phi(J_- ., .),
//   p = -tr(J_+ J_-) / 4,
//   Phi^g = g([J_+, J_-] ., .) / 2,  Psi_pm^g = -Phi^g(J_pm ., .),  F_pm = g(J_pm ., .).

#include "biherm/deformation/deformation.hpp"
#include "biherm/tensor/forms.hpp"

#include <map>
#include <string>

namespace biherm {

struct BihermitianSample {
  RealPoint4 x;
  double t = 0.0;
  Metric4 g;
  Endomorphism4 J_plus;
  Endomorphism4 J_minus;
  double p = 1.0;
  TwoForm F_plus, F_minus;
  TwoForm Phi_g, Psi_plus_g, Psi_minus_g;
  // Filled by the differential stage.
  OneForm theta_plus, theta_minus, tau_g;
};

/// Named residuals; std::map keeps the key order stable.
using ResidualMap = std::map<std::string, double>;

/// Hitchin assembly. Throws NotPositive unless (Psi_-)^{1,1} gives a
/// positive definite metric.
BihermitianSample assemble_structure(const QuotientTriple& triple, const RealPoint4& x, double t);

/// Derived forms of an arbitrary (g, J_+, J_-); no positivity guard.
BihermitianSample assemble_from_metric(const Metric4& g, const Endomorphism4& j_plus,
                                       const Endomorphism4& j_minus);

/// max |a - b| / max(1, max |a|, max |b|).
double scaled_residual(const Mat4& a, const Mat4& b);
double scaled_residual(const TwoForm& a, const TwoForm& b);
double scaled_residual(const ThreeForm& a, const ThreeForm& b);
double scaled_residual(double a, double b);

/// Almost complex, compatibility, anticommutation and all relations among
/// F_pm, Phi^g, Psi_pm^g including selfduality.
ResidualMap check_pointwise_algebra(const BihermitianSample& s);

/// Hypotheses of the criterion on the quotient triple, and recovery of the
/// triple from the assembled structure: Phi^g = (1 - p^2) Phi, Psi_pm^g = (1 - p^2) Psi_pm.
ResidualMap check_criterion(const QuotientTriple& triple, const BihermitianSample& s);

}  // namespace biherm
