#pragma once

// Differential identities of the assembled structure, from finite
// differences of a structure field sampled on a stencil.
//
// Lee forms use the codifferential of the Riemannian divergence convention,
//   (delta F)^j = -(1/sqrt g) d_i (sqrt g F^{ij}),   theta = J (delta F),
// which gives dF = theta ^ F (theta = d phi for F = e^phi omega0).

#include "biherm/certificate/structure.hpp"
#include "biherm/tensor/finite_difference.hpp"

#include <functional>

namespace biherm {

struct LocalData {
  QuotientTriple triple;
  BihermitianSample s;
  DeformationState state;
};

/// A structure field; may throw (NotPositive, numerical errors).
using StructureField = std::function<LocalData(const Vec4&)>;

/// Center plus +-h and +-h/2 along each axis (the half steps only with Richardson).
struct Stencil {
  Vec4 center;
  double h = 1e-3;
  bool richardson = true;
  LocalData c;
  std::array<LocalData, 4> plus, minus, plus_half, minus_half;

  /// d_i of q(sample) for each axis i.
  template <class Q>
  auto partials(const Q& q) const {
    using T = std::decay_t<decltype(q(c))>;
    Partials<T> out;
    for (int i = 0; i < 4; ++i) {
      T d = q(plus[i]);
      d -= q(minus[i]);
      d *= 0.5 / h;
      if (richardson) {
        T fine = q(plus_half[i]);
        fine -= q(minus_half[i]);
        fine *= 4.0 / h;  // 4 * (.) / (2 * h/2)
        fine -= d;
        fine *= 1.0 / 3.0;
        d = fine;
      }
      out[i] = d;
    }
    return out;
  }
};

Stencil build_stencil(const StructureField& field, const Vec4& x, double h, bool richardson);
/// Same, reusing an already evaluated center.
Stencil build_stencil(const StructureField& field, const LocalData& center, const Vec4& x, double h,
                      bool richardson);

/// Lee forms theta_pm = J_pm (delta F_pm) at the stencil center.
std::pair<OneForm, OneForm> lee_forms(const Stencil& st);

/// Lee form of a single hermitian pair given as fields (for synthetic tests).
OneForm lee_form(const std::function<Metric4(const Vec4&)>& g,
                 const std::function<Endomorphism4(const Vec4&)>& j, const Vec4& x,
                 const FdOptions& opt = {});

/// Norm of the (1,2)-part of the complex three-form re + i im with respect to J:
/// max over frame vectors of |eta(U, conj V, conj W)|, U = e - iJe.
double type_12_norm(const ThreeForm& re, const ThreeForm& im, const Endomorphism4& j);

struct DifferentialOptions {
  double step = 1e-3;          // scaled by max(1, |x|)
  bool richardson = true;
  bool second_layer = true;    // Lee scalar and d(theta_+ + theta_-)
  bool inner_richardson = true;
};

struct DifferentialResult {
  ResidualMap residuals;
  OneForm theta_plus, theta_minus, tau_g;
  std::size_t evaluations = 0;
};

/// First-layer residuals:
///   quotient_d_phi, quotient_d_psi_plus, quotient_d_psi_minus  dB - tau ^ B
///   lee_consistency   dF_pm - theta_pm ^ F_pm
///   poisson_identity  d Omega_pm^g - (theta_+/2 + theta_-/2 + d log(1-p^2)) ^ Omega_pm^g
///   nijenhuis_plus, nijenhuis_minus
///   type_12           (1,2)-part of d(Phi + i Psi_-) w.r.t. J_-
/// second layer:
///   lee_scalar        2 delta theta_+ + |theta_+|^2 - 2 delta theta_- - |theta_-|^2
///   lee_sum_selfdual  selfdual part of d(theta_+ + theta_-)
///   lee_sum_closed    d(theta_+ + theta_-)
DifferentialResult check_differential_identities(const StructureField& field, const LocalData& center,
                                                 const Vec4& x, const DifferentialOptions& opt = {});

}  // namespace biherm
