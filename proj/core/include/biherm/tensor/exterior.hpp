#pragma once

#include "biherm/tensor/forms.hpp"

namespace biherm {

/// s with B ^ C = s dx1^dy1^dx2^dy2.
double wedge_to_volume(const TwoForm& b, const TwoForm& c);

/// alpha ^ B.
ThreeForm wedge(const OneForm& alpha, const TwoForm& b);

/// alpha ^ beta.
TwoForm wedge(const OneForm& alpha, const OneForm& beta);

/// Solves Psi(u, v) = -Phi(J u, v) for J, i.e. J = -Phi^{-1} Psi.
/// Throws DegenerateForm when Phi is not invertible.
Endomorphism4 acs_from_form_pair(const TwoForm& phi, const TwoForm& psi);

/// The J-invariant part (B(u, v) + B(Ju, Jv)) / 2.
TwoForm invariant_part(const TwoForm& b, const Endomorphism4& j);

/// The J-anti-invariant part (B(u, v) - B(Ju, Jv)) / 2.
TwoForm anti_invariant_part(const TwoForm& b, const Endomorphism4& j);

/// g(u, v) = F(u, J v). Symmetrized; positivity is not asserted.
Metric4 metric_from_form(const TwoForm& f, const Endomorphism4& j);

/// Fundamental form F(u, v) = g(J u, v).
TwoForm fundamental_form(const Metric4& g, const Endomorphism4& j);

/// B(A u, A v); the pullback of a constant form by a linear map A.
TwoForm pullback(const TwoForm& b, const Mat4& a);

/// Riemannian Hodge star on two-forms for the complex orientation.
/// Throws SingularMetric unless g is positive definite.
TwoForm hodge_star(const Metric4& g, const TwoForm& b);

/// Selfdual and anti-selfdual projections (B +- *B) / 2.
TwoForm selfdual_part(const Metric4& g, const TwoForm& b);
TwoForm anti_selfdual_part(const Metric4& g, const TwoForm& b);

/// Riemannian volume density sqrt(det g) (coefficient of dx1^dy1^dx2^dy2).
double volume_density(const Metric4& g);

/// |alpha|_g^2 for a one-form.
double norm2(const Metric4& g, const OneForm& alpha);

/// Action on covectors, (J alpha)(X) = -alpha(J X).
OneForm apply_to_covector(const Endomorphism4& j, const OneForm& alpha);

/// Smallest eigenvalue of the symmetric part of g.
double min_eigenvalue(const Metric4& g);

/// Angle function -trace(J+ J-) / 4.
double angle_function(const Endomorphism4& j_plus, const Endomorphism4& j_minus);

}  // namespace biherm
