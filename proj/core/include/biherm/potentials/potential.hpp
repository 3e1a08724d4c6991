#pragma once

#include "biherm/potentials/flow.hpp"
#include "biherm/stats.hpp"
#include "biherm/tensor/forms.hpp"
#include "biherm/tensor/jet.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace biherm {

/// Radial time r(z): the unique root of G(r, z) = |phi_{-r}(z)|^2 - 1.
/// Derivatives in z come from the implicit function theorem applied to the
/// second-order jet of G in (r, z).
///
/// Throws AmbiguousRadialTime when dG/dr <= 0 at the root, or when the shear
/// bracket shows more than one sign change.
JetScalar radial_time(const FlowSpec& spec, const RealPoint4& z);

/// Same root, seeded by Newton from `hint` (used along ODE trajectories).
/// Falls back to the bracketing path if Newton does not settle.
JetScalar radial_time(const FlowSpec& spec, const RealPoint4& z, double hint);

/// G(r, z) in plain doubles.
double radial_residual(const FlowSpec& spec, double r, const RealPoint4& z);

/// f = a^r as a jet.
JetScalar potential_jet(const FlowSpec& spec, const RealPoint4& z);
JetScalar potential_jet(const FlowSpec& spec, const RealPoint4& z, double r_hint);

struct PotentialEval {
  JetScalar r;
  JetScalar f;
  TwoForm ddc_f;      // dd^c f with d^c = i(dbar - d), i.e. 2i d dbar f
  TwoForm lck_form;   // dd^c f / f
  double min_metric_eigenvalue = 0.0;  // of g = ddc_f(., J0 .)
};

/// Throws NotPlurisubharmonic when the metric of dd^c f is not positive.
PotentialEval potential(const FlowSpec& spec, const RealPoint4& z);
/// Same computation without the positivity guard.
PotentialEval potential_unchecked(const FlowSpec& spec, const RealPoint4& z);

/// dd^c of a function with Hessian H: -H J0 - J0 H.
TwoForm ddc_from_hessian(const Mat4& hessian);

/// max |f(gamma z) - a f(z)| / f(z) over the samples.
ResidualStats verify_rescaling(const FlowSpec& spec,
                               const std::function<RealPoint4(const RealPoint4&)>& gamma,
                               std::span<const RealPoint4> samples,
                               std::optional<double> multiplier = std::nullopt);

/// max |f(h z) - f(z)| / f(z) over the samples and group elements.
ResidualStats verify_h_invariance(const FlowSpec& spec, std::span<const Mat2c> elements,
                                  std::span<const RealPoint4> samples);

}  // namespace biherm
