#pragma once

// One-parameter groups phi_t with phi_1 = gamma0.
//
//   Diagonal:  phi_t(z) = (alpha^t z1, beta^t z2)                      (lambda = 0)
//   Shear:     phi_t(z) = (beta^{mt} (z1 + t lhat z2^m), beta^t z2),   lhat = lambda beta^{-m}
//
// Complex powers use the branch arguments stored in the spec; moduli (and
// therefore the radial time) do not depend on the branch.

#include "biherm/groups/hopf_group.hpp"
#include "biherm/tensor/forms.hpp"

#include <variant>

namespace biherm {

struct DiagonalFlow {
  Complex alpha;
  Complex beta;
  double arg_alpha = 0.0;
  double arg_beta = 0.0;
};

struct ShearFlow {
  Complex beta;
  int m = 1;
  Complex lambda_hat;  // lambda * beta^{-m}
  double arg_beta = 0.0;
};

class FlowSpec {
 public:
  using Kind = std::variant<DiagonalFlow, ShearFlow>;

  explicit FlowSpec(Kind kind);
  static FlowSpec diagonal(Complex alpha, Complex beta);
  static FlowSpec shear(Complex beta, int m, Complex lambda);
  /// Diagonal when lambda = 0, shear otherwise.
  static FlowSpec from_contraction(const ContractionParams& c);

  const Kind& kind() const { return kind_; }
  bool is_shear() const { return std::holds_alternative<ShearFlow>(kind_); }
  /// a with f(gamma0 z) = a f(z): |alpha||beta| or |beta|^{m+1}.
  double multiplier() const { return multiplier_; }
  double log_multiplier() const { return log_multiplier_; }

 private:
  Kind kind_;
  double multiplier_ = 0.0;
  double log_multiplier_ = 0.0;
};

RealPoint4 flow_apply(const FlowSpec& spec, double t, const RealPoint4& z);

}  // namespace biherm
