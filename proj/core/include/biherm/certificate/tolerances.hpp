#pragma once

#include <array>
#include <string>
#include <string_view>

namespace biherm {

/// Tolerance tiers. FD noise grows roughly one order per derivative layer.
enum class Tier {
  Algebraic,      // linear-solve level identities
  Quotient,       // hypotheses delivered by the flow integrator
  FirstOrder,     // one FD layer
  Integrability,  // Nijenhuis and (1,2)-type checks
  SecondOrder,    // two FD layers
  LeeScalar,      // three FD layers
  Equivariance,   // pipeline evaluated at gamma x versus x
  Angle,          // |p| < 1 (strict)
};

struct Tolerances {
  double algebraic = 1e-9;
  double quotient = 1e-7;
  double first_order = 1e-6;
  double integrability = 1e-5;
  double second_order = 1e-4;
  double lee_scalar = 1e-3;
  double equivariance = 1e-7;
  double angle = 1.0;

  double get(Tier tier) const;
  double& get(Tier tier);
  /// Sets a tier by name; throws ParseError for unknown names or values <= 0.
  void set(std::string_view name, double value);
};

inline constexpr std::array<Tier, 8> kAllTiers = {
    Tier::Algebraic,     Tier::Quotient,    Tier::FirstOrder, Tier::Integrability,
    Tier::SecondOrder,   Tier::LeeScalar,   Tier::Equivariance, Tier::Angle};

std::string_view tier_name(Tier tier);

}  // namespace biherm
