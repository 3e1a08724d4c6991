#include "biherm/certificate/tolerances.hpp"

#include "biherm/errors.hpp"

#include <cmath>

namespace biherm {

std::string_view tier_name(Tier tier) {
  switch (tier) {
    case Tier::Algebraic: return "algebraic";
    case Tier::Quotient: return "quotient";
    case Tier::FirstOrder: return "first_order";
    case Tier::Integrability: return "integrability";
    case Tier::SecondOrder: return "second_order";
    case Tier::LeeScalar: return "lee_scalar";
    case Tier::Equivariance: return "equivariance";
    case Tier::Angle: return "angle";
  }
  return "unknown";
}

double& Tolerances::get(Tier tier) {
  switch (tier) {
    case Tier::Algebraic: return algebraic;
    case Tier::Quotient: return quotient;
    case Tier::FirstOrder: return first_order;
    case Tier::Integrability: return integrability;
    case Tier::SecondOrder: return second_order;
    case Tier::LeeScalar: return lee_scalar;
    case Tier::Equivariance: return equivariance;
    case Tier::Angle: return angle;
  }
  return algebraic;
}

double Tolerances::get(Tier tier) const { return const_cast<Tolerances*>(this)->get(tier); }

void Tolerances::set(std::string_view name, double value) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw ParseError("tolerance for '" + std::string(name) + "' must be positive and finite");
  for (Tier tier : kAllTiers) {
    if (tier_name(tier) == name) {
      get(tier) = value;
      return;
    }
  }
  throw ParseError("unknown tolerance tier '" + std::string(name) + "'");
}

}  // namespace biherm
