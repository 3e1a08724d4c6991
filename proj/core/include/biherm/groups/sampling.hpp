#pragma once

#include "biherm/groups/hopf_group.hpp"
#include "biherm/tensor/forms.hpp"

#include <cstdint>
#include <vector>

namespace biherm {

/// Points of the fundamental annulus: u uniform on the unit sphere, r uniform
/// in [0, 1), sample = phi_r(u), so that the radial time of the sample is r.
/// Deterministic for a fixed seed.
std::vector<RealPoint4> fundamental_annulus_sample(std::uint64_t seed,
                                                   const ContractionParams& contraction,
                                                   std::size_t n);

}  // namespace biherm
