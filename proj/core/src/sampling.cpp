#include "biherm/groups/sampling.hpp"

#include "biherm/potentials/flow.hpp"

#include <random>

namespace biherm {

std::vector<RealPoint4> fundamental_annulus_sample(std::uint64_t seed,
                                                   const ContractionParams& contraction,
                                                   std::size_t n) {
  const FlowSpec spec = FlowSpec::from_contraction(contraction);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<RealPoint4> out;
  out.reserve(n);
  while (out.size() < n) {
    Vec4 u(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
    const double len = u.norm();
    if (len < 1e-8) continue;
    const double r = unit(rng);
    out.push_back(flow_apply(spec, r, RealPoint4(u / len)));
  }
  return out;
}

}  // namespace biherm
