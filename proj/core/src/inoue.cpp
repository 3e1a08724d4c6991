#include "biherm/inoue/inoue.hpp"

#include "biherm/errors.hpp"
#include "biherm/potentials/potential.hpp"
#include "biherm/tensor/exterior.hpp"
#include "biherm/tensor/jet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace biherm {

namespace {
constexpr double kConstraintTol = 1e-10;
}  // namespace

std::string family_tag(InoueFamily family) { return family == InoueFamily::SM ? "S_M" : "S+-"; }

int weight_exponent(InoueFamily family) { return family == InoueFamily::SM ? 1 : 2; }

InouePoint apply(const AffineGenerator& g, const InouePoint& p) {
  return {g.alpha * p.w + g.a, g.beta * p.z + g.b * p.w + g.c};
}

std::complex<double> jacobian_determinant(const AffineGenerator& g) { return g.alpha * g.beta; }

double inoue_weight(InoueFamily family, const InouePoint& p) {
  return std::pow(p.w.imag(), weight_exponent(family));
}

void validate(const InoueGroupData& data) {
  if (data.generators.empty()) throw ConstraintViolation("no generators");
  for (std::size_t i = 0; i < data.generators.size(); ++i) {
    const auto& g = data.generators[i];
    std::ostringstream where;
    where << "generator " << i << ": ";
    if (!(g.alpha > 0.0)) throw ConstraintViolation(where.str() + "alpha must be positive");
    if (data.family == InoueFamily::SM) {
      const double lhs = g.alpha * std::norm(g.beta);
      if (std::abs(lhs - 1.0) > kConstraintTol) {
        std::ostringstream os;
        os << where.str() << "alpha |beta|^2 = " << lhs << " != 1";
        throw ConstraintViolation(os.str());
      }
      if (std::abs(g.b) > kConstraintTol)
        throw ConstraintViolation(where.str() + "S_M generators have no w-term in z");
    } else {
      const bool plus = std::abs(g.beta - 1.0) <= kConstraintTol;
      const bool minus = std::abs(g.beta + 1.0) <= kConstraintTol;
      if (!plus && !minus) throw ConstraintViolation(where.str() + "beta must be +1 or -1");
    }
  }
}

std::vector<InouePoint> inoue_samples(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<InouePoint> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::exp(std::log(0.1) + unit(rng) * (std::log(10.0) - std::log(0.1)));
    const double u = -1.0 + 2.0 * unit(rng);
    const double rho = std::sqrt(unit(rng));
    const double ang = 2.0 * M_PI * unit(rng);
    out.push_back({{u, v}, std::polar(rho, ang)});
  }
  return out;
}

ResidualStats verify_weight_invariance(const InoueGroupData& data,
                                       const std::vector<InouePoint>& samples) {
  validate(data);
  std::vector<double> res;
  res.reserve(samples.size() * data.generators.size());
  for (const auto& p : samples) {
    for (const auto& g : data.generators) {
      const double expected = std::norm(jacobian_determinant(g)) * inoue_weight(data.family, p);
      res.push_back(std::abs(inoue_weight(data.family, apply(g, p)) - expected) / expected);
    }
  }
  return ResidualStats::from(res);
}

InoueCurvature curvature_form(InoueFamily family, const InouePoint& p) {
  const int k = weight_exponent(family);
  const JetScalar v = JetScalar::variable(1, p.w.imag());
  const JetScalar phi = -double(k) * log(v);  // -log weight
  InoueCurvature out;
  // -i dd-bar log weight = i dd-bar phi = (1/2) dd^c phi with dd^c = 2i dd-bar.
  out.form = 0.5 * ddc_from_hessian(phi.hess());
  // i dw ^ dw-bar = 2 du ^ dv
  out.dw_dwbar_coefficient = 0.5 * out.form(0, 1);
  out.laplacian_density = phi.hess()(0, 0) + phi.hess()(1, 1);
  out.closed_form_density = k / (p.w.imag() * p.w.imag());
  out.min_eigenvalue = min_eigenvalue(metric_from_form(out.form, frame::standard_j()));
  return out;
}

DegreeVerdict degree_sign_report(const InoueGroupData& data, std::uint64_t seed, std::size_t n) {
  const auto samples = inoue_samples(seed, n);
  DegreeVerdict out;
  out.samples = n;
  out.invariance = verify_weight_invariance(data, samples);
  out.curvature_min_eigenvalue = std::numeric_limits<double>::infinity();
  out.min_pairing = std::numeric_limits<double>::infinity();

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Endomorphism4 j0 = frame::standard_j();
  for (const auto& p : samples) {
    const InoueCurvature c = curvature_form(data.family, p);
    out.curvature_min_eigenvalue = std::min(out.curvature_min_eigenvalue, c.min_eigenvalue);
    out.curvature_max_density = std::max(out.curvature_max_density, c.laplacian_density);
    out.density_max_rel_error = std::max(
        out.density_max_rel_error,
        std::abs(c.laplacian_density - c.closed_form_density) / c.closed_form_density);
    // Random positive (1,1)-form: fundamental form of a J0-hermitian SPD metric.
    Mat4 a;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = gauss(rng);
    Mat4 g = a.transpose() * a + 0.1 * Mat4::Identity();
    g = 0.5 * (g + j0.mat.transpose() * g * j0.mat);
    const TwoForm omega = fundamental_form(Metric4{g}, j0);
    out.min_pairing = std::min(out.min_pairing, wedge_to_volume(c.form, omega));
  }

  // The pointwise sign is what the exclusion needs: nonnegative everywhere and
  // strictly positive on an open set (here: at every sample, in the w-direction).
  const bool nonnegative = out.curvature_min_eigenvalue >= -1e-12 && out.min_pairing >= -1e-12;
  const bool positive_somewhere = out.curvature_max_density > 0.0;
  out.excluded = nonnegative && positive_somewhere && out.invariance.max < 1e-10;
  out.verdict = out.excluded
                    ? "canonical degree positive for every standard metric: no bihermitian structure"
                    : "no verdict: curvature sign or weight invariance not established";
  return out;
}

}  // namespace biherm
