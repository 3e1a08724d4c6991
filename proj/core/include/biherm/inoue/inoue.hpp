#pragma once

// Canonical-bundle weight on Inoue surfaces (quotients of H x C).
//
// Generators are affine maps (w, z) -> (alpha w + a, beta z + b w + c) with
// alpha > 0 and a real. The weight Im(w)^k with k = 1 (S_M) or k = 2 (S+-)
// satisfies weight(gamma p) = |det D gamma|^2 weight(p) and defines a
// hermitian metric on the canonical bundle with curvature -i dd-bar log weight.
//
// Frame on H x C: (u, v, x, y) with w = u + i v, z = x + i y.

#include "biherm/stats.hpp"
#include "biherm/tensor/forms.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace biherm {

enum class InoueFamily { SM, SPlusMinus };

std::string family_tag(InoueFamily family);  // "S_M" or "S+-"
int weight_exponent(InoueFamily family);       // 1 or 2

struct AffineGenerator {
  double alpha = 1.0;
  double a = 0.0;
  std::complex<double> beta{1.0, 0.0};
  std::complex<double> b{0.0, 0.0};
  std::complex<double> c{0.0, 0.0};
};

struct InoueGroupData {
  InoueFamily family = InoueFamily::SM;
  std::vector<AffineGenerator> generators;
};

struct InouePoint {
  std::complex<double> w;  // Im(w) > 0
  std::complex<double> z;
};

InouePoint apply(const AffineGenerator& g, const InouePoint& p);
/// Holomorphic Jacobian determinant alpha * beta.
std::complex<double> jacobian_determinant(const AffineGenerator& g);

double inoue_weight(InoueFamily family, const InouePoint& p);

/// Throws ConstraintViolation: alpha > 0, S_M needs alpha |beta|^2 = 1 and
/// b = 0; S+- needs beta = +-1 (tolerance 1e-10).
void validate(const InoueGroupData& data);

/// Im(w) log-uniform in [0.1, 10], Re(w) uniform in [-1, 1], z uniform in the unit disk.
std::vector<InouePoint> inoue_samples(std::uint64_t seed, std::size_t n);

/// Relative residual of weight(gamma p) = |det|^2 weight(p). Validates first.
ResidualStats verify_weight_invariance(const InoueGroupData& data, const std::vector<InouePoint>& samples);

struct InoueCurvature {
  TwoForm form;                     // -i dd-bar log weight as a real 2-form
  double dw_dwbar_coefficient = 0;  // c with form = c * i dw ^ d(w-bar)
  double laplacian_density = 0;     // Laplacian in w of -log weight = 4 c
  double closed_form_density = 0;   // k / Im(w)^2
  double min_eigenvalue = 0;        // of the hermitian form, >= 0
};

/// Second-order jet of -log weight; no closed form is used for the form itself.
InoueCurvature curvature_form(InoueFamily family, const InouePoint& p);

struct DegreeVerdict {
  bool excluded = false;            // canonical degree positive, no bihermitian metric
  std::string verdict;
  ResidualStats invariance;
  double curvature_min_eigenvalue = 0;   // over samples
  double curvature_max_density = 0;
  double density_max_rel_error = 0;      // jet density vs k / Im(w)^2
  double min_pairing = 0;                // min of curvature ^ omega over positive (1,1)-forms
  std::size_t samples = 0;
};

/// Invariance and curvature sign over samples. Throws ConstraintViolation on invalid data.
DegreeVerdict degree_sign_report(const InoueGroupData& data, std::uint64_t seed, std::size_t n);

}  // namespace biherm
