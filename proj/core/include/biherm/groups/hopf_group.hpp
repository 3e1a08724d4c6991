#pragma once

// Fundamental-group data of a Hopf surface: a contraction
//   gamma0(z1, z2) = (alpha z1 + lambda z2^m, beta z2),
//   0 < |alpha| <= |beta| < 1,  lambda (alpha - beta^m) = 0,
// together with a finite group H of unitary 2x2 matrices.

#include "biherm/tensor/forms.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace biherm {

using Complex = std::complex<double>;
using Mat2c = Eigen::Matrix2cd;

namespace tolerance {
inline constexpr double kUnitary = 1e-10;       // unitarity, positivity of alpha*beta, det(h) = 1
inline constexpr double kGroupMatch = 1e-8;     // Frobenius distance identifying group elements
inline constexpr double kResonance = 1e-10;     // lambda (alpha - beta^m) = 0
}  // namespace tolerance

struct ContractionParams {
  Complex alpha{0.5, 0.0};
  Complex beta{0.5, 0.0};
  Complex lambda{0.0, 0.0};
  int m = 1;
  // Arguments used for the complex powers alpha^t, beta^t. Must agree with
  // arg(alpha), arg(beta) modulo 2 pi; principal values when not supplied.
  std::optional<double> arg_alpha;
  std::optional<double> arg_beta;

  double branch_alpha() const { return arg_alpha.value_or(std::arg(alpha)); }
  double branch_beta() const { return arg_beta.value_or(std::arg(beta)); }
  bool has_shear() const { return std::abs(lambda) > tolerance::kResonance; }

  /// Empty when the Kato normal-form constraints hold, else the reason.
  std::optional<std::string> violation() const;
};

struct HopfGroupData {
  ContractionParams contraction;
  std::vector<Mat2c> h_generators;
};

/// gamma0^n (n may be negative).
struct ContractionPower {
  int n = 1;
};
struct UnitaryElement {
  Mat2c h = Mat2c::Identity();
};

/// A word in the generators, applied right to left: atoms.back() acts first.
class GroupElement {
 public:
  using Atom = std::variant<ContractionPower, UnitaryElement>;

  GroupElement() = default;
  static GroupElement contraction(int n = 1) { return GroupElement({ContractionPower{n}}); }
  static GroupElement unitary(const Mat2c& h) { return GroupElement({UnitaryElement{h}}); }

  /// (a * b)(z) = a(b(z)).
  friend GroupElement operator*(const GroupElement& a, const GroupElement& b);

  RealPoint4 apply(const ContractionParams& c, const RealPoint4& z) const;
  /// Holomorphic 2x2 Jacobian at z.
  Mat2c holomorphic_jacobian(const ContractionParams& c, const RealPoint4& z) const;
  /// Real 4x4 form of the holomorphic Jacobian in the (x1, y1, x2, y2) frame.
  Mat4 jacobian(const ContractionParams& c, const RealPoint4& z) const;
  /// Multiplier on dz1 ^ dz2 (determinant of the holomorphic Jacobian).
  Complex canonical_multiplier(const ContractionParams& c, const RealPoint4& z) const;

  const std::vector<Atom>& atoms() const { return atoms_; }

 private:
  explicit GroupElement(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}
  std::vector<Atom> atoms_;
};

/// Real 4x4 matrix of a complex 2x2 matrix acting on (z1, z2).
Mat4 realify(const Mat2c& a);

bool is_unitary(const Mat2c& h, double tol = tolerance::kUnitary);

/// Closure of the generators under multiplication, identity first.
/// Throws NotFinite once more than `cap` elements are found.
std::vector<Mat2c> group_closure(const std::vector<Mat2c>& gens, std::size_t cap = 1000);

/// Smallest n >= 1 with h^n = Id, or 0 if none up to `cap`.
int element_order(const Mat2c& h, int cap = 1000);

struct RealTypeResult {
  bool real_type = false;
  bool product_positive = false;   // alpha * beta in R+*
  bool special_unitary = false;    // det(h) = 1 on the closure
  Complex product;                 // alpha * beta
  std::vector<Complex> determinants;
  std::vector<std::string> diagnostics;
};

/// The canonical bundle is of real type iff alpha*beta in R+* and H in SU(2).
/// Propagates NotFinite from the closure.
RealTypeResult real_type_check(const HopfGroupData& data);

struct CaseA {};
struct CaseB {
  double a = 0.0;  // |alpha| |beta|
  int ell = 1;     // order of H
};
struct CaseC {
  double a = 0.0;  // |beta|^{m+1}
  int ell = 1;
  int k = 1;       // m = k ell - 1
};
struct NotRealType {
  std::string reason;
};
struct Invalid {
  std::string reason;
};

using CaseLabel = std::variant<CaseA, CaseB, CaseC, NotRealType, Invalid>;

struct Classification {
  CaseLabel label;
  std::vector<std::string> diagnostics;
  std::size_t group_order = 0;

  bool admits_construction() const {
    return std::holds_alternative<CaseA>(label) || std::holds_alternative<CaseB>(label) ||
           std::holds_alternative<CaseC>(label);
  }
};

/// Short machine-readable tag: "A", "B", "C", "NotRealType", "Invalid".
std::string case_tag(const CaseLabel& label);

/// Total: every input receives exactly one label; never throws.
Classification classify(const HopfGroupData& data);

/// Does h commute with gamma0 as maps of C^2 (checked on fixed probe points)?
bool commutes_with_contraction(const ContractionParams& c, const Mat2c& h, double tol = 1e-9);

}  // namespace biherm
