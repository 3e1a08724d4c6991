#pragma once

// Pointwise exterior algebra on R^4 = C^2.
//
// Frame order is (x1, y1, x2, y2) with z_k = x_k + i y_k, and the volume
// form is dx1^dy1^dx2^dy2 (the complex orientation). A two-form B is stored
// as an antisymmetric matrix with B(u, v) = u^T B v; an endomorphism acts on
// column vectors.

#include <Eigen/Dense>

#include <array>
#include <complex>

namespace biherm {

using Vec4 = Eigen::Matrix<double, 4, 1>;
using Mat4 = Eigen::Matrix<double, 4, 4>;

/// A point of C^2 \ {0} in real coordinates.
class RealPoint4 {
 public:
  RealPoint4() = default;
  explicit RealPoint4(const Vec4& c) : coords_(c) {}
  RealPoint4(double x1, double y1, double x2, double y2) : coords_(x1, y1, x2, y2) {}
  static RealPoint4 from_complex(std::complex<double> z1, std::complex<double> z2) {
    return RealPoint4(z1.real(), z1.imag(), z2.real(), z2.imag());
  }

  const Vec4& coords() const { return coords_; }
  double operator[](int i) const { return coords_[i]; }
  std::complex<double> z1() const { return {coords_[0], coords_[1]}; }
  std::complex<double> z2() const { return {coords_[2], coords_[3]}; }
  double norm2() const { return coords_.squaredNorm(); }
  double norm() const { return coords_.norm(); }

 private:
  Vec4 coords_ = Vec4::Zero();
};

struct OneForm {
  Vec4 coeff = Vec4::Zero();

  OneForm& operator+=(const OneForm& o) { coeff += o.coeff; return *this; }
  OneForm& operator-=(const OneForm& o) { coeff -= o.coeff; return *this; }
  OneForm& operator*=(double s) { coeff *= s; return *this; }
  friend OneForm operator+(OneForm a, const OneForm& b) { return a += b; }
  friend OneForm operator-(OneForm a, const OneForm& b) { return a -= b; }
  friend OneForm operator*(double s, OneForm a) { return a *= s; }
  friend OneForm operator*(OneForm a, double s) { return a *= s; }
  double max_abs() const { return coeff.cwiseAbs().maxCoeff(); }
};

/// Antisymmetric 4x4 coefficient array; antisymmetry is exact by construction.
class TwoForm {
 public:
  TwoForm() = default;
  /// Antisymmetrizes: returns the form with coefficients (M - M^T) / 2.
  static TwoForm from_matrix(const Mat4& m) {
    TwoForm b;
    b.coeff_ = 0.5 * (m - m.transpose());
    return b;
  }
  /// a * e^i ^ e^j.
  static TwoForm basis(int i, int j, double a = 1.0) {
    TwoForm b;
    b.coeff_(i, j) = a;
    b.coeff_(j, i) = -a;
    return b;
  }

  const Mat4& coeff() const { return coeff_; }
  double operator()(int i, int j) const { return coeff_(i, j); }
  double eval(const Vec4& u, const Vec4& v) const { return u.dot(coeff_ * v); }
  double max_abs() const { return coeff_.cwiseAbs().maxCoeff(); }

  TwoForm& operator+=(const TwoForm& o) { coeff_ += o.coeff_; return *this; }
  TwoForm& operator-=(const TwoForm& o) { coeff_ -= o.coeff_; return *this; }
  TwoForm& operator*=(double s) { coeff_ *= s; return *this; }
  friend TwoForm operator+(TwoForm a, const TwoForm& b) { return a += b; }
  friend TwoForm operator-(TwoForm a, const TwoForm& b) { return a -= b; }
  friend TwoForm operator-(TwoForm a) { return a *= -1.0; }
  friend TwoForm operator*(double s, TwoForm a) { return a *= s; }
  friend TwoForm operator*(TwoForm a, double s) { return a *= s; }
  friend TwoForm operator/(TwoForm a, double s) { return a *= 1.0 / s; }

 private:
  Mat4 coeff_ = Mat4::Zero();
};

/// Three-form stored by its four independent components
/// c[0] = B_{123}, c[1] = B_{023}, c[2] = B_{013}, c[3] = B_{012}
/// (component k omits index k).
struct ThreeForm {
  Vec4 coeff = Vec4::Zero();

  /// Component for the increasing triple (i < j < k).
  double component(int i, int j, int k) const { return coeff[6 - i - j - k]; }
  double& component(int i, int j, int k) { return coeff[6 - i - j - k]; }
  /// Fully antisymmetric evaluation on three vectors.
  double eval(const Vec4& a, const Vec4& b, const Vec4& c) const;
  double max_abs() const { return coeff.cwiseAbs().maxCoeff(); }

  ThreeForm& operator+=(const ThreeForm& o) { coeff += o.coeff; return *this; }
  ThreeForm& operator-=(const ThreeForm& o) { coeff -= o.coeff; return *this; }
  ThreeForm& operator*=(double s) { coeff *= s; return *this; }
  friend ThreeForm operator+(ThreeForm a, const ThreeForm& b) { return a += b; }
  friend ThreeForm operator-(ThreeForm a, const ThreeForm& b) { return a -= b; }
  friend ThreeForm operator*(double s, ThreeForm a) { return a *= s; }
};

struct Endomorphism4 {
  Mat4 mat = Mat4::Identity();

  friend Endomorphism4 operator*(const Endomorphism4& a, const Endomorphism4& b) {
    return {a.mat * b.mat};
  }
  Vec4 operator()(const Vec4& v) const { return mat * v; }
};

/// Symmetric bilinear form g(u, v) = u^T g v.
struct Metric4 {
  Mat4 mat = Mat4::Identity();
};

namespace frame {

/// Multiplication by i: dx_k -> dy_k on vectors.
Endomorphism4 standard_j();
/// Real part of dz1 ^ dz2: dx1^dx2 - dy1^dy2.
TwoForm phi0();
/// Imaginary part of dz1 ^ dz2: dx1^dy2 + dy1^dx2.
TwoForm psi0();
/// Standard Kahler form dx1^dy1 + dx2^dy2.
TwoForm omega0();

}  // namespace frame

}  // namespace biherm
