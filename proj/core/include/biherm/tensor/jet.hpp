#pragma once

// Second-order forward-mode jets: value, gradient and Hessian of a scalar
// with respect to N independent variables. Arithmetic propagates exact
// product and chain rules, so the Hessian stays symmetric.

#include <Eigen/Dense>

#include <cmath>

namespace biherm {

template <int N>
class Jet {
 public:
  using Grad = Eigen::Matrix<double, N, 1>;
  using Hess = Eigen::Matrix<double, N, N>;

  Jet() = default;
  Jet(double v) : value_(v) {}  // NOLINT: constants promote implicitly
  Jet(double v, const Grad& g, const Hess& h) : value_(v), grad_(g), hess_(h) {}

  /// The independent variable x_i evaluated at v.
  static Jet variable(int i, double v) {
    Jet j(v);
    j.grad_[i] = 1.0;
    return j;
  }

  double value() const { return value_; }
  const Grad& grad() const { return grad_; }
  const Hess& hess() const { return hess_; }

  Jet& operator+=(const Jet& o) {
    value_ += o.value_;
    grad_ += o.grad_;
    hess_ += o.hess_;
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    value_ -= o.value_;
    grad_ -= o.grad_;
    hess_ -= o.hess_;
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    hess_ = o.value_ * hess_ + value_ * o.hess_ + grad_ * o.grad_.transpose() +
            o.grad_ * grad_.transpose();
    grad_ = o.value_ * grad_ + value_ * o.grad_;
    value_ *= o.value_;
    return *this;
  }
  Jet& operator*=(double s) {
    value_ *= s;
    grad_ *= s;
    hess_ *= s;
    return *this;
  }
  Jet& operator/=(const Jet& o) { return *this *= reciprocal(o); }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
  friend Jet operator/(Jet a, const Jet& b) { return a /= b; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator-(Jet a) { return a *= -1.0; }

  /// Applies a scalar function given its value and first two derivatives.
  friend Jet chain(const Jet& a, double f, double df, double d2f) {
    return Jet(f, df * a.grad_, df * a.hess_ + d2f * a.grad_ * a.grad_.transpose());
  }

  friend Jet reciprocal(const Jet& a) {
    const double inv = 1.0 / a.value_;
    return chain(a, inv, -inv * inv, 2.0 * inv * inv * inv);
  }
  friend Jet exp(const Jet& a) {
    const double e = std::exp(a.value_);
    return chain(a, e, e, e);
  }
  friend Jet log(const Jet& a) {
    const double inv = 1.0 / a.value_;
    return chain(a, std::log(a.value_), inv, -inv * inv);
  }
  friend Jet sqrt(const Jet& a) {
    const double s = std::sqrt(a.value_);
    return chain(a, s, 0.5 / s, -0.25 / (s * a.value_));
  }
  friend Jet pow(const Jet& a, double p) {
    const double v = std::pow(a.value_, p);
    return chain(a, v, p * v / a.value_, p * (p - 1.0) * v / (a.value_ * a.value_));
  }

 private:
  double value_ = 0.0;
  Grad grad_ = Grad::Zero();
  Hess hess_ = Hess::Zero();
};

/// Derivative carrier on R^4 (x1, y1, x2, y2).
using JetScalar = Jet<4>;

}  // namespace biherm
