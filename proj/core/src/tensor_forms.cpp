#include "biherm/errors.hpp"
#include "biherm/tensor/exterior.hpp"
#include "biherm/tensor/forms.hpp"

#include <cmath>

namespace biherm {

namespace {

// Sign of the permutation (i, j, k, l) of (0, 1, 2, 3); zero on repeats.
int levi_civita(int i, int j, int k, int l) {
  const std::array<int, 4> p{i, j, k, l};
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (p[a] == p[b]) return 0;
  int sign = 1;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (p[a] > p[b]) sign = -sign;
  return sign;
}

}  // namespace

double ThreeForm::eval(const Vec4& a, const Vec4& b, const Vec4& c) const {
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k) {
        // Sum over the six orderings of (i, j, k).
        const double det = a[i] * (b[j] * c[k] - b[k] * c[j]) - a[j] * (b[i] * c[k] - b[k] * c[i]) +
                           a[k] * (b[i] * c[j] - b[j] * c[i]);
        s += component(i, j, k) * det;
      }
  return s;
}

namespace frame {

Endomorphism4 standard_j() {
  Mat4 j = Mat4::Zero();
  j(1, 0) = 1.0;
  j(0, 1) = -1.0;
  j(3, 2) = 1.0;
  j(2, 3) = -1.0;
  return {j};
}

TwoForm phi0() { return TwoForm::basis(0, 2) - TwoForm::basis(1, 3); }
TwoForm psi0() { return TwoForm::basis(0, 3) + TwoForm::basis(1, 2); }
TwoForm omega0() { return TwoForm::basis(0, 1) + TwoForm::basis(2, 3); }

}  // namespace frame

double wedge_to_volume(const TwoForm& b, const TwoForm& c) {
  return b(0, 1) * c(2, 3) - b(0, 2) * c(1, 3) + b(0, 3) * c(1, 2) + b(1, 2) * c(0, 3) -
         b(1, 3) * c(0, 2) + b(2, 3) * c(0, 1);
}

ThreeForm wedge(const OneForm& alpha, const TwoForm& b) {
  const Vec4& a = alpha.coeff;
  ThreeForm out;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k)
        out.component(i, j, k) = a[i] * b(j, k) - a[j] * b(i, k) + a[k] * b(i, j);
  return out;
}

TwoForm wedge(const OneForm& alpha, const OneForm& beta) {
  const Mat4 outer = alpha.coeff * beta.coeff.transpose();
  return TwoForm::from_matrix(2.0 * outer);
}

Endomorphism4 acs_from_form_pair(const TwoForm& phi, const TwoForm& psi) {
  const Eigen::FullPivLU<Mat4> lu(phi.coeff());
  const double scale = std::max(phi.max_abs(), 1e-300);
  if (!lu.isInvertible() || std::abs(lu.determinant()) < 1e-12 * std::pow(scale, 4))
    throw DegenerateForm("first form of the pair is not invertible");
  return {-lu.solve(psi.coeff())};
}

TwoForm invariant_part(const TwoForm& b, const Endomorphism4& j) {
  return TwoForm::from_matrix(0.5 * (b.coeff() + j.mat.transpose() * b.coeff() * j.mat));
}

TwoForm anti_invariant_part(const TwoForm& b, const Endomorphism4& j) {
  return TwoForm::from_matrix(0.5 * (b.coeff() - j.mat.transpose() * b.coeff() * j.mat));
}

Metric4 metric_from_form(const TwoForm& f, const Endomorphism4& j) {
  const Mat4 g = f.coeff() * j.mat;
  return {0.5 * (g + g.transpose())};
}

TwoForm fundamental_form(const Metric4& g, const Endomorphism4& j) {
  return TwoForm::from_matrix(j.mat.transpose() * g.mat);
}

TwoForm pullback(const TwoForm& b, const Mat4& a) {
  return TwoForm::from_matrix(a.transpose() * b.coeff() * a);
}

double volume_density(const Metric4& g) {
  const double det = g.mat.determinant();
  if (!(det > 0.0)) throw SingularMetric("metric determinant is not positive");
  return std::sqrt(det);
}

TwoForm hodge_star(const Metric4& g, const TwoForm& b) {
  const Eigen::LLT<Mat4> llt(g.mat);
  if (llt.info() != Eigen::Success) throw SingularMetric("metric is not positive definite");
  const Mat4 ginv = llt.solve(Mat4::Identity());
  const double vol = std::sqrt(g.mat.determinant());
  const Mat4 raised = ginv * b.coeff() * ginv.transpose();  // B^{ij}
  Mat4 star = Mat4::Zero();
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) {
      if (k == l) continue;
      double s = 0.0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += raised(i, j) * levi_civita(i, j, k, l);
      star(k, l) = 0.5 * vol * s;
    }
  return TwoForm::from_matrix(star);
}

TwoForm selfdual_part(const Metric4& g, const TwoForm& b) { return 0.5 * (b + hodge_star(g, b)); }

TwoForm anti_selfdual_part(const Metric4& g, const TwoForm& b) {
  return 0.5 * (b - hodge_star(g, b));
}

double norm2(const Metric4& g, const OneForm& alpha) {
  return alpha.coeff.dot(g.mat.ldlt().solve(alpha.coeff));
}

OneForm apply_to_covector(const Endomorphism4& j, const OneForm& alpha) {
  return {-j.mat.transpose() * alpha.coeff};
}

double min_eigenvalue(const Metric4& g) {
  const Mat4 sym = 0.5 * (g.mat + g.mat.transpose());
  const Eigen::SelfAdjointEigenSolver<Mat4> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

double angle_function(const Endomorphism4& j_plus, const Endomorphism4& j_minus) {
  return -0.25 * (j_plus.mat * j_minus.mat).trace();
}

}  // namespace biherm
