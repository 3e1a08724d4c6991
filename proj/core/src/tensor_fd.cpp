#include "biherm/tensor/finite_difference.hpp"

namespace biherm {

ThreeForm exterior_derivative(const Partials<TwoForm>& db) {
  ThreeForm out;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k)
        out.component(i, j, k) = db[i](j, k) - db[j](i, k) + db[k](i, j);
  return out;
}

TwoForm exterior_derivative(const Partials<OneForm>& dalpha) {
  Mat4 m = Mat4::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = dalpha[i].coeff[j] - dalpha[j].coeff[i];
  return TwoForm::from_matrix(m);
}

OneForm exterior_derivative(const Partials<double>& df) {
  return {Vec4(df[0], df[1], df[2], df[3])};
}

NijenhuisTensor nijenhuis(const Mat4& j, const Partials<Mat4>& dj) {
  // Directional derivative of the column field J e_b along the vector v.
  const auto along = [&](const Vec4& v, int b) {
    Vec4 out = Vec4::Zero();
    for (int l = 0; l < 4; ++l) out += v[l] * dj[l].col(b);
    return out;
  };
  NijenhuisTensor n{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      // [J e_a, J e_b] = (J e_a . grad)(J e_b) - (J e_b . grad)(J e_a)
      const Vec4 bracket_jj = along(j.col(a), b) - along(j.col(b), a);
      // [J e_a, e_b] = -d_b (J e_a);  [e_a, J e_b] = d_a (J e_b)
      const Vec4 bracket_j1 = -dj[b].col(a);
      const Vec4 bracket_1j = dj[a].col(b);
      n[a][b] = bracket_jj - j * bracket_j1 - j * bracket_1j;
    }
  return n;
}

double max_abs(const NijenhuisTensor& n) {
  double m = 0.0;
  for (const auto& row : n)
    for (const auto& v : row) m = std::max(m, v.cwiseAbs().maxCoeff());
  return m;
}

}  // namespace biherm
