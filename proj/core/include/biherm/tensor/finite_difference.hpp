#pragma once

// Central finite-difference stencils for sampled fields on R^4.
//
// A field is any callable Vec4 -> T where T supports T - T and T * double
// (double, OneForm, TwoForm, Mat4, ...). The Richardson variant combines
// steps h and h/2 to cancel the O(h^2) term.

#include "biherm/tensor/exterior.hpp"
#include "biherm/tensor/forms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <type_traits>

namespace biherm {

template <class T>
using Partials = std::array<T, 4>;

using NijenhuisTensor = std::array<std::array<Vec4, 4>, 4>;  // N[i][j] = N(e_i, e_j)

struct FdOptions {
  double step = 1e-3;       // base step, scaled by max(1, |x|)
  bool richardson = true;

  double scaled_step(const Vec4& x) const { return step * std::max(1.0, x.norm()); }
};

template <class Field>
auto partial_derivative(const Field& field, const Vec4& x, int i, double h, bool richardson) {
  using T = std::decay_t<decltype(field(x))>;
  const auto central = [&](double s) {
    Vec4 xp = x, xm = x;
    xp[i] += s;
    xm[i] -= s;
    T d = field(xp);
    d -= field(xm);
    d *= 0.5 / s;
    return d;
  };
  if (!richardson) return central(h);
  T fine = central(0.5 * h);
  fine *= 4.0;
  fine -= central(h);
  fine *= 1.0 / 3.0;
  return fine;
}

template <class Field>
auto partials(const Field& field, const Vec4& x, const FdOptions& opt = {}) {
  using T = decltype(partial_derivative(field, x, 0, 1.0, false));
  const double h = opt.scaled_step(x);
  Partials<T> out;
  for (int i = 0; i < 4; ++i) out[i] = partial_derivative(field, x, i, h, opt.richardson);
  return out;
}

/// (dB)_{ijk} = d_i B_jk - d_j B_ik + d_k B_ij.
ThreeForm exterior_derivative(const Partials<TwoForm>& db);

/// (d alpha)_{ij} = d_i alpha_j - d_j alpha_i.
TwoForm exterior_derivative(const Partials<OneForm>& dalpha);

/// d f for a scalar field.
OneForm exterior_derivative(const Partials<double>& df);

template <class Field>
auto exterior_derivative(const Field& field, const RealPoint4& x, const FdOptions& opt = {}) {
  return exterior_derivative(partials(field, x.coords(), opt));
}

/// N(u, v) = [Ju, Jv] - J[Ju, v] - J[u, Jv] - [u, v] on coordinate fields,
/// from J at the point and its first partials.
NijenhuisTensor nijenhuis(const Mat4& j, const Partials<Mat4>& dj);

template <class JField>
NijenhuisTensor nijenhuis(const JField& jfield, const RealPoint4& x, const FdOptions& opt = {}) {
  const auto as_mat = [&](const Vec4& y) -> Mat4 { return jfield(y).mat; };
  return nijenhuis(as_mat(x.coords()), partials(as_mat, x.coords(), opt));
}

double max_abs(const NijenhuisTensor& n);

}  // namespace biherm
