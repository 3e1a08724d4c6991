#include "biherm/oracles.hpp"

#include "biherm/deformation/deformation.hpp"
#include "biherm/groups/hopf_group.hpp"
#include "biherm/potentials/potential.hpp"
#include "biherm/tensor/exterior.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>

namespace biherm {

namespace {

using Cx = std::complex<double>;

Vec4 random_point(std::mt19937_64& rng, double lo = 0.3, double hi = 2.0) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> radius(lo, hi);
  Vec4 u(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
  return radius(rng) * u / u.norm();
}

OracleResult finish(std::string name, double value, double tol) {
  return {std::move(name), value, tol, value < tol};
}

int permutation_sign(const std::array<int, 4>& p) {
  int inversions = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 ? -1 : 1;
}

}  // namespace

OracleResult oracle_rotation_flow(std::uint64_t seed, std::size_t n, double t) {
  std::mt19937_64 rng(seed);
  const FlowSpec spec = FlowSpec::diagonal({0.5, 0.0}, {0.5, 0.0});
  const double c = std::cos(2.0 * t), s = std::sin(2.0 * t);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const RealPoint4 x(random_point(rng));
    const Cx z1 = x.z1(), z2 = x.z2();
    const Cx w1 = c * z1 + s * std::conj(z2);
    const Cx w2 = c * z2 - s * std::conj(z1);
    const auto state = integrate_flow(spec, t, x).state;
    worst = std::max({worst, std::abs(state.x_t.z1() - w1), std::abs(state.x_t.z2() - w2)});
  }
  return finish("rotation_flow", worst, 1e-9);
}

OracleResult oracle_shear_group_law(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> time(-1.5, 1.5);
  ContractionParams c;
  c.alpha = {0.6, 0.0};
  c.beta = {0.6, 0.0};
  c.lambda = {0.1, 0.0};
  c.m = 1;
  const FlowSpec spec = FlowSpec::from_contraction(c);
  const GroupElement gamma0 = GroupElement::contraction(1);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const RealPoint4 z(random_point(rng));
    const double s = time(rng), t = time(rng);
    const Vec4 composed = flow_apply(spec, s, flow_apply(spec, t, z)).coords();
    const Vec4 direct = flow_apply(spec, s + t, z).coords();
    const Vec4 one = flow_apply(spec, 1.0, z).coords();
    const Vec4 gz = gamma0.apply(c, z).coords();
    const double scale = std::max(1.0, direct.cwiseAbs().maxCoeff());
    worst = std::max({worst, (composed - direct).cwiseAbs().maxCoeff() / scale,
                      (one - gz).cwiseAbs().maxCoeff() / std::max(1.0, gz.cwiseAbs().maxCoeff())});
  }
  return finish("shear_group_law", worst, 1e-12);
}

OracleResult oracle_equal_moduli_potential(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  const FlowSpec spec = FlowSpec::diagonal(std::polar(0.5, 0.7), std::polar(0.5, -0.7));
  const TwoForm expected_ddc = 4.0 * frame::omega0();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec4 x = random_point(rng);
    const double f_closed = x.squaredNorm();
    const PotentialEval pot = potential(spec, RealPoint4(x));
    worst = std::max({worst, std::abs(pot.f.value() - f_closed) / f_closed,
                      (pot.f.grad() - 2.0 * x).cwiseAbs().maxCoeff() / std::max(1.0, 2.0 * x.norm()),
                      (pot.ddc_f - expected_ddc).max_abs() / 4.0});
  }
  return finish("equal_moduli_potential", worst, 1e-12);
}

OracleResult oracle_hamiltonian_field(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  // df = 2 dx1 at (1, 0, 0, 0) gives X = -2 d/dx2.
  const Vec4 x0 = hamiltonian_vector(OneForm{Vec4(2.0, 0.0, 0.0, 0.0)});
  worst = std::max(worst, (x0 - Vec4(0.0, 0.0, -2.0, 0.0)).cwiseAbs().maxCoeff());
  for (std::size_t i = 0; i < n; ++i) {
    const RealPoint4 z(random_point(rng));
    const Vec4 v = hamiltonian_vector(OneForm{2.0 * z.coords()});
    const Cx dz1 = 2.0 * std::conj(z.z2());
    const Cx dz2 = -2.0 * std::conj(z.z1());
    const Vec4 expected(dz1.real(), dz1.imag(), dz2.real(), dz2.imag());
    worst = std::max(worst, (v - expected).cwiseAbs().maxCoeff() / std::max(1.0, expected.norm()));
  }
  return finish("hamiltonian_field", worst, 1e-12);
}

OracleResult oracle_symplectic_pullback(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 0.4);
  const Mat4 phi = frame::phi0().coeff();
  const Mat4 j0 = frame::standard_j().mat;
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // A = Phi^{-1} S with S symmetric lies in the Lie algebra of Sp(Phi0).
    Mat4 s;
    for (int a = 0; a < 4; ++a)
      for (int b = a; b < 4; ++b) s(a, b) = s(b, a) = gauss(rng);
    const Mat4 d = Mat4(phi.inverse() * s).exp();
    const Endomorphism4 j = acs_from_form_pair(frame::phi0(), pullback(frame::psi0(), d));
    const Mat4 expected = d.inverse() * j0 * d;
    const double symp = (d.transpose() * phi * d - phi).cwiseAbs().maxCoeff();
    worst = std::max({worst, symp,
                      (j.mat - expected).cwiseAbs().maxCoeff() /
                          std::max(1.0, expected.cwiseAbs().maxCoeff())});
  }
  return finish("symplectic_pullback", worst, 1e-9);
}

OracleResult oracle_wedge_permutation(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto random_form = [&] {
    Mat4 m;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) m(a, b) = gauss(rng);
    return TwoForm::from_matrix(m);
  };
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const TwoForm b = random_form(), c = random_form();
    // (B ^ C)_{0123} = (1/4) sum over permutations of sign * B_{p0 p1} C_{p2 p3}
    std::array<int, 4> p{0, 1, 2, 3};
    double sum = 0.0;
    do {
      sum += permutation_sign(p) * b(p[0], p[1]) * c(p[2], p[3]);
    } while (std::next_permutation(p.begin(), p.end()));
    const double brute = sum / 4.0;
    worst = std::max({worst, std::abs(brute - wedge_to_volume(b, c)),
                      std::abs(wedge_to_volume(b, c) - wedge_to_volume(c, b))});
  }
  return finish("wedge_permutation", worst, 1e-12);
}

std::vector<OracleResult> run_oracles(std::uint64_t seed) {
  return {oracle_rotation_flow(seed),          oracle_shear_group_law(seed),
          oracle_equal_moduli_potential(seed), oracle_hamiltonian_field(seed),
          oracle_symplectic_pullback(seed),    oracle_wedge_permutation(seed)};
}

}  // namespace biherm
