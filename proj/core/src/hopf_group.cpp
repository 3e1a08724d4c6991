#include "biherm/groups/hopf_group.hpp"

#include "biherm/errors.hpp"

#include <cmath>
#include <sstream>

namespace biherm {

namespace {

using Vec2c = Eigen::Vector2cd;

Vec2c to_c2(const RealPoint4& z) { return {z.z1(), z.z2()}; }
RealPoint4 from_c2(const Vec2c& w) { return RealPoint4::from_complex(w[0], w[1]); }

Complex ipow(Complex z, int m) {
  Complex out{1.0, 0.0};
  for (int i = 0; i < m; ++i) out *= z;
  return out;
}

Vec2c contraction_forward(const ContractionParams& c, const Vec2c& z) {
  return {c.alpha * z[0] + c.lambda * ipow(z[1], c.m), c.beta * z[1]};
}

Vec2c contraction_inverse(const ContractionParams& c, const Vec2c& w) {
  const Complex z2 = w[1] / c.beta;
  return {(w[0] - c.lambda * ipow(z2, c.m)) / c.alpha, z2};
}

Mat2c contraction_jacobian(const ContractionParams& c, const Vec2c& z) {
  Mat2c j;
  j << c.alpha, c.lambda * double(c.m) * ipow(z[1], c.m - 1), Complex{0.0, 0.0}, c.beta;
  return j;
}

// Applies one atom to z, returning the image and accumulating the Jacobian.
Vec2c apply_atom(const GroupElement::Atom& atom, const ContractionParams& c, const Vec2c& z,
                 Mat2c& jac) {
  if (const auto* u = std::get_if<UnitaryElement>(&atom)) {
    jac = u->h * jac;
    return u->h * z;
  }
  const int n = std::get<ContractionPower>(atom).n;
  Vec2c w = z;
  if (n >= 0) {
    for (int i = 0; i < n; ++i) {
      jac = contraction_jacobian(c, w) * jac;
      w = contraction_forward(c, w);
    }
  } else {
    for (int i = 0; i < -n; ++i) {
      const Vec2c prev = contraction_inverse(c, w);
      jac = contraction_jacobian(c, prev).inverse() * jac;
      w = prev;
    }
  }
  return w;
}

bool is_diagonal(const Mat2c& h) {
  return std::abs(h(0, 1)) < tolerance::kUnitary && std::abs(h(1, 0)) < tolerance::kUnitary;
}

bool same_element(const Mat2c& a, const Mat2c& b) {
  return (a - b).norm() < tolerance::kGroupMatch;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

std::optional<std::string> ContractionParams::violation() const {
  if (m < 1) return "m must be a positive integer";
  const double ma = std::abs(alpha), mb = std::abs(beta);
  if (!(ma > 0.0)) return "|alpha| must be positive";
  if (!(mb < 1.0)) return "|beta| must be < 1";
  if (ma > mb + tolerance::kUnitary) return "|alpha| <= |beta| violated";
  Complex beta_m{1.0, 0.0};
  for (int i = 0; i < m; ++i) beta_m *= beta;
  if (std::abs(lambda * (alpha - beta_m)) > tolerance::kResonance)
    return "lambda (alpha - beta^m) = 0 violated";
  return std::nullopt;
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  std::vector<GroupElement::Atom> atoms = a.atoms_;
  atoms.insert(atoms.end(), b.atoms_.begin(), b.atoms_.end());
  return GroupElement(std::move(atoms));
}

RealPoint4 GroupElement::apply(const ContractionParams& c, const RealPoint4& z) const {
  Vec2c w = to_c2(z);
  Mat2c jac = Mat2c::Identity();
  for (auto it = atoms_.rbegin(); it != atoms_.rend(); ++it) w = apply_atom(*it, c, w, jac);
  return from_c2(w);
}

Mat2c GroupElement::holomorphic_jacobian(const ContractionParams& c, const RealPoint4& z) const {
  Vec2c w = to_c2(z);
  Mat2c jac = Mat2c::Identity();
  for (auto it = atoms_.rbegin(); it != atoms_.rend(); ++it) w = apply_atom(*it, c, w, jac);
  return jac;
}

Mat4 GroupElement::jacobian(const ContractionParams& c, const RealPoint4& z) const {
  return realify(holomorphic_jacobian(c, z));
}

Complex GroupElement::canonical_multiplier(const ContractionParams& c, const RealPoint4& z) const {
  return holomorphic_jacobian(c, z).determinant();
}

Mat4 realify(const Mat2c& a) {
  Mat4 r;
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) {
      const double re = a(k, l).real(), im = a(k, l).imag();
      r(2 * k, 2 * l) = re;
      r(2 * k, 2 * l + 1) = -im;
      r(2 * k + 1, 2 * l) = im;
      r(2 * k + 1, 2 * l + 1) = re;
    }
  return r;
}

bool is_unitary(const Mat2c& h, double tol) {
  return (h.adjoint() * h - Mat2c::Identity()).norm() < tol;
}

std::vector<Mat2c> group_closure(const std::vector<Mat2c>& gens, std::size_t cap) {
  for (const auto& g : gens)
    if (!is_unitary(g)) throw InvalidGroupData("generator is not unitary");
  std::vector<Mat2c> elems{Mat2c::Identity()};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : gens) {
      const Mat2c prod = elems[i] * g;
      bool known = false;
      for (const auto& e : elems)
        if (same_element(e, prod)) {
          known = true;
          break;
        }
      if (known) continue;
      elems.push_back(prod);
      if (elems.size() > cap)
        throw NotFinite("closure exceeds " + std::to_string(cap) + " elements");
    }
  }
  return elems;
}

int element_order(const Mat2c& h, int cap) {
  Mat2c p = h;
  for (int n = 1; n <= cap; ++n) {
    if (same_element(p, Mat2c::Identity())) return n;
    p = p * h;
  }
  return 0;
}

RealTypeResult real_type_check(const HopfGroupData& data) {
  RealTypeResult out;
  const auto& c = data.contraction;
  out.product = c.alpha * c.beta;
  out.product_positive =
      std::abs(out.product.imag()) < tolerance::kUnitary && out.product.real() > tolerance::kUnitary;
  if (!out.product_positive)
    out.diagnostics.push_back("alpha*beta = (" + fmt(out.product.real()) + ", " +
                              fmt(out.product.imag()) + ") is not in R+*");

  const auto closure = group_closure(data.h_generators);
  out.special_unitary = true;
  for (const auto& h : closure) {
    const Complex d = h.determinant();
    out.determinants.push_back(d);
    if (std::abs(d - Complex{1.0, 0.0}) > tolerance::kUnitary) out.special_unitary = false;
  }
  if (!out.special_unitary) out.diagnostics.push_back("H not in SU(2): some det(h) != 1");
  out.real_type = out.product_positive && out.special_unitary;
  return out;
}

std::string case_tag(const CaseLabel& label) {
  struct {
    std::string operator()(const CaseA&) const { return "A"; }
    std::string operator()(const CaseB&) const { return "B"; }
    std::string operator()(const CaseC&) const { return "C"; }
    std::string operator()(const NotRealType&) const { return "NotRealType"; }
    std::string operator()(const Invalid&) const { return "Invalid"; }
  } visitor;
  return std::visit(visitor, label);
}

bool commutes_with_contraction(const ContractionParams& c, const Mat2c& h, double tol) {
  const std::array<Vec2c, 3> probes{Vec2c{Complex{0.3, 0.1}, Complex{-0.2, 0.7}},
                                    Vec2c{Complex{-0.5, 0.4}, Complex{0.6, -0.3}},
                                    Vec2c{Complex{0.1, -0.8}, Complex{0.45, 0.25}}};
  for (const auto& z : probes) {
    const Vec2c lhs = h * contraction_forward(c, z);
    const Vec2c rhs = contraction_forward(c, h * z);
    if ((lhs - rhs).norm() > tol * (1.0 + lhs.norm())) return false;
  }
  return true;
}

Classification classify(const HopfGroupData& data) {
  Classification out;
  const auto& c = data.contraction;
  const auto invalid = [&](std::string reason) {
    out.label = Invalid{std::move(reason)};
    return out;
  };

  if (auto v = c.violation()) return invalid("contraction: " + *v);
  if (c.arg_alpha && std::abs(std::polar(1.0, *c.arg_alpha) - c.alpha / std::abs(c.alpha)) > 1e-9)
    return invalid("arg_alpha is not an argument of alpha");
  if (c.arg_beta && std::abs(std::polar(1.0, *c.arg_beta) - c.beta / std::abs(c.beta)) > 1e-9)
    return invalid("arg_beta is not an argument of beta");
  for (std::size_t i = 0; i < data.h_generators.size(); ++i)
    if (!is_unitary(data.h_generators[i]))
      return invalid("H generator " + std::to_string(i) + " is not unitary");

  std::vector<Mat2c> closure;
  try {
    closure = group_closure(data.h_generators);
  } catch (const NotFinite& e) {
    return invalid(std::string("H is not finite: ") + e.what());
  }
  out.group_order = closure.size();
  out.diagnostics.push_back("|H| = " + std::to_string(closure.size()));

  const double ma = std::abs(c.alpha), mb = std::abs(c.beta);
  const bool equal_moduli = std::abs(ma - mb) <= tolerance::kUnitary;
  const bool all_diagonal =
      std::all_of(closure.begin(), closure.end(), [](const Mat2c& h) { return is_diagonal(h); });

  if (c.has_shear()) {
    if (!all_diagonal) return invalid("lambda != 0 requires H in U(1) x U(1)");
    for (const auto& h : data.h_generators)
      if (!commutes_with_contraction(c, h))
        return invalid("H does not commute with gamma0 (requires m = k*ell - 1)");
  } else if (!equal_moduli && !all_diagonal) {
    return invalid("|alpha| != |beta| requires H in U(1) x U(1)");
  }

  const RealTypeResult rt = real_type_check(data);
  out.diagnostics.insert(out.diagnostics.end(), rt.diagnostics.begin(), rt.diagnostics.end());
  if (!rt.real_type) {
    out.label = NotRealType{!rt.product_positive ? "alpha*beta not in R+*" : "H not in SU(2)"};
    return out;
  }

  const int ell = static_cast<int>(closure.size());
  const bool cyclic = std::any_of(closure.begin(), closure.end(),
                                  [&](const Mat2c& h) { return element_order(h) == ell; });

  if (c.has_shear()) {
    if (!cyclic) return invalid("H must be cyclic when lambda != 0");
    if ((c.m + 1) % ell != 0) return invalid("m = k*ell - 1 violated");
    out.label = CaseC{std::pow(mb, c.m + 1), ell, (c.m + 1) / ell};
    out.diagnostics.push_back("m = " + std::to_string(c.m) + " = " +
                              std::to_string((c.m + 1) / ell) + "*" + std::to_string(ell) + " - 1");
    return out;
  }
  if (equal_moduli) {
    out.label = CaseA{};
    return out;
  }
  const double a = ma * mb;
  if (!(ma * ma < a && a < ma)) return invalid("chain |alpha|^2 < a < |alpha| violated");
  if (!cyclic) return invalid("H must be cyclic when |alpha| != |beta|");
  out.diagnostics.push_back(fmt(ma * ma) + " < a = " + fmt(a) + " < " + fmt(ma));
  out.label = CaseB{a, ell};
  return out;
}

}  // namespace biherm
