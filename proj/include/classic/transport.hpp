#pragma once

#include <cmath>
#include <functional>
#include <string_view>
#include <utility>

#include "classic/tangent.hpp"

namespace classic {

// A lifted tangent field, evaluated pointwise.
using TangentField = std::function<Tangent(const ProjPoint&)>;

enum class Branch { SameComponent, CrossAbsolute };

constexpr std::string_view to_string(Branch b) {
  return b == Branch::SameComponent ? "SameComponent" : "CrossAbsolute";
}

namespace detail {

inline double tance_nonorthogonal(const Space& s, const ProjPoint& p, const ProjPoint& x) {
  require_nonisotropic(s, p);
  require_nonisotropic(s, x);
  if (is_orthogonal(s, p, x)) fail(Errc::orthogonal_points, "field undefined on the polar of its foot");
  return tance(s, p, x);
}

}  // namespace detail

// Tn(t)(x) = T(x) / ta(p, x)
inline Tangent field_Tn(const Space& s, const Tangent& t, const ProjPoint& x) {
  const double ta = detail::tance_nonorthogonal(s, t.foot(), x);
  return spread(s, t, x) / ta;
}

// Ct(t)(x) = T(x) / sqrt(ta(p, x)). Across the absolute (ta < 0) only K = C is
// supported and sqrt(ta) is taken with positive imaginary part.
inline Tangent field_Ct(const Space& s, const Tangent& t, const ProjPoint& x, bool allow_cross_absolute = false) {
  const double ta = detail::tance_nonorthogonal(s, t.foot(), x);
  if (ta > 0) return spread(s, t, x) / std::sqrt(ta);
  if (!allow_cross_absolute) fail(Errc::cross_absolute, "points lie in different components");
  if (s.field() != Field::C) fail(Errc::cross_absolute, "vertical transport across the absolute needs K = C");
  // 1 / (i r) = -i / r
  return left_mul(Scalar::complex(0, -1 / std::sqrt(-ta)), spread(s, t, x));
}

// Eu(s)(x) = 1/2 (pi[p] pi'[x] s)_x + S(x)
inline Tangent field_Eu(const Space& sp, const Tangent& s, const ProjPoint& x) {
  const ProjPoint& p = s.foot();
  require_nonisotropic(sp, p);
  require_nonisotropic(sp, x);
  const Matrix m = proj_perp_map(sp, p) * proj_para_map(sp, x) * s.map();
  return observe(sp, x, m) * 0.5 + spread(sp, s, x);
}

inline TangentField spread_field(const Space& s, const Tangent& t) {
  return [s, t](const ProjPoint& x) { return spread(s, t, x); };
}
inline TangentField tn_field(const Space& s, const Tangent& t) {
  return [s, t](const ProjPoint& x) { return field_Tn(s, t, x); };
}
inline TangentField ct_field(const Space& s, const Tangent& t, bool allow_cross_absolute = false) {
  return [s, t, allow_cross_absolute](const ProjPoint& x) { return field_Ct(s, t, x, allow_cross_absolute); };
}
inline TangentField eu_field(const Space& s, const Tangent& t) {
  return [s, t](const ProjPoint& x) { return field_Eu(s, t, x); };
}

// Horizontal-vertical decomposition of t at p relative to the line through
// p and q: h = pi'[w] t, v = pi[w] t with w = pi[p] q.
inline std::pair<Tangent, Tangent> hv_decompose(const Space& s, const Tangent& t, const ProjPoint& q) {
  const ProjPoint& p = t.foot();
  require_nonisotropic(s, p);
  s.check(q.rep());
  if (same_point(s, p, q)) fail(Errc::equal_points, "q must differ from the foot");
  const LineClass c = line_classify(s, p.rep(), q.rep());
  if (c == LineClass::Euclidean) fail(Errc::euclidean_line, "no horizontal-vertical splitting on a euclidean line");
  if (c == LineClass::Null) fail(Errc::null_line, "null projective line");
  const ProjPoint w(proj_perp(s, p, q.rep()));
  if (is_isotropic(s, w)) fail(Errc::isotropic_point, "pi[p] q is isotropic");
  const Tangent h = observe(s, p, proj_para_map(s, w) * t.map());
  const Tangent v = observe(s, p, proj_perp_map(s, w) * t.map());
  return {h, v};
}

struct TransportResult {
  Tangent tangent;
  Branch branch = Branch::SameComponent;
};

// Parallel transport of t from its foot p to q along G[p,q].
inline TransportResult transport(const Space& s, const Tangent& t, const ProjPoint& q, bool allow_cross_absolute = false) {
  const ProjPoint& p = t.foot();
  require_nonisotropic(s, p);
  require_nonisotropic(s, q);
  if (same_point(s, p, q)) return {observe(s, q, t.map()), Branch::SameComponent};
  if (is_orthogonal(s, p, q)) fail(Errc::orthogonal_points, "transport between orthogonal points is undefined");
  const LineClass c = line_classify(s, p.rep(), q.rep());
  if (c == LineClass::Euclidean) return {field_Eu(s, t, q), Branch::SameComponent};

  const auto [h, v] = hv_decompose(s, t, q);
  if (classify(s, p) == classify(s, q)) return {field_Tn(s, h, q) + field_Ct(s, v, q), Branch::SameComponent};

  if (!allow_cross_absolute) fail(Errc::cross_absolute, "p and q are separated by the absolute");
  Tangent out = field_Tn(s, h, q);
  const double scale = std::max(t.map().aux_norm(), 1e-300);
  if (v.map().aux_norm() > 1e-12 * scale) out += field_Ct(s, v, q, true);
  return {out, Branch::CrossAbsolute};
}

// Derivative of ta(p, -) at x along the field spread from t:
// -2 ta(p,x) Re(<t x, x> / <x, x>).
inline double tance_derivative(const Space& s, const Tangent& t, const ProjPoint& x) {
  require_nonisotropic(s, t.foot());
  require_nonisotropic(s, x);
  const Vector& y = x.rep();
  return -2 * tance(s, t.foot(), x) * s.form(t.map() * y, y).re() / s.norm2(y);
}

}  // namespace classic
