#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "classic/tangent.hpp"

namespace classic {

// Geodesic G W: the projectivisation of a real 2-plane W = w1.R + w2.R on
// which the hermitian form is real and not identically zero.
class Geodesic {
 public:
  const Vector& w1() const { return w1_; }
  const Vector& w2() const { return w2_; }
  LineClass line_class() const { return class_; }
  bool is_euclidean() const { return class_ == LineClass::Euclidean; }

 private:
  friend Geodesic make_geodesic(const Space& s, Vector w1, Vector w2);
  Vector w1_, w2_;
  LineClass class_ = LineClass::Hyperbolic;
};

namespace detail {

inline double form_scale(const Space& s) { return s.form_matrix().aux_norm(); }

// Auxiliary-orthonormal basis (e1, e2) of span_K{w1, w2} together with the
// triangular coefficients w1 = e1 a11, w2 = e1 a12 + e2 a22.
struct LineFrame {
  Vector e1, e2;
  Scalar a11, a12, a22;
};

inline LineFrame line_frame(const Vector& w1, const Vector& w2) {
  LineFrame f;
  const double n1 = w1.aux_norm();
  f.e1 = w1 / n1;
  f.a11 = Scalar::real(n1, w1.field());
  f.a12 = aux_dot(f.e1, w2);
  Vector r = w2 - f.e1 * f.a12;
  const double n2 = r.aux_norm();
  f.e2 = r / n2;
  f.a22 = Scalar::real(n2, w1.field());
  return f;
}

}  // namespace detail

inline Geodesic make_geodesic(const Space& s, Vector w1, Vector w2) {
  s.check(w1);
  s.check(w2);
  const double scale = w1.aux_norm() * w2.aux_norm() * detail::form_scale(s);
  const double imag = std::max({s.form(w1, w1).imag_abs(), s.form(w2, w2).imag_abs(), s.form(w1, w2).imag_abs()});
  if (imag > 1e-12 * std::max(scale, w1.aux_norm2() * detail::form_scale(s)))
    fail(Errc::form_not_real, "hermitian form is not real on the plane");
  const LineClass c = line_classify(s, w1, w2);
  if (c == LineClass::Null) fail(Errc::null_line, "form vanishes on the plane");
  Geodesic g;
  g.w1_ = std::move(w1);
  g.w2_ = std::move(w2);
  g.class_ = c;
  return g;
}

// W = g1.R + g2<g2,g1>.R
inline Geodesic through_points(const Space& s, const ProjPoint& g1, const ProjPoint& g2) {
  s.check(g1.rep());
  s.check(g2.rep());
  if (same_point(s, g1, g2)) fail(Errc::equal_points, "geodesic needs two distinct points");
  if (is_orthogonal(s, g1, g2)) fail(Errc::orthogonal_points, "no unique geodesic through orthogonal points");
  return make_geodesic(s, g1.rep(), g2.rep() * form(s, g2, g1));
}

// W = p.R + (t p).R
inline Geodesic from_tangent(const Space& s, const Tangent& t) {
  const ProjPoint& p = t.foot();
  require_nonisotropic(s, p);
  const Vector tp = t.image();
  if (tp.aux_norm() <= 1e-12 * t.map().aux_norm() * p.rep().aux_norm() || t.map().is_zero())
    fail(Errc::invalid_argument, "zero tangent vector");
  return make_geodesic(s, p.rep(), tp);
}

// Coefficients (a, b) with x = w1 a + w2 b; fails if x is off the projective line.
inline std::pair<Scalar, Scalar> line_coefficients(const Space& s, const Vector& w1, const Vector& w2, const Vector& x) {
  s.check(x);
  const auto f = detail::line_frame(w1, w2);
  const Scalar c1 = aux_dot(f.e1, x);
  const Scalar c2 = aux_dot(f.e2, x);
  const Vector r = x - f.e1 * c1 - f.e2 * c2;
  if (r.aux_norm2() > s.iso_tol() * x.aux_norm2()) fail(Errc::not_in_line, "point is not on the projective line");
  const Scalar b = f.a22.inv() * c2;
  const Scalar a = f.a11.inv() * (c1 - f.a12 * b);
  return {a, b};
}

inline bool in_line(const Space& s, const Geodesic& g, const Vector& x) {
  try {
    line_coefficients(s, g.w1(), g.w2(), x);
    return true;
  } catch (const GeometryError& e) {
    if (e.code() == Errc::not_in_line) return false;
    throw;
  }
}

// b(x,g1,g2) = <x,g1><g1,g2><g2,x> - <x,g2><g2,g1><g1,x>
inline Scalar b_expr(const Space& s, const Vector& x, const Vector& g1, const Vector& g2) {
  return s.form(x, g1) * s.form(g1, g2) * s.form(g2, x) - s.form(x, g2) * s.form(g2, g1) * s.form(g1, x);
}

// t(phig, g, g1, g2), the tangency expression; factor order as written.
inline Scalar t_expr(const Space& s, const Vector& phig, const Vector& g, const Vector& g1, const Vector& g2) {
  const Scalar g12 = s.form(g1, g2);
  const Scalar g21 = s.form(g2, g1);
  return s.form(phig, g1) * g12 * s.form(g2, g) + s.form(g, g1) * g12 * s.form(g2, phig) -
         s.form(phig, g2) * g21 * s.form(g1, g) - s.form(g, g2) * g21 * s.form(g1, phig);
}

namespace detail {

inline double b_scale(const Space& s, const Vector& x, const Vector& g1, const Vector& g2) {
  const double j = form_scale(s);
  return x.aux_norm2() * g1.aux_norm2() * g2.aux_norm2() * j * j * j;
}

// conj(a) b real, i.e. (a, b) real-proportional.
inline bool real_proportional(const Scalar& a, const Scalar& b, double tol) {
  return (a.conj() * b).imag_abs() <= tol * std::max(a.abs2(), b.abs2());
}

}  // namespace detail

inline bool contains(const Space& s, const Geodesic& g, const ProjPoint& x) {
  const auto [a, b] = line_coefficients(s, g.w1(), g.w2(), x.rep());
  if (!g.is_euclidean()) {
    const Scalar val = b_expr(s, x.rep(), g.w1(), g.w2());
    return val.abs() <= s.iso_tol() * detail::b_scale(s, x.rep(), g.w1(), g.w2());
  }
  return detail::real_proportional(a, b, std::sqrt(s.iso_tol()) * 1e-3);
}

// Whether the tangent vector at g with image phig = phi(g) is tangent to G.
inline bool tangency_eq(const Space& s, const Geodesic& G, const ProjPoint& g, const Vector& phig) {
  if (!contains(s, G, g)) fail(Errc::not_on_geodesic, "base point is not on the geodesic");
  s.check(phig);
  if (!in_line(s, G, phig)) return false;
  const Vector& x = g.rep();
  if (!G.is_euclidean()) {
    const Scalar val = t_expr(s, phig, x, G.w1(), G.w2());
    const double j = detail::form_scale(s);
    const double scale = std::max(phig.aux_norm(), 1e-300) * x.aux_norm() * G.w1().aux_norm2() * G.w2().aux_norm2() * j * j * j;
    return val.abs() <= s.iso_tol() * scale;
  }
  // Euclidean line: phi g must lie in W + g.K after moving g into W.
  const auto [ag, bg] = line_coefficients(s, G.w1(), G.w2(), x);
  const Scalar k0 = (ag.abs() >= bg.abs() ? ag : bg).inv();
  const double alpha = (ag * k0).re();
  const double beta = (bg * k0).re();
  const auto [a, b] = line_coefficients(s, G.w1(), G.w2(), phig * k0);
  const Scalar ia = a - Scalar::real(a.re(), a.field());
  const Scalar ib = b - Scalar::real(b.re(), b.field());
  const Scalar mix = ia * beta - ib * alpha;
  return mix.abs() <= std::sqrt(s.iso_tol()) * 1e-3 * std::max({a.abs(), b.abs(), 1e-300}) * std::max(std::abs(alpha), std::abs(beta));
}

// Projective equality of geodesics: the spanning points of each lie on the other.
inline bool same_geodesic(const Space& s, const Geodesic& a, const Geodesic& b) {
  return in_line(s, b, a.w1()) && in_line(s, b, a.w2()) && contains(s, b, ProjPoint(a.w1())) &&
         contains(s, b, ProjPoint(a.w2())) && contains(s, a, ProjPoint(b.w1())) && contains(s, a, ProjPoint(b.w2()));
}

// Length of the segment of the geodesic through g1, g2 that avoids isotropic
// points: arccos sqrt(ta) on spherical lines, arccosh sqrt(ta) on hyperbolic ones.
inline double length(const Space& s, const ProjPoint& g1, const ProjPoint& g2) {
  require_nonisotropic(s, g1);
  require_nonisotropic(s, g2);
  if (same_point(s, g1, g2)) return 0.0;
  const LineClass c = line_classify(s, g1.rep(), g2.rep());
  const double ta = tance(s, g1, g2);
  constexpr double slack = 1e-12;
  switch (c) {
    case LineClass::Spherical:
      if (ta < -slack || ta > 1 + slack) fail(Errc::out_of_range, "tance outside [0,1] on a spherical line");
      return std::acos(std::sqrt(std::clamp(ta, 0.0, 1.0)));
    case LineClass::Hyperbolic:
      if (ta < 1 - slack) fail(Errc::out_of_range, "points are separated by the absolute");
      return std::acosh(std::sqrt(std::max(ta, 1.0)));
    case LineClass::Euclidean:
      fail(Errc::euclidean_line, "the metric is null over euclidean lines");
    case LineClass::Null:
      break;
  }
  fail(Errc::null_line, "null projective line");
}

// Tangent at p to the oriented segment G[p,q]: (q <p,q>^-1 <p,->)_p.
inline Tangent segment_tangent(const Space& s, const ProjPoint& p, const ProjPoint& q) {
  require_nonisotropic(s, p);
  s.check(q.rep());
  if (same_point(s, p, q)) fail(Errc::equal_points, "segment needs two distinct points");
  if (is_orthogonal(s, p, q)) fail(Errc::orthogonal_points, "segment orientation undefined for orthogonal points");
  return observe(s, p, rank_one(s, q.rep() * form(s, p, q).inv(), p.rep()));
}

namespace detail {

inline Geodesic cone_spine(const Space& s, const ProjPoint& g1, const ProjPoint& g2) {
  if (s.dim() != 3) fail(Errc::dimension_mismatch, "cones are defined in dimension 3");
  Geodesic g = through_points(s, g1, g2);
  if (g.is_euclidean()) fail(Errc::euclidean_line, "cone over a euclidean geodesic");
  return g;
}

}  // namespace detail

// Membership in the projective cone over G[g1,g2] with vertex at the polar point.
inline bool cone_membership(const Space& s, const ProjPoint& x, const ProjPoint& g1, const ProjPoint& g2) {
  detail::cone_spine(s, g1, g2);
  s.check(x.rep());
  const Scalar val = b_expr(s, x.rep(), g1.rep(), g2.rep());
  return val.abs() <= s.iso_tol() * detail::b_scale(s, x.rep(), g1.rep(), g2.rep());
}

// Normal at q to the bisector with real spine G[g1,g2] (K = C):
// (g1 <g2,q>/<g2,g1> - g2 <g1,q>/<g1,g2>) i <q,->, observed at q.
inline Tangent bisector_normal(const Space& s, const ProjPoint& q, const ProjPoint& g1, const ProjPoint& g2) {
  if (s.field() != Field::C) fail(Errc::unsupported_field, "bisector normals require field C");
  detail::cone_spine(s, g1, g2);
  require_nonisotropic(s, q);
  if (!cone_membership(s, q, g1, g2)) fail(Errc::not_on_geodesic, "point is not on the bisector");
  const Vector& a = g1.rep();
  const Vector& b = g2.rep();
  const Vector& x = q.rep();
  const Vector n = a * (s.form(b, x) / s.form(b, a)) - b * (s.form(a, x) / s.form(a, b));
  return observe(s, q, rank_one(s, n * unit_i(Field::C), x));
}

// Left action of a unit quaternion k through the bimodule structure whose
// centre is spanned over R by `centre` (a K-basis on which the form is real).
// Returns (k p, k t).
inline std::pair<ProjPoint, Tangent> sphere_action(const Space& s, const Scalar& k, std::span<const Vector> centre,
                                                   const ProjPoint& p, const Tangent& t) {
  if (s.field() != Field::H) fail(Errc::unsupported_field, "the S^3 action is defined over H");
  if (k.field() != Field::H) fail(Errc::field_mismatch, "k must be a quaternion");
  if (std::abs(k.abs() - 1.0) > 1e-12) fail(Errc::not_unit, "k must be a unit quaternion");
  if (static_cast<int>(centre.size()) != s.dim()) fail(Errc::dimension_mismatch, "centre basis must have dim V vectors");
  for (const auto& w : centre) s.check(w);
  const Matrix b = Matrix::from_columns(centre);
  const Matrix gram = b.conj_transpose() * s.form_matrix() * b;
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j)
      if (gram(i, j).imag_abs() > 1e-12 * gram.aux_norm()) fail(Errc::form_not_real, "form is not real on the centre");
  const Matrix binv = inverse(b);
  Matrix diag(s.dim(), Field::H);
  Matrix diag_inv(s.dim(), Field::H);
  for (int i = 0; i < s.dim(); ++i) {
    diag(i, i) = k;
    diag_inv(i, i) = k.conj();
  }
  const Matrix lk = b * diag * binv;
  const Matrix lk_inv = b * diag_inv * binv;
  const ProjPoint kp(lk * p.rep());
  return {kp, observe(s, kp, lk * t.map() * lk_inv)};
}

}  // namespace classic
