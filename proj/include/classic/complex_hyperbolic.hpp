#pragma once

#include <cmath>

#include "classic/geodesic.hpp"
#include "classic/transport.hpp"

namespace classic {

namespace detail {

inline void require_plane(const Space& s) {
  if (s.field() != Field::C) fail(Errc::unsupported_field, "complex hyperbolic geometry requires field C");
  if (s.dim() != 3) fail(Errc::dimension_mismatch, "complex hyperbolic plane requires dimension 3");
}

inline Scalar det3(const Vector& a, const Vector& b, const Vector& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

// The point orthogonal to both a and b: the kernel of the rows a^dagger J, b^dagger J.
inline Vector polar_of_line(const Space& s, const Vector& a, const Vector& b) {
  const auto x = s.covector(a);
  const auto y = s.covector(b);
  Vector f(3, Field::C);
  f[0] = x[1] * y[2] - x[2] * y[1];
  f[1] = x[2] * y[0] - x[0] * y[2];
  f[2] = x[0] * y[1] - x[1] * y[0];
  return f;
}

// sqrt(ta) on the positive real axis, or on the positive imaginary axis when
// ta < 0 and crossing the absolute is allowed.
inline Scalar sqrt_tance(double ta, bool allow_cross_absolute) {
  if (ta > 0) return Scalar::complex(std::sqrt(ta), 0);
  if (!allow_cross_absolute) fail(Errc::cross_absolute, "points lie in different components");
  return Scalar::complex(0, std::sqrt(-ta));
}

}  // namespace detail

// Oriented area of a triangle with vertices in B V u S V lying on one complex
// geodesic: -1/2 arg(-<p1,p2><p2,p3><p3,p1>).
inline double triangle_area(const Space& s, const ProjPoint& p1, const ProjPoint& p2, const ProjPoint& p3) {
  detail::require_plane(s);
  for (const ProjPoint* p : {&p1, &p2, &p3}) {
    s.check(p->rep());
    if (classify(s, *p) == PointClass::Positive) fail(Errc::invalid_argument, "triangle vertices must be negative or isotropic");
  }
  if (is_orthogonal(s, p1, p2) || is_orthogonal(s, p2, p3) || is_orthogonal(s, p3, p1))
    fail(Errc::orthogonal_points, "triangle has an orthogonal pair of vertices");
  const double vol = p1.rep().aux_norm() * p2.rep().aux_norm() * p3.rep().aux_norm();
  if (detail::det3(p1.rep(), p2.rep(), p3.rep()).abs() > std::sqrt(s.iso_tol()) * vol)
    fail(Errc::not_in_line, "vertices do not lie on one complex geodesic");
  const Scalar prod = form(s, p1, p2) * form(s, p2, p3) * form(s, p3, p1);
  return -0.5 * arg(-prod);
}

// Oriented segment G[q, v) of the real spine of a bisector, cut by the slice
// with positive polar point p; v is an isotropic vertex and q = pi[p] v.
class BisectorSegment {
 public:
  BisectorSegment(const Space& s, ProjPoint polar, ProjPoint vertex) : p_(std::move(polar)), v_(std::move(vertex)) {
    detail::require_plane(s);
    s.check(p_.rep());
    s.check(v_.rep());
    if (classify(s, p_) != PointClass::Positive) fail(Errc::invalid_argument, "slice polar point must be positive");
    if (!is_isotropic(s, v_)) fail(Errc::invalid_argument, "bisector vertex must be isotropic");
    if (is_orthogonal(s, p_, v_)) fail(Errc::orthogonal_points, "vertex is orthogonal to the slice polar point");
    q_ = ProjPoint(proj_perp(s, p_, v_.rep()));
  }

  const ProjPoint& polar() const { return p_; }
  const ProjPoint& vertex() const { return v_; }
  const ProjPoint& spine_point() const { return q_; }

 private:
  ProjPoint p_, v_, q_;
};

namespace detail {

inline void require_cotranchal(const Space& s, const BisectorSegment& a, const BisectorSegment& b) {
  if (!same_point(s, a.polar(), b.polar())) fail(Errc::invalid_argument, "bisectors do not share the slice");
}

}  // namespace detail

// u = 1 - <v2,v1><p,p> / (<v2,p><p,v1>)
inline Scalar goldman_u(const Space& s, const BisectorSegment& b1, const BisectorSegment& b2) {
  detail::require_cotranchal(s, b1, b2);
  const Vector& p = b1.polar().rep();
  const Vector& v1 = b1.vertex().rep();
  const Vector& v2 = b2.vertex().rep();
  const Scalar one = Scalar::complex(1, 0);
  return one - s.form(v2, v1) * s.form(p, p) / (s.form(v2, p) * s.form(p, v1));
}

// Oriented angle at q in the common slice from B[q1,v1) to B[q2,v2):
// arg <n(q,q1,v1), n(q,q2,v2)>.
inline double bisector_angle(const Space& s, const BisectorSegment& b1, const BisectorSegment& b2, const ProjPoint& q) {
  detail::require_cotranchal(s, b1, b2);
  s.check(q.rep());
  if (!is_orthogonal(s, b1.polar(), q)) fail(Errc::not_in_line, "q is not on the common slice");
  if (classify(s, q) != PointClass::Negative) fail(Errc::isotropic_point, "q must be a negative point");
  const Tangent n1 = bisector_normal(s, q, b1.spine_point(), b1.vertex());
  const Tangent n2 = bisector_normal(s, q, b2.spine_point(), b2.vertex());
  return arg(hmetric(s, n1, n2));
}

namespace detail {

struct MeridionalSetup {
  Vector focus;
  double ta = 0;
};

inline MeridionalSetup meridional_setup(const Space& s, const ProjPoint& p1, const ProjPoint& p2, const ProjPoint& q1) {
  require_plane(s);
  require_nonisotropic(s, p1);
  require_nonisotropic(s, p2);
  s.check(q1.rep());
  if (same_point(s, p1, p2)) fail(Errc::equal_points, "spine points must be distinct");
  if (is_orthogonal(s, p1, p2)) fail(Errc::orthogonal_points, "spine points must be nonorthogonal");
  MeridionalSetup m;
  m.focus = polar_of_line(s, p1.rep(), p2.rep());
  // q1 must lie on the slice through p1, the line spanned by p1 and the focus.
  line_coefficients(s, p1.rep(), m.focus, q1.rep());
  if (is_orthogonal(s, p1, q1)) fail(Errc::orthogonal_points, "q1 is the focus");
  m.ta = tance(s, p1, p2);
  return m;
}

}  // namespace detail

// Meridional transport of q1 in the slice through p1 to the slice through p2,
// along the bisector whose real spine is the geodesic through p1 and p2:
// q2 = p2 <p1,q1> sqrt(ta(p1,p2)) + pi[p1] q1 <p1,p2>.
inline ProjPoint meridional_transport(const Space& s, const ProjPoint& p1, const ProjPoint& p2, const ProjPoint& q1,
                                      bool allow_cross_absolute = false) {
  const auto m = detail::meridional_setup(s, p1, p2, q1);
  const Scalar root = detail::sqrt_tance(m.ta, allow_cross_absolute);
  return ProjPoint(p2.rep() * (form(s, p1, q1) * root) + proj_perp(s, p1, q1.rep()) * form(s, p1, p2));
}

// The same point obtained from its defining property: q2 = p2 + f c is the
// point whose segment tangent at p2 equals Ct(v)(p2), v the segment tangent
// of G[p1,q1] at p1.
inline ProjPoint meridional_by_transport(const Space& s, const ProjPoint& p1, const ProjPoint& p2, const ProjPoint& q1,
                                         bool allow_cross_absolute = false) {
  const auto m = detail::meridional_setup(s, p1, p2, q1);
  const Tangent v = segment_tangent(s, p1, q1);
  const Tangent moved = field_Ct(s, v, p2, allow_cross_absolute);
  // The segment tangent of G[p2, p2 + f c] sends p2 to f c, since <p2,f> = 0.
  const Vector fc = moved.image();
  line_coefficients(s, m.focus, p2.rep(), fc);
  return ProjPoint(p2.rep() + fc);
}

}  // namespace classic
