#pragma once

#include <cmath>
#include <string_view>

#include "classic/linear.hpp"

namespace classic {

// A point of the projective space, kept as an unnormalised representative.
class ProjPoint {
 public:
  ProjPoint() = default;
  explicit ProjPoint(Vector rep) : rep_(std::move(rep)) {
    if (rep_.size() == 0 || rep_.aux_norm2() == 0) fail(Errc::invalid_argument, "projective point needs a nonzero representative");
  }

  const Vector& rep() const { return rep_; }
  int size() const { return rep_.size(); }

  // Same point with representative rep.k
  ProjPoint rescaled(const Scalar& k) const { return ProjPoint(rep_ * k); }

 private:
  Vector rep_;
};

enum class PointClass { Negative, Null, Positive };
enum class LineClass { Spherical, Hyperbolic, Euclidean, Null };

constexpr std::string_view to_string(PointClass c) {
  switch (c) {
    case PointClass::Negative: return "Negative";
    case PointClass::Null: return "Null";
    case PointClass::Positive: return "Positive";
  }
  return "?";
}

constexpr std::string_view to_string(LineClass c) {
  switch (c) {
    case LineClass::Spherical: return "Spherical";
    case LineClass::Hyperbolic: return "Hyperbolic";
    case LineClass::Euclidean: return "Euclidean";
    case LineClass::Null: return "Null";
  }
  return "?";
}

inline Scalar form(const Space& s, const ProjPoint& a, const ProjPoint& b) { return s.form(a.rep(), b.rep()); }

inline PointClass classify(const Space& s, const Vector& v) {
  const double q = s.norm2(v);
  if (std::abs(q) <= s.iso_tol() * v.aux_norm2()) return PointClass::Null;
  return q < 0 ? PointClass::Negative : PointClass::Positive;
}

inline PointClass classify(const Space& s, const ProjPoint& p) { return classify(s, p.rep()); }

inline bool is_isotropic(const Space& s, const ProjPoint& p) { return classify(s, p) == PointClass::Null; }

inline void require_nonisotropic(const Space& s, const ProjPoint& p) {
  s.check(p.rep());
  if (is_isotropic(s, p)) fail(Errc::isotropic_point, "point is isotropic");
}

// Projective equality, decided on the auxiliary euclidean structure: the
// component of b orthogonal to the line a.K must be negligible.
inline bool same_point(const ProjPoint& a, const ProjPoint& b, double tol) {
  const Vector& x = a.rep();
  const Vector& y = b.rep();
  const Scalar c = aux_dot(x, y) / x.aux_norm2();
  const Vector r = y - x * c;
  return r.aux_norm() <= tol * y.aux_norm();
}

inline bool same_point(const Space& s, const ProjPoint& a, const ProjPoint& b) { return same_point(a, b, s.iso_tol()); }

inline bool is_orthogonal(const Space& s, const ProjPoint& a, const ProjPoint& b) {
  return form(s, a, b).abs() <= s.iso_tol() * a.rep().aux_norm() * b.rep().aux_norm();
}

// pi'[p] v = p <p,v> / <p,p>
inline Vector proj_para(const Space& s, const ProjPoint& p, const Vector& v) {
  require_nonisotropic(s, p);
  return p.rep() * (s.form(p.rep(), v) / s.norm2(p.rep()));
}

// pi[p] v = v - pi'[p] v
inline Vector proj_perp(const Space& s, const ProjPoint& p, const Vector& v) { return v - proj_para(s, p, v); }

// The projectors as linear maps.
inline Matrix proj_para_map(const Space& s, const ProjPoint& p) {
  require_nonisotropic(s, p);
  return rank_one(s, p.rep(), p.rep()) / s.norm2(p.rep());
}

inline Matrix proj_perp_map(const Space& s, const ProjPoint& p) { return s.identity() - proj_para_map(s, p); }

// ta(p,q) = <p,q><q,p> / (<p,p><q,q>)
inline double tance(const Space& s, const ProjPoint& p, const ProjPoint& q) {
  require_nonisotropic(s, p);
  require_nonisotropic(s, q);
  return form(s, p, q).abs2() / (s.norm2(p.rep()) * s.norm2(q.rep()));
}

// D(p,q) = <p,p><q,q> - <p,q><q,p>
inline double gram_D(const Space& s, const Vector& p, const Vector& q) {
  return s.norm2(p) * s.norm2(q) - s.form(p, q).abs2();
}

// K-linear independence of two vectors, judged on the auxiliary structure.
inline bool independent(const Vector& p, const Vector& q, double tol) {
  if (p.aux_norm2() == 0 || q.aux_norm2() == 0) return false;
  return !same_point(ProjPoint(p), ProjPoint(q), tol);
}

inline LineClass line_classify(const Space& s, const Vector& p, const Vector& q) {
  s.check(p);
  s.check(q);
  if (!independent(p, q, s.iso_tol())) fail(Errc::dependent_vectors, "vectors do not span a projective line");
  const double np = p.aux_norm2();
  const double nq = q.aux_norm2();
  const double tol = s.iso_tol();
  const bool null_pp = std::abs(s.norm2(p)) <= tol * np;
  const bool null_qq = std::abs(s.norm2(q)) <= tol * nq;
  const bool null_pq = s.form(p, q).abs() <= tol * std::sqrt(np * nq);
  if (null_pp && null_qq && null_pq) return LineClass::Null;
  // D is not invariant under changes of basis of the plane, only its sign
  // is. Measure it in an auxiliary-orthonormal basis so the tolerance is
  // comparable across inputs.
  const Vector e1 = p / std::sqrt(np);
  Vector e2 = q - e1 * aux_dot(e1, q);
  e2 = e2 / e2.aux_norm();
  const double d = gram_D(s, e1, e2);
  const double jn = s.form_matrix().aux_norm();
  if (std::abs(d) <= tol * jn * jn) return LineClass::Euclidean;
  return d > 0 ? LineClass::Spherical : LineClass::Hyperbolic;
}

// The unique point of the line through p and q that is orthogonal to p.
inline ProjPoint orthopoint_in_line(const Space& s, const ProjPoint& p, const ProjPoint& q) {
  require_nonisotropic(s, p);
  if (same_point(s, p, q)) fail(Errc::equal_points, "q coincides with p");
  const Vector r = proj_perp(s, p, q.rep());
  if (r.aux_norm2() <= s.iso_tol() * q.rep().aux_norm2()) fail(Errc::equal_points, "q lies in p.K");
  return ProjPoint(r);
}

}  // namespace classic
