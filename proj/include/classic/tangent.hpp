#pragma once

#include "classic/projective.hpp"

namespace classic {

// Tangent vector at a nonisotropic point, stored as the full linear map
// V -> V that kills foot-perp and lands in foot-perp.
class Tangent {
 public:
  Tangent() = default;

  const ProjPoint& foot() const { return foot_; }
  const Matrix& map() const { return map_; }

  // The image of the foot representative, t p.
  Vector image() const { return map_ * foot_.rep(); }

  bool is_zero(double tol = 0) const { return map_.aux_norm() <= tol; }

  Tangent& operator+=(const Tangent& o) {
    map_ += o.map_;
    return *this;
  }
  Tangent& operator-=(const Tangent& o) {
    map_ -= o.map_;
    return *this;
  }
  Tangent& operator*=(double a) {
    map_ *= a;
    return *this;
  }
  friend Tangent operator+(Tangent a, const Tangent& b) { return a += b; }
  friend Tangent operator-(Tangent a, const Tangent& b) { return a -= b; }
  friend Tangent operator*(Tangent a, double s) { return a *= s; }
  friend Tangent operator*(double s, Tangent a) { return a *= s; }
  friend Tangent operator/(Tangent a, double s) { return a *= 1.0 / s; }

  // Multiplication of the image by a scalar, (k Id) o t. For K = C this is the
  // complex structure of the tangent space; for H it is not a tangent
  // operation in general and is only exposed for the S^3 action.
  friend Tangent left_mul(const Scalar& k, const Tangent& t) {
    Tangent r = t;
    r.map_ = left_mul(k, t.map_);
    return r;
  }

 private:
  friend Tangent observe(const Space& s, const ProjPoint& p, const Matrix& t);
  friend Tangent make_tangent_unchecked(ProjPoint foot, Matrix map);

  ProjPoint foot_;
  Matrix map_;
};

// Builds a tangent from a map that is already observed at foot. Callers are
// responsible for the invariant map = pi[foot] map pi'[foot].
inline Tangent make_tangent_unchecked(ProjPoint foot, Matrix map) {
  Tangent t;
  t.foot_ = std::move(foot);
  t.map_ = std::move(map);
  return t;
}

// t_p = pi[p] t pi'[p]
inline Tangent observe(const Space& s, const ProjPoint& p, const Matrix& t) {
  require_nonisotropic(s, p);
  s.check(t);
  const Vector& x = p.rep();
  // pi[p] t pi'[p] = (pi[p] t p) <p,-> / <p,p>
  const Vector image = proj_perp(s, p, t * x) / s.norm2(x);
  Tangent r;
  r.foot_ = p;
  r.map_ = rank_one(s, image, x);
  return r;
}

inline Tangent zero_tangent(const Space& s, const ProjPoint& p) { return observe(s, p, s.zero_map()); }

inline void require_same_foot(const Space& s, const Tangent& a, const Tangent& b) {
  if (!same_point(s, a.foot(), b.foot())) fail(Errc::foot_mismatch, "tangent vectors have different feet");
}

// (t1, t2) = sigma tr_R(t1* t2) / dim_R K
inline double metric(const Space& s, const Tangent& t1, const Tangent& t2) {
  require_same_foot(s, t1, t2);
  return s.metric_sign() * real_trace(adjoint(s, t1.map()) * t2.map()) / s.real_dim();
}

// <t1, t2> = sigma tr_C(t1* t2), K = C only.
inline Scalar hmetric(const Space& s, const Tangent& t1, const Tangent& t2) {
  if (s.field() != Field::C) fail(Errc::unsupported_field, "hermitian metric requires field C");
  require_same_foot(s, t1, t2);
  return complex_trace(adjoint(s, t1.map()) * t2.map()) * static_cast<double>(s.metric_sign());
}

inline double norm2(const Space& s, const Tangent& t) { return metric(s, t, t); }

// Velocity of a curve with lift c0 at a nonisotropic point: c0 -> pi[c0] c0'.
inline Tangent curve_tangent(const Space& s, const Vector& c0, const Vector& c0dot) {
  const ProjPoint p(c0);
  require_nonisotropic(s, p);
  s.check(c0dot);
  return make_tangent_unchecked(p, rank_one(s, proj_perp(s, p, c0dot), c0) / s.norm2(c0));
}

// Value at x of the field spread from t.
inline Tangent spread(const Space& s, const Tangent& t, const ProjPoint& x) { return observe(s, x, t.map()); }

// Tangent at p with t p = v, i.e. v <p,-> / <p,p> after observation.
inline Tangent tangent_from_image(const Space& s, const ProjPoint& p, const Vector& v) {
  require_nonisotropic(s, p);
  return observe(s, p, rank_one(s, v, p.rep()) / s.norm2(p.rep()));
}

}  // namespace classic
