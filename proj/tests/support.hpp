#pragma once

// Shared fixtures for the unit and acceptance tests.

#include <array>
#include <complex>
#include <functional>
#include <initializer_list>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "classic/classic.hpp"
#include "classic/oracle.hpp"

namespace classic::test {

using oracle::Rng;
constexpr double pi = std::numbers::pi;

inline Vector real_vec(Field f, std::initializer_list<double> xs) {
  std::vector<Scalar> v;
  for (double x : xs) v.push_back(Scalar::real(x, f));
  return Vector(std::move(v));
}

inline Vector complex_vec(std::initializer_list<std::complex<double>> xs) {
  std::vector<Scalar> v;
  for (auto x : xs) v.push_back(Scalar::complex(x.real(), x.imag()));
  return Vector(std::move(v));
}

inline ProjPoint point(Field f, std::initializer_list<double> xs) { return ProjPoint(real_vec(f, xs)); }

inline double dist(const Matrix& a, const Matrix& b) { return (a - b).aux_norm(); }
inline double dist(const Vector& a, const Vector& b) { return (a - b).aux_norm(); }
inline double dist(const Tangent& a, const Tangent& b) { return dist(a.map(), b.map()); }
inline double dist(const Scalar& a, const Scalar& b) { return (a - b).abs(); }

// Distance scaled by the size of the reference, floored at one.
inline double rel(const Tangent& ref, const Tangent& b) { return dist(ref, b) / std::max(1.0, ref.map().aux_norm()); }
inline double rel(double ref, double b) { return std::abs(ref - b) / std::max(1.0, std::abs(ref)); }

// |a - b| reduced to (-pi, pi].
inline double angle_gap(double a, double b) { return std::abs(std::remainder(a - b, 2 * pi)); }

// Projective equality through tance, for nonisotropic points.
inline double proj_gap(const Space& s, const ProjPoint& a, const ProjPoint& b) { return std::abs(tance(s, a, b) - 1); }

inline std::optional<Errc> error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const GeometryError& e) {
    return e.code();
  }
  return std::nullopt;
}

// A negative point of P(p-perp), p positive.
inline ProjPoint negative_in_perp(const Space& s, const ProjPoint& p, Rng& rng) {
  for (int i = 0; i < 1000; ++i) {
    const Vector y = proj_perp(s, p, oracle::random_vector(s, rng));
    if (s.norm2(y) < -0.05 * y.aux_norm2()) return ProjPoint(y);
  }
  fail(Errc::breakdown, "no negative point in the slice");
}

// Two cotranchal bisector segments with common slice polar p and a negative
// point q of the slice.
struct BisectorPair {
  ProjPoint p, v1, v2, q;
};

inline BisectorPair random_bisector_pair(const Space& s, Rng& rng) {
  for (;;) {
    BisectorPair c;
    c.p = oracle::random_point(s, PointClass::Positive, rng);
    c.v1 = oracle::random_point(s, PointClass::Null, rng);
    c.v2 = oracle::random_point(s, PointClass::Null, rng);
    if (is_orthogonal(s, c.p, c.v1) || is_orthogonal(s, c.p, c.v2)) continue;
    c.q = negative_in_perp(s, c.p, rng);
    return c;
  }
}

// A bisector given by two negative points p1, p2 of its real spine, the focus
// f and a point q1 of the slice through p1.
struct BisectorSlices {
  ProjPoint p1, p2, q1;
  Vector focus;
};

inline BisectorSlices random_slices(const Space& s, Rng& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  for (;;) {
    BisectorSlices c;
    c.p1 = oracle::random_point(s, PointClass::Negative, rng);
    const ProjPoint other = oracle::random_point(s, PointClass::Negative, rng);
    if (same_point(s, c.p1, other) || is_orthogonal(s, c.p1, other)) continue;
    const Geodesic g = through_points(s, c.p1, other);
    c.p2 = ProjPoint(g.w1() * s.scalar(u(rng)) + g.w2());
    if (classify(s, c.p2) != PointClass::Negative || same_point(s, c.p1, c.p2)) continue;
    c.focus = detail::polar_of_line(s, c.p1.rep(), c.p2.rep());
    c.q1 = ProjPoint(c.p1.rep() * Scalar::complex(u(rng), u(rng)) + c.focus * Scalar::complex(u(rng), u(rng)));
    if (is_orthogonal(s, c.p1, c.q1)) continue;
    return c;
  }
}

// A random triangle of negative points in one complex geodesic.
inline std::array<ProjPoint, 3> random_triangle(const Space& s, Rng& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  for (;;) {
    const ProjPoint a = oracle::random_point(s, PointClass::Negative, rng);
    const ProjPoint b = oracle::random_point(s, PointClass::Negative, rng);
    const ProjPoint c(a.rep() * Scalar::complex(u(rng), u(rng)) + b.rep() * Scalar::complex(u(rng), u(rng)));
    if (classify(s, c) != PointClass::Negative || s.norm2(c.rep()) > -0.02 * c.rep().aux_norm2()) continue;
    if (same_point(s, a, b) || same_point(s, b, c) || same_point(s, a, c)) continue;
    return {a, b, c};
  }
}

// A negative point in the complex geodesic spanned by a and b.
inline ProjPoint random_in_line(const Space& s, const ProjPoint& a, const ProjPoint& b, Rng& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  for (;;) {
    const ProjPoint c(a.rep() * Scalar::complex(u(rng), u(rng)) + b.rep() * Scalar::complex(u(rng), u(rng)));
    if (s.norm2(c.rep()) < -0.02 * c.rep().aux_norm2()) return c;
  }
}

// Vertices (e^{i theta}, 1) of the ideal equilateral triangle, embedded in
// C^3 with J = diag(1,1,-1) as (e^{i theta}, 0, 1).
inline std::array<ProjPoint, 3> ideal_triangle() {
  std::array<ProjPoint, 3> out;
  for (int j = 0; j < 3; ++j) {
    const double th = 2 * pi * j / 3;
    out[static_cast<std::size_t>(j)] = ProjPoint(complex_vec({std::polar(1.0, th), 0.0, 1.0}));
  }
  return out;
}

// A point of the geodesic through p tangent to w, close to the absolute, for
// segments long enough that integrators show their truncation error.
inline ProjPoint far_point(const Space& s, const ProjPoint& p, const Vector& w) {
  const double pp = s.norm2(p.rep()), ww = s.norm2(w);
  const double r = pp * ww < 0 ? 0.8 * std::sqrt(-pp / ww) : 3.0;
  return oracle::unit_rep(ProjPoint(p.rep() + w * r));
}

inline Space chg_space() { return Space::from_signature(Field::C, {1, 1, -1}, -1); }

}  // namespace classic::test
