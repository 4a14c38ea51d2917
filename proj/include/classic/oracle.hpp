#pragma once

// Numerical cross-checks for the closed forms. Nothing here calls the
// connection, transport or area formulas it is meant to verify.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "classic/tangent.hpp"

namespace classic::oracle {

using Rng = std::mt19937_64;
using FieldFn = std::function<Tangent(const ProjPoint&)>;

inline Scalar random_scalar(Field f, Rng& rng) {
  std::normal_distribution<double> n;
  return Scalar(f, n(rng), n(rng), n(rng), n(rng));
}

inline Vector random_vector(const Space& s, Rng& rng) {
  Vector v = s.zero_vector();
  for (int i = 0; i < s.dim(); ++i) v[i] = random_scalar(s.field(), rng);
  return v;
}

inline Matrix random_map(const Space& s, Rng& rng) {
  Matrix m = s.zero_map();
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j) m(i, j) = random_scalar(s.field(), rng);
  return m;
}

// Nonzero scalar with |k| in [0.1, 10], log-uniform.
inline Scalar random_unit_scale(Field f, Rng& rng) {
  Scalar k;
  do k = random_scalar(f, rng);
  while (k.abs() < 1e-3);
  std::uniform_real_distribution<double> u(std::log(0.1), std::log(10.0));
  return k * (std::exp(u(rng)) / k.abs());
}

// Random point of the requested class; for nonnull classes |<x,x>| is kept
// at least `margin` times the auxiliary norm so the point is not near the absolute.
inline ProjPoint random_point(const Space& s, PointClass c, Rng& rng, double margin = 0.05) {
  if (c != PointClass::Null) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
      const Vector x = random_vector(s, rng);
      const double q = s.norm2(x);
      if (std::abs(q) < margin * x.aux_norm2()) continue;
      if ((q > 0) == (c == PointClass::Positive)) return ProjPoint(x);
    }
    fail(Errc::breakdown, "no point of the requested class");
  }
  const Vector a = random_point(s, PointClass::Positive, rng).rep();
  const Vector b = random_point(s, PointClass::Negative, rng).rep();
  // <a + b r, a + b r> = qa + 2 Re<a,b> r + qb r^2 has a real root since qa qb < 0.
  const double qa = s.norm2(a), qb = s.norm2(b), m = s.form(a, b).re();
  const double r = (-m + std::sqrt(m * m - qa * qb)) / qb;
  return ProjPoint(a + b * r);
}

inline Tangent random_tangent(const Space& s, const ProjPoint& p, Rng& rng) { return observe(s, p, random_map(s, rng)); }

// Two unit tangents at p whose metric Gram determinant is at least `cond`
// relative to the product of their squared lengths.
inline std::pair<Tangent, Tangent> random_plane(const Space& s, const ProjPoint& p, Rng& rng, double cond = 1e-4) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const Tangent a = random_tangent(s, p, rng);
    const Tangent b = random_tangent(s, p, rng);
    const Tangent ua = a / a.map().aux_norm();
    const Tangent ub = b / b.map().aux_norm();
    const double aa = metric(s, ua, ua), bb = metric(s, ub, ub);
    const double g = aa * bb - std::pow(metric(s, ua, ub), 2);
    if (std::abs(g) >= cond * std::abs(aa * bb) && aa * bb != 0) return {ua, ub};
  }
  fail(Errc::breakdown, "no well-conditioned plane");
}

// Random J-unitary map: a J-orthonormal basis E is carried to the J-orthonormal
// basis F obtained from a perturbation of E, so U = F E^-1.
inline Matrix random_isometry(const Space& s, std::uint64_t seed, double spread = 0.6) {
  Rng rng(seed);
  const auto e = orthonormal_basis(s);
  const Matrix em = Matrix::from_columns(e);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Vector> cand;
    for (const auto& v : e) cand.push_back(v + random_vector(s, rng) * spread);
    std::vector<Vector> f;
    try {
      f = orthonormal_basis(s, cand);
    } catch (const GeometryError&) {
      continue;
    }
    // Match signs position by position.
    std::vector<Vector> pos, neg;
    for (const auto& v : f) (s.norm2(v) > 0 ? pos : neg).push_back(v);
    std::vector<Vector> ordered;
    std::size_t ip = 0, in = 0;
    for (const auto& v : e) ordered.push_back(s.norm2(v) > 0 ? pos[ip++] : neg[in++]);
    return Matrix::from_columns(ordered) * inverse(em);
  }
  fail(Errc::breakdown, "random isometry: Gram-Schmidt kept breaking down");
}

// Affine chart x -> p + sum_i b_i x_i around p, with a real basis of p-perp
// that is auxiliary-orthonormal.
class AffineChart {
 public:
  AffineChart(const Space& s, const ProjPoint& p) : base_(p) {
    require_nonisotropic(s, p);
    const int n = s.dim();
    std::vector<Vector> kb;  // K-basis of p-perp
    for (int i = 0; i < n && static_cast<int>(kb.size()) < n - 1; ++i) {
      Vector x = s.zero_vector();
      x[i] = s.scalar(1);
      x = x - p.rep() * (s.form(p.rep(), x) / s.norm2(p.rep()));
      for (const auto& b : kb) x -= b * aux_dot(b, x);
      const double a = x.aux_norm();
      if (a > 1e-8) kb.push_back(x / a);
    }
    if (static_cast<int>(kb.size()) != n - 1) fail(Errc::breakdown, "chart basis");
    for (const auto& b : kb)
      for (int u = 0; u < real_dim(s.field()); ++u) basis_.push_back(b * Scalar(s.field(), u == 0, u == 1, u == 2, u == 3));
  }

  int dim() const { return static_cast<int>(basis_.size()); }
  const ProjPoint& base() const { return base_; }
  const std::vector<Vector>& basis() const { return basis_; }

  Vector lift(std::span<const double> x) const {
    Vector v = base_.rep();
    for (std::size_t i = 0; i < basis_.size(); ++i) v += basis_[i] * x[i];
    return v;
  }

 private:
  ProjPoint base_;
  std::vector<Vector> basis_;
};

// (d/de X(p + e t p))_p by central differences, Richardson-extrapolated once.
inline Tangent fd_covariant_derivative(const Space& s, const FieldFn& field, const Tangent& direction, double step = 1e-4) {
  if (!(step >= 1e-8 && step <= 1e-4)) fail(Errc::invalid_argument, "finite-difference step must lie in [1e-8, 1e-4]");
  const Vector& p = direction.foot().rep();
  const Vector tp = direction.map() * p;
  auto diff = [&](double h) {
    const Matrix plus = field(ProjPoint(p + tp * h)).map();
    const Matrix minus = field(ProjPoint(p - tp * h)).map();
    return (plus - minus) / (2 * h);
  };
  const Matrix d = (diff(step / 2) * 4.0 - diff(step)) / 3.0;
  return observe(s, direction.foot(), d);
}

// R(t1,t2)s = nabla_T2 nabla_T1 S - nabla_T1 nabla_T2 S for the fields spread
// from t1, t2, s (their bracket vanishes at the foot), by nested differences.
inline Tangent fd_curvature(const Space& sp, const Tangent& t1, const Tangent& t2, const Tangent& s, double step = 1e-4) {
  auto spread_of = [&sp](const Tangent& t) { return FieldFn([&sp, t](const ProjPoint& x) { return observe(sp, x, t.map()); }); };
  auto inner = [&](const Tangent& a) {
    return FieldFn([&, a](const ProjPoint& x) {
      return fd_covariant_derivative(sp, spread_of(s), observe(sp, x, a.map()), step);
    });
  };
  const Tangent a = fd_covariant_derivative(sp, inner(t1), t2, step);
  const Tangent b = fd_covariant_derivative(sp, inner(t2), t1, step);
  return a - b;
}

// Lift c0(u) = p (1 - u) + q' u of G[p,q] with q' = q <q,p> sgn<p,p>, so that
// <p, c0(u)> never vanishes for u in [0,1].
struct SegmentLift {
  Vector p, q;
  Vector at(double u) const { return p * (1 - u) + q * u; }
  Vector velocity() const { return q - p; }
};

inline SegmentLift segment_lift(const Space& s, const ProjPoint& p, const ProjPoint& q) {
  const double pp = s.norm2(p.rep());
  const Scalar qp = s.form(q.rep(), p.rep());
  // Unit phase and matching auxiliary size keep the speed of the lift even.
  const double size = p.rep().aux_norm() / (q.rep().aux_norm() * qp.abs());
  return {p.rep(), q.rep() * qp * (pp > 0 ? size : -size)};
}

// Parallel transport by integrating X' = -P' X pi' + pi X P' along the lift,
// where P = pi'[c(u)], with classical RK4.
inline Tangent ode_transport(const Space& s, const Tangent& t, const ProjPoint& q, int steps = 1024) {
  if (steps < 64) fail(Errc::invalid_argument, "need at least 64 steps");
  const ProjPoint& p = t.foot();
  require_nonisotropic(s, p);
  require_nonisotropic(s, q);
  if (same_point(s, p, q)) return t;
  const SegmentLift lift = segment_lift(s, p, q);
  const Matrix id = s.identity();
  const bool positive = s.norm2(p.rep()) > 0;

  auto para = [&](const Vector& c) { return rank_one(s, c, c) / s.norm2(c); };
  auto rhs = [&](double u, const Matrix& x) {
    const Vector c = lift.at(u);
    const Vector cd = lift.velocity();
    const double cc = s.norm2(c);
    if (std::abs(cc) <= s.iso_tol() * c.aux_norm2() || (cc > 0) != positive)
      fail(Errc::isotropic_point, "segment meets the absolute");
    const Matrix pp = para(c);
    const Matrix dp = (rank_one(s, cd, c) + rank_one(s, c, cd)) / cc - pp * (2 * s.form(c, cd).re() / cc);
    return (id - pp) * x * dp - dp * x * pp;
  };
  Matrix x = t.map();
  const double h = 1.0 / steps;
  for (int k = 0; k < steps; ++k) {
    const double u = k * h;
    const Matrix k1 = rhs(u, x);
    const Matrix k2 = rhs(u + h / 2, x + k1 * (h / 2));
    const Matrix k3 = rhs(u + h / 2, x + k2 * (h / 2));
    const Matrix k4 = rhs(u + h, x + k3 * h);
    x += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6);
  }
  return observe(s, q, x);
}

namespace detail {

// Gauss-Legendre nodes and weights on [0, 1].
inline const std::vector<std::pair<double, double>>& gauss_legendre_8() {
  static const std::vector<std::pair<double, double>> rule = [] {
    const std::array<double, 4> x = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363};
    const std::array<double, 4> w = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
    std::vector<std::pair<double, double>> r;
    for (int i = 0; i < 4; ++i) {
      r.emplace_back(0.5 * (1 - x[static_cast<std::size_t>(i)]), 0.5 * w[static_cast<std::size_t>(i)]);
      r.emplace_back(0.5 * (1 + x[static_cast<std::size_t>(i)]), 0.5 * w[static_cast<std::size_t>(i)]);
    }
    return r;
  }();
  return rule;
}

template <class F>
double composite_gl(F f, double a, double b, int panels) {
  double sum = 0;
  const double h = (b - a) / panels;
  for (int k = 0; k < panels; ++k)
    for (const auto& [x, w] : gauss_legendre_8()) sum += w * h * f(a + (k + x) * h);
  return sum;
}

}  // namespace detail

// Arc length of G[p,q] integrated along the segment lift, with the metric
// |sigma (<c,c><c',c'> - |<c,c'>|^2)| / <c,c>^2 evaluated directly.
inline double numeric_length(const Space& s, const ProjPoint& p, const ProjPoint& q, int panels = 64) {
  if (same_point(s, p, q)) return 0;
  const SegmentLift lift = segment_lift(s, p, q);
  const Vector cd = lift.velocity();
  return detail::composite_gl(
      [&](double u) {
        const Vector c = lift.at(u);
        const double cc = s.norm2(c);
        const double g = (cc * s.norm2(cd) - s.form(c, cd).abs2()) / (cc * cc);
        return std::sqrt(std::abs(g));
      },
      0.0, 1.0, panels);
}

// Signed area of a triangle in a complex geodesic of a dimension-3 complex
// space of signature ++-, integrated in the Klein model of the line with the
// density of curvature -4. Counter-clockwise triangles in the disc coordinate
// z = a/b, x = e a + f b with <e,e> = 1, <f,f> = -1, <e,f> = 0, are positive.
inline double numeric_area(const Space& s, const ProjPoint& p1, const ProjPoint& p2, const ProjPoint& p3, int mesh = 64) {
  if (mesh < 1) fail(Errc::invalid_argument, "mesh must be positive");
  if (s.field() != Field::C) fail(Errc::unsupported_field, "numeric area requires field C");
  // J-orthonormal basis of the line spanned by the vertices.
  std::vector<Vector> cand = {p1.rep(), p2.rep(), p3.rep(), p1.rep() + p2.rep(), p2.rep() + p3.rep(),
                              p1.rep() + p2.rep() * unit_i(Field::C), p2.rep() + p3.rep() * unit_i(Field::C)};
  std::vector<Vector> basis;
  for (int k = 0; k < 2; ++k) {
    double best = 0;
    int bi = -1;
    Vector bv;
    for (std::size_t c = 0; c < cand.size(); ++c) {
      Vector x = cand[c];
      for (const auto& e : basis) x -= e * (s.form(e, x) / s.norm2(e));
      if (x.aux_norm2() <= 1e-16 * cand[c].aux_norm2()) continue;
      const double r = std::abs(s.norm2(x)) / x.aux_norm2();
      if (r > best) best = r, bi = static_cast<int>(c), bv = x;
    }
    if (bi < 0 || best < 1e-8) fail(Errc::breakdown, "degenerate vertex configuration");
    basis.push_back(bv / std::sqrt(std::abs(s.norm2(bv))));
  }
  const double s0 = s.norm2(basis[0]);
  if (s0 * s.norm2(basis[1]) > 0) fail(Errc::invalid_argument, "line is not hyperbolic");
  const Vector& e = s0 > 0 ? basis[0] : basis[1];
  const Vector& f = s0 > 0 ? basis[1] : basis[0];

  // Klein coordinate of each vertex.
  std::array<std::array<double, 2>, 3> k{};
  const ProjPoint* pts[3] = {&p1, &p2, &p3};
  for (int j = 0; j < 3; ++j) {
    const Vector& x = pts[j]->rep();
    const Scalar a = s.form(e, x);
    const Scalar b = -s.form(f, x);
    const Scalar z = a / b;
    const double z2 = z.abs2();
    k[static_cast<std::size_t>(j)] = {2 * z[0] / (1 + z2), 2 * z[1] / (1 + z2)};
  }
  auto density = [](double x, double y) {
    const double r = std::max(1 - x * x - y * y, 1e-300);
    return 1.0 / (4 * r * std::sqrt(r));
  };
  using P = std::array<double, 2>;
  auto mid = [](const P& a, const P& b) { return P{(a[0] + b[0]) / 2, (a[1] + b[1]) / 2}; };
  const P c = {(k[0][0] + k[1][0] + k[2][0]) / 3, (k[0][1] + k[1][1] + k[2][1]) / 3};
  const double orient = (k[1][0] - k[0][0]) * (k[2][1] - k[0][1]) - (k[1][1] - k[0][1]) * (k[2][0] - k[0][0]);
  if (std::abs(orient) < 1e-14) return 0.0;

  // Integral over the triangle (v, a, b) of the density, with the vertex v
  // treated by a Duffy map and u = w^2 to absorb an inverse square root.
  auto sub = [&](const P& v, const P& a, const P& b) {
    const double jac = std::abs((a[0] - v[0]) * (b[1] - v[1]) - (a[1] - v[1]) * (b[0] - v[0]));
    const int panels = std::max(1, mesh / 8);
    return detail::composite_gl(
        [&](double w) {
          const double u = w * w;
          return detail::composite_gl(
              [&](double t) {
                const double x = v[0] + u * ((a[0] - v[0]) + t * (b[0] - a[0]));
                const double y = v[1] + u * ((a[1] - v[1]) + t * (b[1] - a[1]));
                return density(x, y) * u * jac * 2 * w;
              },
              0.0, 1.0, panels);
        },
        0.0, 1.0, panels);
  };
  double area = 0;
  for (int j = 0; j < 3; ++j) {
    const P& v = k[static_cast<std::size_t>(j)];
    const P& nxt = k[static_cast<std::size_t>((j + 1) % 3)];
    const P& prv = k[static_cast<std::size_t>((j + 2) % 3)];
    area += sub(v, mid(v, nxt), c) + sub(v, c, mid(v, prv));
  }
  return orient > 0 ? area : -area;
}

// Representative rescaled to unit auxiliary norm.
inline ProjPoint unit_rep(const ProjPoint& p) { return ProjPoint(p.rep() / p.rep().aux_norm()); }

// Tangent rescaled to unit auxiliary operator norm.
inline Tangent unit_tangent(const Tangent& t) { return t / t.map().aux_norm(); }

// A point p of class c, a second point q on a noneuclidean line through p and
// the data used by the transport theorems:
//   t  tangent at p to the geodesic through p and q (t p = w = pi[p] q),
//   h  tangent at p to the projective line (h p = w k),
//   v  tangent at p orthogonal to the line,
//   g  a point of the geodesic in the component of p, not orthogonal to p.
// `margin` keeps p and q away from the absolute as in random_point.
struct LineSample {
  ProjPoint p, q, g;
  Vector w;
  Tangent t, h, v;
};

inline LineSample sample_line(const Space& s, PointClass c, Rng& rng, double margin = 0.05) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    LineSample out;
    out.p = unit_rep(random_point(s, c, rng, margin));
    out.q = unit_rep(random_point(s, c, rng, margin));
    if (same_point(s, out.p, out.q) || is_orthogonal(s, out.p, out.q)) continue;
    const LineClass lc = line_classify(s, out.p.rep(), out.q.rep());
    if (lc == LineClass::Euclidean || lc == LineClass::Null) continue;
    out.w = proj_perp(s, out.p, out.q.rep());
    const double pp = s.norm2(out.p.rep());
    const double ww = s.norm2(out.w);
    if (std::abs(ww) < 0.05 * out.w.aux_norm2()) continue;
    out.t = unit_tangent(tangent_from_image(s, out.p, out.w));
    out.h = unit_tangent(tangent_from_image(s, out.p, out.w * random_scalar(s.field(), rng)));
    if (s.dim() > 2) {
      Vector y = random_vector(s, rng);
      y = proj_perp(s, out.p, y);
      y = y - out.w * (s.form(out.w, y) / ww);
      if (y.aux_norm() < 1e-3) continue;
      const Tangent v = tangent_from_image(s, out.p, y);
      if (v.map().aux_norm() < 1e-6) continue;
      out.v = unit_tangent(v);
    } else {
      out.v = zero_tangent(s, out.p);
    }
    // g = p + w r with r real; <g,g> = <p,p> + r^2 <w,w>.
    std::uniform_real_distribution<double> u(-1, 1);
    double r = 2 * u(rng);
    if (pp * ww < 0) r = 0.9 * u(rng) * std::sqrt(-pp / ww);
    out.g = unit_rep(ProjPoint(out.p.rep() + out.w * r));
    if (std::abs(s.norm2(out.g.rep())) < 0.02) continue;
    return out;
  }
  fail(Errc::breakdown, "could not sample a line configuration");
}

// A nonisotropic point p on a euclidean line, the isotropic point u of that
// line, a tangent t at p along the geodesic through p and u, and a point g of
// that geodesic.
struct EuclideanSample {
  ProjPoint p, g;
  Vector u;
  Tangent t;
};

inline EuclideanSample sample_euclidean(const Space& s, Rng& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const Vector u = random_point(s, PointClass::Null, rng).rep();
    const Vector un = u / u.aux_norm();
    const Vector z = random_vector(s, rng);
    const Scalar uz = s.form(un, z);
    if (uz.abs() < 0.1 * z.aux_norm()) continue;
    const Vector r = random_vector(s, rng);
    const Vector x = r - z * (uz.inv() * s.form(un, r));
    if (std::abs(s.norm2(x)) < 0.05 * x.aux_norm2()) continue;
    EuclideanSample out;
    out.p = unit_rep(ProjPoint(x));
    const Scalar k = random_unit_scale(s.field(), rng);
    const Vector dir = un * (k / k.abs()) * std::sqrt(std::abs(s.norm2(x)) / x.aux_norm2());
    out.u = dir;
    out.t = unit_tangent(tangent_from_image(s, out.p, dir));
    std::uniform_real_distribution<double> d(-1, 1);
    out.g = unit_rep(ProjPoint(out.p.rep() + dir * d(rng)));
    return out;
  }
  fail(Errc::breakdown, "could not sample a euclidean line");
}

}  // namespace classic::oracle
