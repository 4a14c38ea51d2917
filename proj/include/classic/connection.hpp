#pragma once

#include <cmath>
#include <string_view>

#include "classic/tangent.hpp"

namespace classic {

// Covariant derivative at x of the field spread from s along the field spread
// from t: (s pi[x] t - t pi'[x] s)_x. Vanishes at the common foot.
inline Tangent nabla_spread(const Space& s, const Tangent& sv, const Tangent& tv, const ProjPoint& x) {
  require_same_foot(s, sv, tv);
  require_nonisotropic(s, x);
  const Matrix& a = sv.map();
  const Matrix& b = tv.map();
  return observe(s, x, a * proj_perp_map(s, x) * b - b * proj_para_map(s, x) * a);
}

// d/de pi'[p + t p e] at e = 0, which is t + t*.
inline Matrix projector_derivative(const Space& s, const Tangent& t) {
  require_nonisotropic(s, t.foot());
  return t.map() + adjoint(s, t.map());
}

// R(t1,t2)s = s t1* t2 + t2 t1* s - s t2* t1 - t1 t2* s
inline Tangent curvature(const Space& sp, const Tangent& t1, const Tangent& t2, const Tangent& s) {
  require_same_foot(sp, t1, t2);
  require_same_foot(sp, t1, s);
  const Matrix& a = t1.map();
  const Matrix& b = t2.map();
  const Matrix& c = s.map();
  const Matrix as = adjoint(sp, a);
  const Matrix bs = adjoint(sp, b);
  const Matrix r = c * as * b + b * as * c - c * bs * a - a * bs * c;
  return observe(sp, t1.foot(), r);
}

struct Sectional {
  double trace_value = 0;   // (R(t1,t2)t1, t2) / ((t1,t1)(t2,t2) - (t1,t2)^2)
  double closed_value = 0;  // sigma (1 + 3|k - conj k|^2 / (4 (s1 s2 - (Re k)^2)))
  int sigma1 = 0, sigma2 = 0;
  Scalar k;
  bool dependent = false;  // v1, v2 linearly dependent over K
};

namespace detail {

// Image vectors v_j = t_j p / <p,p>, rescaled by positive reals so that
// <v_j, v_j> = +-1.
struct PlaneData {
  Vector v1, v2;
  int s1 = 0, s2 = 0;
  Scalar k;
};

inline PlaneData plane_data(const Space& s, const Tangent& t1, const Tangent& t2) {
  const ProjPoint& p = t1.foot();
  const double pp = s.norm2(p.rep());
  PlaneData d;
  d.v1 = t1.image() / pp;
  d.v2 = t2.image() / pp;
  auto unitise = [&](Vector& v, int& sign) {
    const double q = s.norm2(v);
    if (std::abs(q) <= s.iso_tol() * v.aux_norm2())
      fail(Errc::degenerate_plane, "tangent with isotropic image; the closed form needs <v,v> != 0");
    sign = q > 0 ? 1 : -1;
    v = v / std::sqrt(std::abs(q));
  };
  unitise(d.v1, d.s1);
  unitise(d.v2, d.s2);
  d.k = s.form(d.v1, d.v2);
  return d;
}

}  // namespace detail

inline Sectional sectional(const Space& s, const Tangent& t1, const Tangent& t2) {
  require_same_foot(s, t1, t2);
  const double n1 = t1.map().aux_norm();
  const double n2 = t2.map().aux_norm();
  if (n1 == 0 || n2 == 0) fail(Errc::degenerate_plane, "zero tangent vector");
  const double g11 = metric(s, t1, t1);
  const double g22 = metric(s, t2, t2);
  const double g12 = metric(s, t1, t2);
  const double den = g11 * g22 - g12 * g12;
  // Relative to the metric itself, with a floor at roundoff of the maps.
  const double gscale = std::max(std::abs(g11 * g22), g12 * g12);
  if (std::abs(den) <= 1e-9 * gscale || std::abs(den) < 1e-13 * n1 * n1 * n2 * n2)
    fail(Errc::degenerate_plane, "metric is degenerate on the plane");

  Sectional out;
  out.trace_value = metric(s, curvature(s, t1, t2, t1), t2) / den;

  const auto d = detail::plane_data(s, t1, t2);
  out.sigma1 = d.s1;
  out.sigma2 = d.s2;
  out.k = d.k;
  out.dependent = !independent(d.v1, d.v2, s.iso_tol());
  const double rek = d.k.re();
  const double im2 = d.k.imag_abs() * d.k.imag_abs();  // |k - conj k|^2 / 4
  out.closed_value = s.metric_sign() * (1 + 3 * im2 / (d.s1 * d.s2 - rek * rek));
  return out;
}

enum class CurvatureRow {
  Real,                          // K = R: sigma
  IndefiniteFormIndefiniteMetric,  // sigma (-inf, 1]
  DefiniteForm,                  // sigma [1, 4)
  DegenerateForm,                // sigma 4, including K-dependent images
  IndefiniteFormDefiniteMetric,  // sigma (4, inf)
};

constexpr std::string_view to_string(CurvatureRow r) {
  switch (r) {
    case CurvatureRow::Real: return "real";
    case CurvatureRow::IndefiniteFormIndefiniteMetric: return "indefinite-form/indefinite-metric";
    case CurvatureRow::DefiniteForm: return "definite-form/definite-metric";
    case CurvatureRow::DegenerateForm: return "degenerate-form/definite-metric";
    case CurvatureRow::IndefiniteFormDefiniteMetric: return "indefinite-form/definite-metric";
  }
  return "?";
}

struct CurvatureClass {
  CurvatureRow row = CurvatureRow::Real;
  bool metric_definite = false;
  double value = 0;         // sectional curvature (trace formula)
  double scaled = 0;        // value * sigma, compared with the row interval
  bool in_interval = false;
};

// Classifies the form on v1 K + v2 K and checks the sectional curvature
// against the corresponding interval of the table.
inline CurvatureClass curvature_class(const Space& s, const Tangent& t1, const Tangent& t2, double tol = 1e-9) {
  const Sectional sec = sectional(s, t1, t2);
  CurvatureClass c;
  c.value = sec.trace_value;
  c.scaled = sec.trace_value * s.metric_sign();
  const double rek = sec.k.re();
  c.metric_definite = sec.sigma1 * sec.sigma2 - rek * rek > 0;
  const double x = c.scaled;
  if (s.field() == Field::R) {
    c.row = CurvatureRow::Real;
    c.in_interval = std::abs(x - 1) <= tol;
    return c;
  }
  // Gram determinant of the unit images.
  const double gram = sec.sigma1 * sec.sigma2 - sec.k.abs2();
  if (sec.dependent || std::abs(gram) <= tol) {
    c.row = CurvatureRow::DegenerateForm;
    c.in_interval = c.metric_definite && std::abs(x - 4) <= tol * std::max(1.0, std::abs(x));
  } else if (gram > 0) {
    c.row = CurvatureRow::DefiniteForm;
    c.in_interval = c.metric_definite && x >= 1 - tol && x <= 4 + tol;
  } else if (c.metric_definite) {
    c.row = CurvatureRow::IndefiniteFormDefiniteMetric;
    c.in_interval = x >= 4 - tol;
  } else {
    c.row = CurvatureRow::IndefiniteFormIndefiniteMetric;
    c.in_interval = x <= 1 + tol;
  }
  return c;
}

}  // namespace classic
