#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <ostream>

#include "classic/errors.hpp"

namespace classic {

enum class Field { R, C, H };

constexpr int real_dim(Field f) {
  switch (f) {
    case Field::R: return 1;
    case Field::C: return 2;
    case Field::H: return 4;
  }
  return 0;
}

constexpr const char* to_string(Field f) {
  switch (f) {
    case Field::R: return "R";
    case Field::C: return "C";
    case Field::H: return "H";
  }
  return "?";
}

// Element of R, C or H stored as a + bi + cj + dk. Components that do not
// belong to the field are kept at exactly zero, and arithmetic between
// scalars of different fields is rejected.
class Scalar {
 public:
  constexpr Scalar() = default;
  constexpr Scalar(Field f, double a, double b = 0, double c = 0, double d = 0) : field_(f), c_{a, b, c, d} {
    if (f == Field::R) c_[1] = 0;
    if (f != Field::H) c_[2] = c_[3] = 0;
  }

  static constexpr Scalar real(double a, Field f = Field::R) { return Scalar(f, a); }
  static constexpr Scalar complex(double a, double b) { return Scalar(Field::C, a, b); }
  static constexpr Scalar quaternion(double a, double b, double c, double d) { return Scalar(Field::H, a, b, c, d); }

  constexpr Field field() const { return field_; }
  constexpr double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  constexpr const std::array<double, 4>& coeffs() const { return c_; }

  constexpr double re() const { return c_[0]; }
  constexpr double abs2() const { return c_[0] * c_[0] + c_[1] * c_[1] + c_[2] * c_[2] + c_[3] * c_[3]; }
  double abs() const { return std::sqrt(abs2()); }
  // Norm of the imaginary part.
  double imag_abs() const { return std::sqrt(c_[1] * c_[1] + c_[2] * c_[2] + c_[3] * c_[3]); }
  constexpr bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

  constexpr Scalar conj() const { return Scalar(field_, c_[0], -c_[1], -c_[2], -c_[3]); }

  Scalar inv() const {
    const double n = abs2();
    if (n == 0) fail(Errc::division_by_zero, "inverse of zero scalar");
    return Scalar(field_, c_[0] / n, -c_[1] / n, -c_[2] / n, -c_[3] / n);
  }

  Scalar operator-() const { return Scalar(field_, -c_[0], -c_[1], -c_[2], -c_[3]); }

  Scalar& operator+=(const Scalar& o) {
    check(o);
    for (std::size_t i = 0; i < 4; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    check(o);
    for (std::size_t i = 0; i < 4; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Scalar& operator*=(double s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, double s) { return a *= s; }
  friend Scalar operator*(double s, Scalar a) { return a *= s; }
  friend Scalar operator/(Scalar a, double s) { return a *= 1.0 / s; }

  // Hamilton product; order-sensitive for H.
  friend Scalar operator*(const Scalar& x, const Scalar& y) {
    x.check(y);
    const auto& p = x.c_;
    const auto& q = y.c_;
    return Scalar(x.field_,
                  p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
                  p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
                  p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
                  p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]);
  }

  // Right division x * inv(y).
  friend Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inv(); }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.field_ == b.field_ && a.c_ == b.c_; }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    os << '(' << s.c_[0];
    const char* units[] = {"", "i", "j", "k"};
    for (int i = 1; i < real_dim(s.field_); ++i) os << (s.c_[i] < 0 ? " - " : " + ") << std::abs(s.c_[i]) << units[i];
    return os << ')';
  }

 private:
  void check(const Scalar& o) const {
    if (field_ != o.field_) fail(Errc::field_mismatch, "scalars from different fields");
  }

  Field field_ = Field::R;
  std::array<double, 4> c_{0, 0, 0, 0};
};

inline Scalar conj(const Scalar& x) { return x.conj(); }
inline double re(const Scalar& x) { return x.re(); }
inline double abs(const Scalar& x) { return x.abs(); }
inline Scalar inv(const Scalar& x) { return x.inv(); }

// Principal argument in (-pi, pi]; negative reals map to +pi.
inline double arg(const Scalar& x) {
  if (x.field() == Field::H) fail(Errc::unsupported_field, "arg is only defined over C");
  if (x.is_zero()) fail(Errc::division_by_zero, "arg of zero");
  if (x[1] == 0 && x[0] < 0) return std::numbers::pi;
  return std::atan2(x[1], x[0]);
}

inline Scalar unit_i(Field f) {
  if (f == Field::R) fail(Errc::unsupported_field, "no imaginary unit in R");
  return Scalar(f, 0, 1);
}

// Relative closeness of two scalars of the same field.
inline double distance(const Scalar& a, const Scalar& b) { return (a - b).abs(); }

}  // namespace classic
