#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "classic/scalar.hpp"

namespace classic {

// Column vector in a right K-vector space. Scalars act on the right.
class Vector {
 public:
  Vector() = default;
  Vector(int n, Field f) : e_(static_cast<std::size_t>(n), Scalar::real(0, f)) {}
  Vector(std::initializer_list<Scalar> xs) : e_(xs) { check_uniform(); }
  explicit Vector(std::vector<Scalar> xs) : e_(std::move(xs)) { check_uniform(); }

  int size() const { return static_cast<int>(e_.size()); }
  Field field() const { return e_.empty() ? Field::R : e_.front().field(); }

  Scalar& operator[](int i) { return e_[static_cast<std::size_t>(i)]; }
  const Scalar& operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
  auto begin() const { return e_.begin(); }
  auto end() const { return e_.end(); }

  // Euclidean norm of the coefficients; auxiliary, not the hermitian form.
  double aux_norm2() const {
    double s = 0;
    for (const auto& x : e_) s += x.abs2();
    return s;
  }
  double aux_norm() const { return std::sqrt(aux_norm2()); }

  // Standard coefficient pairing sum conj(a_i) b_i, used for auxiliary projections.
  friend Scalar aux_dot(const Vector& a, const Vector& b) {
    a.check(b);
    Scalar s = Scalar::real(0, a.field());
    for (int i = 0; i < a.size(); ++i) s += a[i].conj() * b[i];
    return s;
  }

  Vector& operator+=(const Vector& o) {
    check(o);
    for (int i = 0; i < size(); ++i) (*this)[i] += o[i];
    return *this;
  }
  Vector& operator-=(const Vector& o) {
    check(o);
    for (int i = 0; i < size(); ++i) (*this)[i] -= o[i];
    return *this;
  }
  Vector& operator*=(double s) {
    for (auto& x : e_) x *= s;
    return *this;
  }

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator-(Vector a) { return a *= -1.0; }
  friend Vector operator*(Vector a, double s) { return a *= s; }
  friend Vector operator*(double s, Vector a) { return a *= s; }
  friend Vector operator/(Vector a, double s) { return a *= 1.0 / s; }

  // Right scalar action v.k
  friend Vector operator*(const Vector& v, const Scalar& k) {
    Vector r = v;
    for (auto& x : r.e_) x = x * k;
    return r;
  }

  // Left coefficient-wise action k.v. This is the bimodule action used by the
  // S^3 action over H; it is not the vector-space structure.
  friend Vector left_mul(const Scalar& k, const Vector& v) {
    Vector r = v;
    for (auto& x : r.e_) x = k * x;
    return r;
  }

 private:
  void check_uniform() const {
    for (const auto& x : e_)
      if (x.field() != field()) fail(Errc::field_mismatch, "vector entries from different fields");
  }
  void check(const Vector& o) const {
    if (size() != o.size()) fail(Errc::dimension_mismatch, "vector sizes differ");
    if (size() > 0 && field() != o.field()) fail(Errc::field_mismatch, "vectors over different fields");
  }

  std::vector<Scalar> e_;
};

// n x n matrix acting on column vectors from the left. Such maps commute with
// the right scalar action and are therefore K-linear.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int n, Field f) : n_(n), field_(f), a_(static_cast<std::size_t>(n * n), Scalar::real(0, f)) {}

  static Matrix identity(int n, Field f) {
    Matrix m(n, f);
    for (int i = 0; i < n; ++i) m(i, i) = Scalar::real(1, f);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows) {
    const int n = static_cast<int>(rows.size());
    if (n == 0) fail(Errc::invalid_argument, "empty matrix");
    Matrix m(n, rows[0].empty() ? Field::R : rows[0][0].field());
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n)
        fail(Errc::dimension_mismatch, "matrix must be square");
      for (int j = 0; j < n; ++j) {
        const Scalar& x = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (x.field() != m.field_) fail(Errc::field_mismatch, "matrix entries from different fields");
        m(i, j) = x;
      }
    }
    return m;
  }

  // Matrix whose columns are the given vectors.
  static Matrix from_columns(std::span<const Vector> cols) {
    const int n = static_cast<int>(cols.size());
    if (n == 0) fail(Errc::invalid_argument, "empty matrix");
    Matrix m(n, cols[0].field());
    for (int j = 0; j < n; ++j) {
      if (cols[static_cast<std::size_t>(j)].size() != n) fail(Errc::dimension_mismatch, "column size");
      for (int i = 0; i < n; ++i) m(i, j) = cols[static_cast<std::size_t>(j)][i];
    }
    return m;
  }

  int dim() const { return n_; }
  Field field() const { return field_; }

  Scalar& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  const Scalar& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }

  Vector column(int j) const {
    Vector v(n_, field_);
    for (int i = 0; i < n_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Matrix conj_transpose() const {
    Matrix r(n_, field_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r(i, j) = (*this)(j, i).conj();
    return r;
  }

  Scalar trace() const {
    Scalar s = Scalar::real(0, field_);
    for (int i = 0; i < n_; ++i) s += (*this)(i, i);
    return s;
  }

  // Frobenius norm of the coefficients.
  double aux_norm() const {
    double s = 0;
    for (const auto& x : a_) s += x.abs2();
    return std::sqrt(s);
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  Matrix& operator+=(const Matrix& o) {
    check(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  Matrix& operator*=(double s) {
    for (auto& x : a_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) { return a *= -1.0; }
  friend Matrix operator*(Matrix a, double s) { return a *= s; }
  friend Matrix operator*(double s, Matrix a) { return a *= s; }
  friend Matrix operator/(Matrix a, double s) { return a *= 1.0 / s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    a.check(b);
    const int n = a.n_;
    Matrix r(n, a.field_);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const Scalar& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (int j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  friend Vector operator*(const Matrix& a, const Vector& v) {
    if (v.size() != a.n_) fail(Errc::dimension_mismatch, "matrix-vector size");
    Vector r(a.n_, a.field_);
    for (int i = 0; i < a.n_; ++i)
      for (int j = 0; j < a.n_; ++j) r[i] += a(i, j) * v[j];
    return r;
  }

  // Entrywise left multiplication by a scalar, i.e. the composition
  // (k Id) o M. Over C this is the complex structure on maps.
  friend Matrix left_mul(const Scalar& k, const Matrix& m) {
    Matrix r = m;
    for (auto& x : r.a_) x = k * x;
    return r;
  }

  friend Matrix right_mul(const Matrix& m, const Scalar& k) {
    Matrix r = m;
    for (auto& x : r.a_) x = x * k;
    return r;
  }

 private:
  void check(const Matrix& o) const {
    if (n_ != o.n_) fail(Errc::dimension_mismatch, "matrix sizes differ");
    if (field_ != o.field_) fail(Errc::field_mismatch, "matrices over different fields");
  }

  int n_ = 0;
  Field field_ = Field::R;
  std::vector<Scalar> a_;
};

// Gauss-Jordan inverse over a division algebra. Row operations multiply on
// the left, which keeps the computation valid for quaternions.
inline Matrix inverse(const Matrix& m, double rel_tol = 1e-13) {
  const int n = m.dim();
  const Field f = m.field();
  Matrix a = m;
  Matrix r = Matrix::identity(n, f);
  const double scale = std::max(m.aux_norm(), 1e-300);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int i = col + 1; i < n; ++i)
      if (a(i, col).abs() > a(piv, col).abs()) piv = i;
    if (a(piv, col).abs() <= rel_tol * scale) fail(Errc::singular_form, "matrix is singular");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(r(piv, j), r(col, j));
      }
    const Scalar pinv = a(col, col).inv();
    for (int j = 0; j < n; ++j) {
      a(col, j) = pinv * a(col, j);
      r(col, j) = pinv * r(col, j);
    }
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      const Scalar factor = a(i, col);
      if (factor.is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        a(i, j) -= factor * a(col, j);
        r(i, j) -= factor * r(col, j);
      }
    }
  }
  return r;
}

// A right K-vector space with a nondegenerate hermitian form and the sign
// used for the induced metric on tangent spaces.
class Space {
 public:
  static Space from_signature(Field f, const std::vector<int>& signature, int metric_sign, double iso_tol = 1e-9) {
    if (signature.empty()) fail(Errc::invalid_argument, "empty signature");
    const int n = static_cast<int>(signature.size());
    Matrix j(n, f);
    for (int i = 0; i < n; ++i) {
      const int s = signature[static_cast<std::size_t>(i)];
      if (s != 1 && s != -1) fail(Errc::singular_form, "signature entries must be +1 or -1");
      j(i, i) = Scalar::real(s, f);
    }
    return Space(std::move(j), metric_sign, iso_tol);
  }

  static Space from_form(Matrix form, int metric_sign, double iso_tol = 1e-9) {
    return Space(std::move(form), metric_sign, iso_tol);
  }

  Field field() const { return form_.field(); }
  int dim() const { return form_.dim(); }
  int real_dim() const { return classic::real_dim(field()); }
  const Matrix& form_matrix() const { return form_; }
  const Matrix& form_inverse() const { return form_inv_; }
  int metric_sign() const { return sign_; }
  double iso_tol() const { return iso_tol_; }
  bool is_diagonal() const { return diagonal_; }

  Space with_iso_tol(double tol) const {
    Space s = *this;
    if (!(tol > 0)) fail(Errc::invalid_argument, "tolerance must be positive");
    s.iso_tol_ = tol;
    return s;
  }

  Scalar scalar(double a) const { return Scalar::real(a, field()); }
  Vector zero_vector() const { return Vector(dim(), field()); }
  Matrix zero_map() const { return Matrix(dim(), field()); }
  Matrix identity() const { return Matrix::identity(dim(), field()); }

  void check(const Vector& v) const {
    if (v.size() != dim()) fail(Errc::dimension_mismatch, "vector does not belong to the space");
    if (v.field() != field()) fail(Errc::field_mismatch, "vector field differs from space field");
  }
  void check(const Matrix& m) const {
    if (m.dim() != dim()) fail(Errc::dimension_mismatch, "map does not belong to the space");
    if (m.field() != field()) fail(Errc::field_mismatch, "map field differs from space field");
  }

  // <v, w> = sum conj(v_i) J_ij w_j, multiplied in exactly this order.
  Scalar form(const Vector& v, const Vector& w) const {
    check(v);
    check(w);
    Scalar s = scalar(0);
    if (diagonal_) {
      for (int i = 0; i < dim(); ++i) s += v[i].conj() * form_(i, i) * w[i];
      return s;
    }
    for (int i = 0; i < dim(); ++i) {
      const Scalar ci = v[i].conj();
      for (int j = 0; j < dim(); ++j) s += ci * form_(i, j) * w[j];
    }
    return s;
  }

  // <v, v> is real by hermitian symmetry.
  double norm2(const Vector& v) const { return form(v, v).re(); }

  // Row vector p^dagger J, so that <p, x> = sum_j row_j x_j.
  std::vector<Scalar> covector(const Vector& p) const {
    check(p);
    std::vector<Scalar> row(static_cast<std::size_t>(dim()), scalar(0));
    for (int i = 0; i < dim(); ++i) {
      const Scalar ci = p[i].conj();
      for (int j = 0; j < dim(); ++j) {
        if (diagonal_ && i != j) continue;
        row[static_cast<std::size_t>(j)] += ci * form_(i, j);
      }
    }
    return row;
  }

 private:
  Space(Matrix form, int metric_sign, double iso_tol) : form_(std::move(form)), sign_(metric_sign), iso_tol_(iso_tol) {
    if (sign_ != 1 && sign_ != -1) fail(Errc::invalid_argument, "metric sign must be +1 or -1");
    if (!(iso_tol_ > 0)) fail(Errc::invalid_argument, "tolerance must be positive");
    const int n = form_.dim();
    if (n < 1) fail(Errc::invalid_argument, "empty form");
    const double scale = form_.aux_norm();
    diagonal_ = true;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if ((form_(i, j) - form_(j, i).conj()).abs() > 1e-12 * scale) fail(Errc::not_hermitian, "form is not hermitian");
        if (i != j && !form_(i, j).is_zero()) diagonal_ = false;
      }
    // Hermitian symmetry forces a real diagonal; drop rounding noise.
    for (int i = 0; i < n; ++i) form_(i, i) = Scalar::real(form_(i, i).re(), form_.field());
    form_inv_ = inverse(form_);
  }

  Matrix form_;
  Matrix form_inv_;
  int sign_ = 1;
  double iso_tol_ = 1e-9;
  bool diagonal_ = false;
};

// t* = J^-1 t^dagger J, characterised by <t x, y> = <x, t* y>.
inline Matrix adjoint(const Space& s, const Matrix& t) {
  s.check(t);
  if (s.is_diagonal()) {
    // J^-1 t^dagger J entrywise: J_ii^-1 conj(t_ji) J_jj with real diagonal.
    Matrix r(t.dim(), t.field());
    for (int i = 0; i < t.dim(); ++i)
      for (int j = 0; j < t.dim(); ++j)
        r(i, j) = t(j, i).conj() * (s.form_matrix()(j, j).re() / s.form_matrix()(i, i).re());
    return r;
  }
  return s.form_inverse() * t.conj_transpose() * s.form_matrix();
}

// Trace of t regarded as an R-linear map: dim_R K * sum Re t_ii.
inline double real_trace(const Matrix& t) { return classic::real_dim(t.field()) * t.trace().re(); }

inline Scalar complex_trace(const Matrix& t) {
  if (t.field() != Field::C) fail(Errc::unsupported_field, "complex trace requires field C");
  return t.trace();
}

// The map x -> v <p, x>.
inline Matrix rank_one(const Space& s, const Vector& v, const Vector& p) {
  s.check(v);
  const auto row = s.covector(p);
  Matrix m(s.dim(), s.field());
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j) m(i, j) = v[i] * row[static_cast<std::size_t>(j)];
  return m;
}

// A basis with <e_i, e_j> = +-delta_ij obtained by Gram-Schmidt with respect
// to the form, always continuing with the candidate of largest relative norm.
// Candidates default to the standard basis and its pairwise sums.
inline std::vector<Vector> orthonormal_basis(const Space& s, std::vector<Vector> candidates = {}) {
  const int n = s.dim();
  const Field f = s.field();
  if (candidates.empty()) {
    for (int i = 0; i < n; ++i) {
      Vector e(n, f);
      e[i] = s.scalar(1);
      candidates.push_back(e);
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Vector e(n, f);
        e[i] = s.scalar(1);
        e[j] = s.scalar(1);
        candidates.push_back(e);
        if (f != Field::R) {
          e[j] = unit_i(f);
          candidates.push_back(e);
        }
      }
  }
  std::vector<Vector> basis;
  while (static_cast<int>(basis.size()) < n) {
    int best = -1;
    double best_ratio = 0;
    Vector best_vec;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      Vector x = candidates[c];
      for (const auto& e : basis) x -= e * (s.form(e, x) / s.norm2(e));
      const double a = x.aux_norm2();
      if (a <= 1e-16 * candidates[c].aux_norm2()) continue;  // roundoff of a spent candidate
      const double ratio = std::abs(s.norm2(x)) / a;
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best = static_cast<int>(c);
        best_vec = x;
      }
    }
    if (best < 0 || best_ratio < 1e-8) fail(Errc::breakdown, "Gram-Schmidt breakdown");
    basis.push_back(best_vec / std::sqrt(std::abs(s.norm2(best_vec))));
    candidates.erase(candidates.begin() + best);
  }
  return basis;
}

// Numbers of positive and negative directions of the form.
inline std::pair<int, int> inertia(const Space& s) {
  int pos = 0;
  for (const auto& e : orthonormal_basis(s)) pos += s.norm2(e) > 0;
  return {pos, s.dim() - pos};
}

}  // namespace classic
