#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "classic/classic.hpp"
#include "json.hpp"

namespace classic::io {

using json = nlohmann::json;

inline Field parse_field(const json& j) {
  const std::string f = j.get<std::string>();
  if (f == "R") return Field::R;
  if (f == "C") return Field::C;
  if (f == "H") return Field::H;
  fail(Errc::invalid_argument, "unknown field '" + f + "'");
}

// R -> [a], C -> [a,b], H -> [a,b,c,d]; a bare number is read as a real scalar.
inline Scalar parse_scalar(const json& j, Field f) {
  if (j.is_number()) return Scalar::real(j.get<double>(), f);
  if (!j.is_array()) fail(Errc::invalid_argument, "scalar must be a number or an array");
  const auto n = static_cast<int>(j.size());
  if (n != real_dim(f)) fail(Errc::field_mismatch, "scalar has " + std::to_string(n) + " components, field " + to_string(f) + " needs " + std::to_string(real_dim(f)));
  double c[4] = {0, 0, 0, 0};
  for (int i = 0; i < n; ++i) {
    if (!j[static_cast<std::size_t>(i)].is_number()) fail(Errc::invalid_argument, "scalar components must be numbers");
    c[i] = j[static_cast<std::size_t>(i)].get<double>();
  }
  return Scalar(f, c[0], c[1], c[2], c[3]);
}

inline Vector parse_vector(const json& j, const Space& s) {
  if (!j.is_array()) fail(Errc::invalid_argument, "vector must be an array of scalars");
  if (static_cast<int>(j.size()) != s.dim()) fail(Errc::dimension_mismatch, "vector length differs from the space dimension");
  Vector v = s.zero_vector();
  for (int i = 0; i < s.dim(); ++i) v[i] = parse_scalar(j[static_cast<std::size_t>(i)], s.field());
  return v;
}

inline Matrix parse_matrix(const json& j, Field f, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) fail(Errc::dimension_mismatch, "matrix must have one row per dimension");
  Matrix m(n, f);
  for (int i = 0; i < n; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) fail(Errc::dimension_mismatch, "matrix must be square");
    for (int k = 0; k < n; ++k) m(i, k) = parse_scalar(row[static_cast<std::size_t>(k)], f);
  }
  return m;
}

// {"field":"C","signature":[1,1,-1],"metric_sign":-1} or
// {"field":"H","form":[[...]],"metric_sign":1}; "iso_tol" is optional.
inline Space parse_space(const json& j) {
  if (!j.is_object()) fail(Errc::invalid_argument, "space must be an object");
  if (!j.contains("field")) fail(Errc::invalid_argument, "space needs a field");
  const Field f = parse_field(j.at("field"));
  const int sign = j.value("metric_sign", 1);
  const double tol = j.value("iso_tol", 1e-9);
  if (j.contains("signature") == j.contains("form")) fail(Errc::invalid_argument, "space needs exactly one of signature and form");
  if (j.contains("signature")) {
    const json& sig = j.at("signature");
    if (!sig.is_array()) fail(Errc::invalid_argument, "signature must be an array");
    std::vector<int> v;
    for (const auto& x : sig) {
      if (!x.is_number_integer()) fail(Errc::invalid_argument, "signature entries must be integers");
      v.push_back(x.get<int>());
    }
    return Space::from_signature(f, v, sign, tol);
  }
  const json& form = j.at("form");
  if (!form.is_array() || form.empty()) fail(Errc::invalid_argument, "form must be a nonempty matrix");
  return Space::from_form(parse_matrix(form, f, static_cast<int>(form.size())), sign, tol);
}

// {"rep": [...]} or a bare array.
inline ProjPoint parse_point(const json& j, const Space& s) {
  const json& rep = j.is_object() ? j.at("rep") : j;
  return ProjPoint(parse_vector(rep, s));
}

// {"foot": point, "map": matrix} observed at the foot, or
// {"foot": point, "image": vector} meaning the tangent sending foot to image.
inline Tangent parse_tangent(const json& j, const Space& s) {
  if (!j.is_object() || !j.contains("foot")) fail(Errc::invalid_argument, "tangent needs a foot");
  const ProjPoint foot = parse_point(j.at("foot"), s);
  if (j.contains("map")) return observe(s, foot, parse_matrix(j.at("map"), s.field(), s.dim()));
  if (j.contains("image")) return tangent_from_image(s, foot, parse_vector(j.at("image"), s));
  fail(Errc::invalid_argument, "tangent needs a map or an image");
}

// Doubles are written with 12 significant digits.
inline double round12(double x) {
  if (!std::isfinite(x) || x == 0) return x == 0 ? 0.0 : x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

inline json number(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return round12(x);
}

inline json to_json(const Scalar& k) {
  json a = json::array();
  for (int i = 0; i < real_dim(k.field()); ++i) a.push_back(number(k[i]));
  return a;
}

inline json to_json(const Vector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline json to_json(const Matrix& m) {
  json a = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.dim(); ++k) row.push_back(to_json(m(i, k)));
    a.push_back(row);
  }
  return a;
}

inline json to_json(const ProjPoint& p) { return {{"rep", to_json(p.rep())}}; }

inline json to_json(const Tangent& t) { return {{"foot", to_json(t.foot())}, {"map", to_json(t.map())}}; }

// An argument is the path of a JSON file when such a file exists, otherwise
// inline JSON text.
inline json load_argument(const std::string& arg) {
  std::string text = arg;
  if (std::ifstream in{arg}) {
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::invalid_argument, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace classic::io
