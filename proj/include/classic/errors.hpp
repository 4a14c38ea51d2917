#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace classic {

// Reason codes. The first group are input/validation failures, the second
// group are mathematical preconditions of the geometric operations.
enum class Errc {
  field_mismatch,
  dimension_mismatch,
  invalid_argument,
  not_hermitian,
  singular_form,
  unsupported_field,

  division_by_zero,
  isotropic_point,
  orthogonal_points,
  equal_points,
  dependent_vectors,
  euclidean_line,
  null_line,
  out_of_range,
  not_on_geodesic,
  not_in_line,
  foot_mismatch,
  degenerate_plane,
  cross_absolute,
  not_unit,
  form_not_real,
  breakdown,
};

constexpr std::string_view to_string(Errc e) {
  switch (e) {
    case Errc::field_mismatch: return "field_mismatch";
    case Errc::dimension_mismatch: return "dimension_mismatch";
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::not_hermitian: return "not_hermitian";
    case Errc::singular_form: return "singular_form";
    case Errc::division_by_zero: return "division_by_zero";
    case Errc::isotropic_point: return "isotropic_point";
    case Errc::orthogonal_points: return "orthogonal_points";
    case Errc::equal_points: return "equal_points";
    case Errc::dependent_vectors: return "dependent_vectors";
    case Errc::euclidean_line: return "euclidean_line";
    case Errc::null_line: return "null_line";
    case Errc::out_of_range: return "out_of_range";
    case Errc::not_on_geodesic: return "not_on_geodesic";
    case Errc::not_in_line: return "not_in_line";
    case Errc::foot_mismatch: return "foot_mismatch";
    case Errc::degenerate_plane: return "degenerate_plane";
    case Errc::cross_absolute: return "cross_absolute";
    case Errc::unsupported_field: return "unsupported_field";
    case Errc::not_unit: return "not_unit";
    case Errc::form_not_real: return "form_not_real";
    case Errc::breakdown: return "breakdown";
  }
  return "unknown";
}

// True for codes that describe a violated geometric precondition rather than
// malformed input.
constexpr bool is_precondition(Errc e) {
  switch (e) {
    case Errc::field_mismatch:
    case Errc::dimension_mismatch:
    case Errc::invalid_argument:
    case Errc::not_hermitian:
    case Errc::singular_form:
    case Errc::unsupported_field:
      return false;
    default:
      return true;
  }
}

class GeometryError : public std::runtime_error {
 public:
  GeometryError(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw GeometryError(code, what); }

inline void require(bool cond, Errc code, const char* what) {
  if (!cond) fail(code, what);
}

}  // namespace classic
