#pragma once

// Residual report comparing the closed forms with the numerical oracles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "classic/classic.hpp"
#include "classic/oracle.hpp"
#include "json_io.hpp"

namespace classic::verify {

struct Check {
  std::string name;
  std::string space;
  double tolerance = 0;
  int trials = 0;
  double max_residual = 0;
  int failures = 0;  // trials that threw

  bool pass() const { return failures == 0 && max_residual <= tolerance; }
};

inline io::json to_json(const Check& c) {
  return {{"name", c.name},
          {"space", c.space},
          {"trials", c.trials},
          {"max_residual", io::number(c.max_residual)},
          {"tolerance", c.tolerance},
          {"errors", c.failures},
          {"pass", c.pass()}};
}

struct Config {
  std::string label;
  Space space;
};

inline std::vector<Config> default_configs() {
  return {
      {"R ++- sigma=-1", Space::from_signature(Field::R, {1, 1, -1}, -1)},
      {"C ++- sigma=-1", Space::from_signature(Field::C, {1, 1, -1}, -1)},
      {"H ++- sigma=-1", Space::from_signature(Field::H, {1, 1, -1}, -1)},
  };
}

// Runs body(rng) `trials` times and keeps the largest returned residual.
inline Check run(const std::string& name, const Config& cfg, double tol, int trials, std::uint64_t seed,
                 const std::function<double(oracle::Rng&)>& body) {
  Check c{name, cfg.label, tol, trials, 0, 0};
  oracle::Rng rng(seed);
  for (int i = 0; i < trials; ++i) {
    try {
      c.max_residual = std::max(c.max_residual, body(rng));
    } catch (const GeometryError&) {
      ++c.failures;
    }
  }
  return c;
}

inline double diff(const Tangent& a, const Tangent& b) { return (a.map() - b.map()).aux_norm(); }

// Difference scaled by the size of the reference when that exceeds one.
inline double rel_diff(const Tangent& ref, const Tangent& b) { return diff(ref, b) / std::max(1.0, ref.map().aux_norm()); }

inline std::vector<Check> run_all(std::uint64_t seed, int trials) {
  std::vector<Check> out;
  for (const auto& cfg : default_configs()) {
    const Space& s = cfg.space;
    out.push_back(run("curvature-vs-finite-differences", cfg, 1e-5, trials, seed, [&](oracle::Rng& rng) {
      // Nested differences lose precision near the absolute, so keep a margin.
      const ProjPoint p = oracle::unit_rep(oracle::random_point(s, PointClass::Negative, rng, 0.25));
      const Tangent a = oracle::unit_tangent(oracle::random_tangent(s, p, rng));
      const Tangent b = oracle::unit_tangent(oracle::random_tangent(s, p, rng));
      const Tangent c = oracle::unit_tangent(oracle::random_tangent(s, p, rng));
      return diff(curvature(s, a, b, c), oracle::fd_curvature(s, a, b, c));
    }));
    out.push_back(run("tn-parallel", cfg, 1e-6, trials, seed + 1, [&](oracle::Rng& rng) {
      const auto x = oracle::sample_line(s, PointClass::Negative, rng);
      return oracle::fd_covariant_derivative(s, tn_field(s, x.h), field_Tn(s, x.t, x.g)).map().aux_norm();
    }));
    out.push_back(run("ct-parallel", cfg, 1e-6, trials, seed + 2, [&](oracle::Rng& rng) {
      const auto x = oracle::sample_line(s, PointClass::Negative, rng);
      return oracle::fd_covariant_derivative(s, ct_field(s, x.v), field_Tn(s, x.t, x.g)).map().aux_norm();
    }));
    out.push_back(run("eu-parallel", cfg, 1e-6, trials, seed + 3, [&](oracle::Rng& rng) {
      const auto x = oracle::sample_euclidean(s, rng);
      const Tangent sv = oracle::unit_tangent(oracle::random_tangent(s, x.p, rng));
      return oracle::fd_covariant_derivative(s, eu_field(s, sv), field_Tn(s, x.t, x.g)).map().aux_norm();
    }));
    out.push_back(run("transport-vs-ode", cfg, 1e-6, trials, seed + 4, [&](oracle::Rng& rng) {
      const auto x = oracle::sample_line(s, PointClass::Negative, rng);
      const Tangent t = oracle::unit_tangent(oracle::random_tangent(s, x.p, rng));
      return rel_diff(transport(s, t, x.g).tangent, oracle::ode_transport(s, t, x.g, 1024));
    }));
    out.push_back(run("euclidean-transport-vs-ode", cfg, 1e-6, trials, seed + 5, [&](oracle::Rng& rng) {
      const auto x = oracle::sample_euclidean(s, rng);
      const Tangent t = oracle::unit_tangent(oracle::random_tangent(s, x.p, rng));
      return rel_diff(transport(s, t, x.g).tangent, oracle::ode_transport(s, t, x.g, 1024));
    }));
    out.push_back(run("length-vs-arc-length", cfg, 1e-8, trials, seed + 6, [&](oracle::Rng& rng) {
      const auto x = oracle::sample_line(s, PointClass::Negative, rng);
      return std::abs(length(s, x.p, x.g) - oracle::numeric_length(s, x.p, x.g));
    }));
    out.push_back(run("sectional-trace-vs-closed-form", cfg, 1e-9, trials, seed + 7, [&](oracle::Rng& rng) {
      const ProjPoint p = oracle::unit_rep(oracle::random_point(s, PointClass::Negative, rng, 0.25));
      const auto [a, b] = oracle::random_plane(s, p, rng);
      const auto sec = sectional(s, a, b);
      return std::abs(sec.trace_value - sec.closed_value) / std::max(1.0, std::abs(sec.closed_value));
    }));
  }
  const Config chg{"C ++- sigma=-1", Space::from_signature(Field::C, {1, 1, -1}, -1)};
  out.push_back(run("area-vs-integration", chg, 1e-4, trials, seed + 8, [&](oracle::Rng& rng) {
    const Space& s = chg.space;
    const ProjPoint a = oracle::random_point(s, PointClass::Negative, rng);
    const ProjPoint b = oracle::random_point(s, PointClass::Negative, rng);
    std::uniform_real_distribution<double> u(-1, 1);
    const ProjPoint c(a.rep() * Scalar::complex(u(rng), u(rng)) + b.rep() * Scalar::complex(u(rng), u(rng)));
    if (classify(s, c) != PointClass::Negative) return 0.0;
    return std::abs(triangle_area(s, a, b, c) - oracle::numeric_area(s, a, b, c, 64));
  }));
  return out;
}

}  // namespace classic::verify
