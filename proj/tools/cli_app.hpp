#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "classic/classic.hpp"
#include "classic/oracle.hpp"
#include "json_io.hpp"
#include "verify.hpp"

namespace classic::cli {

using io::json;

namespace detail {

struct Options {
  std::string space;
  std::optional<double> tolerance;
  std::uint64_t seed = 0;
  bool allow_cross = false;
  int indent = -1;
  std::map<std::string, std::string> args;
  int samples = 1000;
  int trials = 20;
};

class Session {
 public:
  explicit Session(const Options& o) : o_(o) {}

  const Space& space() {
    if (!space_) {
      if (o_.space.empty()) fail(Errc::invalid_argument, "--space is required");
      Space s = io::parse_space(io::load_argument(o_.space));
      if (o_.tolerance) s = s.with_iso_tol(*o_.tolerance);
      space_ = s;
    }
    return *space_;
  }

  const std::string& raw(const std::string& name) const {
    auto it = o_.args.find(name);
    if (it == o_.args.end() || it->second.empty()) fail(Errc::invalid_argument, "--" + name + " is required");
    return it->second;
  }
  bool has(const std::string& name) const {
    auto it = o_.args.find(name);
    return it != o_.args.end() && !it->second.empty();
  }

  ProjPoint point(const std::string& name) { return io::parse_point(io::load_argument(raw(name)), space()); }
  Tangent tangent(const std::string& name) { return io::parse_tangent(io::load_argument(raw(name)), space()); }

  const Options& options() const { return o_; }

 private:
  const Options& o_;
  std::optional<Space> space_;
};

inline json geodesic_json(const Geodesic& g) {
  return {{"w1", io::to_json(g.w1())}, {"w2", io::to_json(g.w2())}, {"class", std::string(to_string(g.line_class()))}};
}

inline json table_check_sampled(const Space& s, std::uint64_t seed, int samples) {
  oracle::Rng rng(seed);
  std::map<std::string, int> rows;
  int violations = 0, skipped = 0;
  json worst = nullptr;
  for (int i = 0; i < samples; ++i) {
    try {
      const PointClass c = rng() % 2 ? PointClass::Negative : PointClass::Positive;
      const ProjPoint p = oracle::unit_rep(oracle::random_point(s, c, rng));
      const auto cls = curvature_class(s, oracle::random_tangent(s, p, rng), oracle::random_tangent(s, p, rng));
      ++rows[std::string(to_string(cls.row))];
      if (!cls.in_interval) {
        ++violations;
        worst = {{"row", to_string(cls.row)}, {"value", io::number(cls.value)}};
      }
    } catch (const GeometryError&) {
      ++skipped;  // no point of that class, or a degenerate plane
    }
  }
  return {{"samples", samples}, {"rows", rows}, {"violations", violations}, {"skipped", skipped}, {"last_violation", worst}};
}

inline json dispatch(CLI::App& app, Session& ss) {
  const auto& o = ss.options();
  auto sub = [&](const char* name) { return app.got_subcommand(name); };
  auto nested = [&](const char* parent, const char* child) {
    return app.got_subcommand(parent) && app.get_subcommand(parent)->got_subcommand(child);
  };

  if (sub("classify")) return std::string(to_string(classify(ss.space(), ss.point("p"))));
  if (sub("tance")) return io::number(tance(ss.space(), ss.point("p"), ss.point("q")));
  if (sub("distance")) return io::number(length(ss.space(), ss.point("p"), ss.point("q")));

  if (nested("geodesic", "through")) return geodesic_json(through_points(ss.space(), ss.point("p"), ss.point("q")));
  if (nested("geodesic", "classify")) {
    const Space& s = ss.space();
    return std::string(to_string(line_classify(s, ss.point("p").rep(), ss.point("q").rep())));
  }
  if (nested("geodesic", "contains")) {
    const Space& s = ss.space();
    return contains(s, through_points(s, ss.point("p"), ss.point("q")), ss.point("x"));
  }
  if (nested("geodesic", "tangent")) return io::to_json(segment_tangent(ss.space(), ss.point("p"), ss.point("q")));

  if (nested("bisector", "normal")) return io::to_json(bisector_normal(ss.space(), ss.point("q"), ss.point("g1"), ss.point("g2")));

  if (nested("curvature", "tensor")) return io::to_json(curvature(ss.space(), ss.tangent("t1"), ss.tangent("t2"), ss.tangent("s")));
  if (nested("curvature", "sectional")) {
    const auto r = sectional(ss.space(), ss.tangent("t1"), ss.tangent("t2"));
    return {{"value", io::number(r.trace_value)}, {"closed_form", io::number(r.closed_value)}};
  }
  if (nested("curvature", "table-check")) {
    const Space& s = ss.space();
    if (!ss.has("t1") && !ss.has("t2")) return table_check_sampled(s, o.seed, o.samples);
    const auto c = curvature_class(s, ss.tangent("t1"), ss.tangent("t2"));
    return {{"row", to_string(c.row)},
            {"value", io::number(c.value)},
            {"metric_definite", c.metric_definite},
            {"in_interval", c.in_interval}};
  }

  if (sub("transport")) {
    const Space& s = ss.space();
    const Tangent t = ss.tangent("tangent");
    if (ss.has("from") && !same_point(s, ss.point("from"), t.foot()))
      fail(Errc::foot_mismatch, "--from differs from the foot of the tangent");
    const auto r = transport(s, t, ss.point("to"), o.allow_cross);
    return {{"tangent", io::to_json(r.tangent)}, {"branch", to_string(r.branch)}};
  }
  if (sub("eu-transport")) return io::to_json(field_Eu(ss.space(), ss.tangent("tangent"), ss.point("to")));

  if (nested("chg", "area")) return io::number(triangle_area(ss.space(), ss.point("p1"), ss.point("p2"), ss.point("p3")));
  if (nested("chg", "goldman")) {
    const Space& s = ss.space();
    const ProjPoint p = ss.point("polar");
    const Scalar u = goldman_u(s, BisectorSegment(s, p, ss.point("v1")), BisectorSegment(s, p, ss.point("v2")));
    return {{"u", io::to_json(u)}, {"abs", io::number(u.abs())}, {"arg", io::number(arg(u))}};
  }
  if (nested("chg", "bisector-angle")) {
    const Space& s = ss.space();
    const ProjPoint p = ss.point("polar");
    return io::number(bisector_angle(s, BisectorSegment(s, p, ss.point("v1")), BisectorSegment(s, p, ss.point("v2")), ss.point("q")));
  }
  if (nested("chg", "meridional"))
    return io::to_json(meridional_transport(ss.space(), ss.point("p1"), ss.point("p2"), ss.point("q1"), o.allow_cross));

  if (sub("verify")) {
    const auto checks = verify::run_all(o.seed, o.trials);
    json list = json::array();
    bool all = true;
    for (const auto& c : checks) {
      list.push_back(verify::to_json(c));
      all = all && c.pass();
    }
    return {{"pass", all}, {"checks", list}};
  }
  fail(Errc::invalid_argument, "no command given");
}

inline json error_json(const std::string& code, const std::string& kind, const std::string& message) {
  return {{"ok", false}, {"error", {{"code", code}, {"kind", kind}, {"message", message}}}};
}

}  // namespace detail

// Runs the command line and writes one JSON document to out. Exit codes:
// 0 success, 1 verify found a failing check, 2 invalid input, 3 violated
// geometric precondition.
inline int run(int argc, const char* const* argv, std::ostream& out) {
  detail::Options o;
  CLI::App app{"Coordinate-free classic geometries: projective invariants, curvature and parallel transport.", "classic"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--space", o.space, "space descriptor (file or inline JSON)");
  app.add_option("--tolerance", o.tolerance, "isotropy tolerance override")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "seed for sampled commands");
  app.add_flag("--allow-cross-absolute", o.allow_cross, "permit transport between components of the complement of the absolute");
  app.add_option("--json-indent", o.indent, "indent of the JSON output (-1 for compact)");

  auto arg = [&](CLI::App* a, const std::string& name, const std::string& help) {
    a->add_option("--" + name, o.args[name], help);
  };
  auto two_points = [&](CLI::App* a) {
    arg(a, "p", "first point");
    arg(a, "q", "second point");
  };

  CLI::App* c = app.add_subcommand("classify", "signature class of a point");
  arg(c, "p", "point");
  two_points(app.add_subcommand("tance", "tance of two points"));
  two_points(app.add_subcommand("distance", "length of the geodesic segment between two points"));

  CLI::App* geo = app.add_subcommand("geodesic", "geodesics");
  geo->require_subcommand(1);
  two_points(geo->add_subcommand("through", "geodesic through two points"));
  two_points(geo->add_subcommand("classify", "class of the projective line through two points"));
  CLI::App* gc = geo->add_subcommand("contains", "membership of x in the geodesic through p and q");
  two_points(gc);
  arg(gc, "x", "tested point");
  two_points(geo->add_subcommand("tangent", "tangent at p to the oriented segment from p to q"));

  CLI::App* bis = app.add_subcommand("bisector", "bisectors");
  bis->require_subcommand(1);
  CLI::App* bn = bis->add_subcommand("normal", "normal at q to the bisector with real spine through g1, g2");
  arg(bn, "q", "point on the bisector");
  arg(bn, "g1", "first spine point");
  arg(bn, "g2", "second spine point");

  CLI::App* cur = app.add_subcommand("curvature", "curvature");
  cur->require_subcommand(1);
  CLI::App* ct = cur->add_subcommand("tensor", "R(t1,t2)s");
  arg(ct, "t1", "tangent");
  arg(ct, "t2", "tangent");
  arg(ct, "s", "tangent");
  CLI::App* cs = cur->add_subcommand("sectional", "sectional curvature of the plane t1 R + t2 R");
  arg(cs, "t1", "tangent");
  arg(cs, "t2", "tangent");
  CLI::App* cc = cur->add_subcommand("table-check", "table row of a plane, or a sampled survey without tangents");
  arg(cc, "t1", "tangent");
  arg(cc, "t2", "tangent");
  cc->add_option("--samples", o.samples, "number of sampled planes")->check(CLI::PositiveNumber);

  CLI::App* tr = app.add_subcommand("transport", "parallel transport along a geodesic segment");
  arg(tr, "from", "start point (defaults to the foot of the tangent)");
  arg(tr, "to", "end point");
  arg(tr, "tangent", "tangent at the start point");
  CLI::App* eu = app.add_subcommand("eu-transport", "value of the euclidean transport field");
  arg(eu, "to", "evaluation point");
  arg(eu, "tangent", "tangent at the base point");

  CLI::App* chg = app.add_subcommand("chg", "complex hyperbolic plane");
  chg->require_subcommand(1);
  CLI::App* ar = chg->add_subcommand("area", "oriented area of a triangle");
  arg(ar, "p1", "vertex");
  arg(ar, "p2", "vertex");
  arg(ar, "p3", "vertex");
  CLI::App* go = chg->add_subcommand("goldman", "u = 1 - 1/eta for two cotranchal bisectors");
  arg(go, "polar", "polar point of the common slice");
  arg(go, "v1", "vertex of the first bisector");
  arg(go, "v2", "vertex of the second bisector");
  CLI::App* ba = chg->add_subcommand("bisector-angle", "angle between two cotranchal bisectors at q");
  arg(ba, "polar", "polar point of the common slice");
  arg(ba, "v1", "vertex of the first bisector");
  arg(ba, "v2", "vertex of the second bisector");
  arg(ba, "q", "point of the slice");
  CLI::App* me = chg->add_subcommand("meridional", "meridional transport of q1 from p1 to p2");
  arg(me, "p1", "spine point");
  arg(me, "p2", "spine point");
  arg(me, "q1", "point of the slice through p1");

  CLI::App* ve = app.add_subcommand("verify", "compare closed forms with numerical oracles");
  ve->add_option("--trials", o.trials, "trials per check")->check(CLI::PositiveNumber);

  auto emit = [&](const json& j) { out << j.dump(o.indent) << '\n'; };

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    emit(detail::error_json("invalid_argument", "validation", e.what()));
    return 2;
  }

  try {
    detail::Session session(o);
    json result = detail::dispatch(app, session);
    const bool verify_failed = app.got_subcommand("verify") && !result.at("pass").get<bool>();
    emit({{"ok", true}, {"result", result}});
    return verify_failed ? 1 : 0;
  } catch (const GeometryError& e) {
    const bool pre = is_precondition(e.code());
    emit(detail::error_json(std::string(to_string(e.code())), pre ? "precondition" : "validation", e.what()));
    return pre ? 3 : 2;
  } catch (const io::json::exception& e) {
    emit(detail::error_json("invalid_argument", "validation", std::string("bad JSON input: ") + e.what()));
    return 2;
  } catch (const std::exception& e) {
    emit(detail::error_json("invalid_argument", "validation", e.what()));
    return 2;
  }
}

}  // namespace classic::cli
