#include <gtest/gtest.h>

#include "support.hpp"

namespace classic::test {
namespace {

TEST(FiniteDifferences, StepValidation) {
  const Space s = Space::from_signature(Field::R, {1, 1, -1}, -1);
  const Tangent t = tangent_from_image(s, point(Field::R, {0, 0, 1}), real_vec(Field::R, {1, 0, 0}));
  const auto field = spread_field(s, t);
  EXPECT_EQ(error_of([&] { oracle::fd_covariant_derivative(s, field, t, 1e-3); }), Errc::invalid_argument);
  EXPECT_EQ(error_of([&] { oracle::fd_covariant_derivative(s, field, t, 1e-9); }), Errc::invalid_argument);
  EXPECT_NO_THROW(oracle::fd_covariant_derivative(s, field, t, 1e-6));
}

TEST(FiniteDifferences, ParallelFieldsHaveNoDerivative) {
  const Space s = Space::from_signature(Field::R, {1, -1}, -1);
  const ProjPoint p = point(Field::R, {0, 1});
  const Tangent t = tangent_from_image(s, p, real_vec(Field::R, {1, 0}));
  // Tn of the geodesic tangent, differentiated along the geodesic.
  const ProjPoint g = point(Field::R, {0.3, 1});
  EXPECT_LE(oracle::fd_covariant_derivative(s, tn_field(s, t), field_Tn(s, t, g)).map().aux_norm(), 1e-8);
}

TEST(OdeTransport, Basics) {
  const Space s = Space::from_signature(Field::C, {1, 1, -1}, -1);
  Rng rng(100);
  const ProjPoint p = oracle::random_point(s, PointClass::Negative, rng);
  const Tangent t = oracle::random_tangent(s, p, rng);
  EXPECT_LE(dist(oracle::ode_transport(s, t, p), t), 0.0);
  EXPECT_EQ(error_of([&] { oracle::ode_transport(s, t, p, 32); }), Errc::invalid_argument);
  EXPECT_EQ(error_of([&] { oracle::ode_transport(s, t, point(Field::C, {1, 0, 1})); }), Errc::isotropic_point);
}

TEST(OdeTransport, FourthOrderConvergence) {
  const Space s = Space::from_signature(Field::C, {1, 1, -1}, -1);
  Rng rng(101);
  for (int n = 0; n < 5; ++n) {
    const auto x = oracle::sample_line(s, PointClass::Negative, rng);
    const ProjPoint far = far_point(s, x.p, x.w);
    const Tangent t = oracle::unit_tangent(oracle::random_tangent(s, x.p, rng));
    const Tangent exact = transport(s, t, far).tangent;
    const double coarse = dist(oracle::ode_transport(s, t, far, 64), exact);
    const double fine = dist(oracle::ode_transport(s, t, far, 128), exact);
    ASSERT_GT(coarse, 1e-9 * exact.map().aux_norm());
    EXPECT_GE(coarse / fine, 8.0);
  }
}

TEST(NumericLength, Examples) {
  const Space sphere = Space::from_signature(Field::R, {1, 1}, 1);
  EXPECT_NEAR(oracle::numeric_length(sphere, point(Field::R, {1, 0}), point(Field::R, {0.5, std::sqrt(3.0) / 2})), pi / 3, 1e-10);
  const Space hyp = Space::from_signature(Field::R, {1, -1}, -1);
  EXPECT_NEAR(oracle::numeric_length(hyp, point(Field::R, {0, 1}), point(Field::R, {std::sinh(1.0), std::cosh(1.0)})), 1.0, 1e-10);
}

TEST(NumericArea, Examples) {
  const Space s = chg_space();
  EXPECT_EQ(oracle::numeric_area(s, point(Field::C, {0.1, 0, 1}), point(Field::C, {0.2, 0, 1}), point(Field::C, {0.3, 0, 1})), 0.0);
  const auto ideal = ideal_triangle();
  EXPECT_NEAR(oracle::numeric_area(s, ideal[0], ideal[1], ideal[2]), pi / 4, 1e-4);
  EXPECT_NEAR(oracle::numeric_area(s, ideal[0], ideal[2], ideal[1]), -pi / 4, 1e-4);
  EXPECT_EQ(error_of([&] { oracle::numeric_area(s, ideal[0], ideal[1], ideal[2], 0); }), Errc::invalid_argument);
}

TEST(RandomIsometry, PreservesTheForm) {
  for (Field f : {Field::R, Field::C, Field::H}) {
    const Space s = Space::from_signature(f, {1, 1, -1}, -1);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const Matrix u = oracle::random_isometry(s, seed);
      EXPECT_LE(dist(adjoint(s, u) * u, s.identity()), 1e-10);
      Rng rng(seed);
      const ProjPoint p = oracle::random_point(s, PointClass::Negative, rng);
      const ProjPoint q = oracle::random_point(s, PointClass::Negative, rng);
      EXPECT_LE(rel(tance(s, p, q), tance(s, ProjPoint(u * p.rep()), ProjPoint(u * q.rep()))), 1e-9);
    }
  }
}

TEST(Samplers, Classes) {
  for (Field f : {Field::R, Field::C, Field::H}) {
    const Space s = Space::from_signature(f, {1, 1, -1}, -1);
    Rng rng(102);
    for (int n = 0; n < 50; ++n) {
      EXPECT_EQ(classify(s, oracle::random_point(s, PointClass::Negative, rng)), PointClass::Negative);
      EXPECT_EQ(classify(s, oracle::random_point(s, PointClass::Positive, rng)), PointClass::Positive);
      EXPECT_EQ(classify(s, oracle::random_point(s, PointClass::Null, rng)), PointClass::Null);
      const auto x = oracle::sample_line(s, PointClass::Negative, rng);
      EXPECT_EQ(classify(s, x.g), PointClass::Negative);
      EXPECT_TRUE(contains(s, from_tangent(s, x.t), x.g));
      EXPECT_TRUE(in_line(s, through_points(s, x.p, x.q), x.g.rep()));
      const auto e = oracle::sample_euclidean(s, rng);
      EXPECT_EQ(line_classify(s, e.p.rep(), e.u), LineClass::Euclidean);
    }
  }
}

}  // namespace
}  // namespace classic::test
