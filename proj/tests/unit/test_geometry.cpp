#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "qwave/errors.hpp"
#include "qwave/geometry.hpp"

using namespace qwave;
using oracle::pi;

TEST(Curvature, ZeroOutsideWindowAndInterpolated) {
  CurvatureFunction k(0.0, 0.5, {0.0, 1.0, 0.0});
  EXPECT_DOUBLE_EQ(k(0.25), 0.5);
  EXPECT_DOUBLE_EQ(k(-1.0), 0.0);
  EXPECT_DOUBLE_EQ(k(2.0), 0.0);
  EXPECT_DOUBLE_EQ(k.sup_positive(), 1.0);
  EXPECT_DOUBLE_EQ(k.sup_negative(), 0.0);
}

TEST(Curvature, ParsesTwoColumnText) {
  std::istringstream in("# s k\n-1 0\n0 0.5\n1 0\n");
  auto k = CurvatureFunction::from_text(in);
  EXPECT_DOUBLE_EQ(k(0.0), 0.5);
  EXPECT_DOUBLE_EQ(k.window_start(), -1.0);
  std::istringstream bad("0 0\n1 0\n3 0\n");
  try {
    CurvatureFunction::from_text(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
  }
}

TEST(Reconstruct, StraightLine) {
  auto c = reconstruct_curve(CurvatureFunction::constant(0.0, -2.0, 2.0, 0.01), 0.01);
  for (std::size_t i = 0; i < c.s.size(); ++i) {
    EXPECT_NEAR(c.points[i].x, c.s[i], 1e-12);
    EXPECT_NEAR(c.points[i].y, 0.0, 1e-12);
    EXPECT_NEAR(c.normal[i].y, 1.0, 1e-12);
  }
}

TEST(Reconstruct, CircleArc) {
  const double kappa = 0.5;
  auto c = reconstruct_curve(CurvatureFunction::constant(kappa, -3.0, 3.0, 1e-3), 1e-3);
  const auto& p = c.points.back();
  const double s = c.s.back();
  // Circle through the origin with centre (0, 1/kappa).
  EXPECT_NEAR(p.x, std::sin(kappa * s) / kappa, 1e-6);
  EXPECT_NEAR(p.y, (1.0 - std::cos(kappa * s)) / kappa, 1e-6);
  for (std::size_t i = 0; i < c.s.size(); i += 500) {
    EXPECT_NEAR(std::hypot(c.tangent[i].x, c.tangent[i].y), 1.0, 1e-12);
    EXPECT_NEAR(c.tangent[i].x * c.normal[i].x + c.tangent[i].y * c.normal[i].y, 0.0, 1e-12);
  }
}

TEST(Reconstruct, TurningAngleEqualsIntegralOfCurvature) {
  auto k = CurvatureFunction::gaussian_bump(0.8, 0.7, 5.0, 0.01);
  auto c = reconstruct_curve(k, 0.01);
  const double total = oracle::trapezoid([&](double s) { return k(s); }, -5.0, 5.0);
  EXPECT_NEAR(c.turning_angle(), total, 1e-6);
}

TEST(Reconstruct, FourthOrder) {
  auto k = CurvatureFunction::sech_bump(0.7, 1.0, 4.0, 0.05);
  auto coarse = reconstruct_curve(k, 0.1);
  auto fine = reconstruct_curve(k, 0.05);
  auto finer = reconstruct_curve(k, 0.025);
  auto end_gap = [](const EmbeddedCurve& a, const EmbeddedCurve& b) {
    return std::hypot(a.points.back().x - b.points.back().x, a.points.back().y - b.points.back().y);
  };
  const double e1 = end_gap(coarse, fine), e2 = end_gap(fine, finer);
  EXPECT_LT(e2, e1 / 8.0);
}

TEST(Ellipticity, StraightStrip) {
  auto g = straight_strip(1.0);
  EXPECT_EQ(g.m, 1.0);
  EXPECT_EQ(g.M, 1.0);
  EXPECT_EQ(g.l, 1.0);
  EXPECT_DOUBLE_EQ(g.beta, 0.5);
  EXPECT_DOUBLE_EQ(g.lambda1_prime, pi * pi / 4.0);
  EXPECT_DOUBLE_EQ(g.lambda1_star, pi * pi / 4.0);
  EXPECT_DOUBLE_EQ(g.threshold_straight, pi * pi / 4.0);
}

TEST(Ellipticity, PositiveSechBump) {
  auto g = ellipticity_constants(1.0, CurvatureFunction::sech_bump(0.5, 1.0, 6.0, 0.01));
  EXPECT_NEAR(g.kplus_sup, 0.5, 1e-12);
  EXPECT_EQ(g.kminus_sup, 0.0);
  EXPECT_NEAR(g.m, 0.5, 1e-12);
  EXPECT_NEAR(g.M, 2.0, 1e-12);
  EXPECT_NEAR(g.l, std::sqrt(2.0), 1e-12);
  // beta against a slow quadrature of sin^2(pi l u / 2d).
  const double beta = oracle::trapezoid([&](double u) { return std::pow(std::sin(pi * g.l * u / 2.0), 2); }, 0.0, 1.0);
  EXPECT_NEAR(g.beta, beta, 1e-10);
  EXPECT_NEAR(g.beta, 0.6086, 5e-4);
}

TEST(Ellipticity, NegativeConstant) {
  auto g = ellipticity_constants(1.0, CurvatureFunction::constant(-0.5, -2.0, 2.0, 0.01));
  EXPECT_NEAR(g.m, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(g.M, 1.5, 1e-12);
  EXPECT_NEAR(g.l, 1.5, 1e-12);
  EXPECT_NEAR(g.lambda1_prime, pi * pi / (4.0 * g.m) * 1.5, 1e-12);
  EXPECT_LE(g.m, 1.0);
  EXPECT_GE(g.M, 1.0);
}

TEST(Ellipticity, RejectsAssumptionViolation) {
  try {
    ellipticity_constants(1.0, CurvatureFunction::constant(1.0, -1.0, 1.0, 0.01));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidGeometry);
  }
}

TEST(Jacobian, SandwichAndRange) {
  auto g = ellipticity_constants(1.0, CurvatureFunction::constant(0.5, -1.0, 1.0, 0.01));
  EXPECT_NEAR(jacobian(g, 0.0, 1.0), 0.5, 1e-12);
  EXPECT_NEAR(jacobian(g, 0.0, 1.0), g.jacobian_lower(), 1e-12);
  auto n = ellipticity_constants(1.0, CurvatureFunction::constant(-0.5, -1.0, 1.0, 0.01));
  EXPECT_NEAR(jacobian(n, 0.0, 1.0), 1.5, 1e-12);
  EXPECT_NEAR(jacobian(straight_strip(1.0), 3.0, 0.7), 1.0, 0.0);
  auto b = ellipticity_constants(0.8, CurvatureFunction::gaussian_bump(-0.6, 0.5, 3.0, 0.01));
  for (double s = -4.0; s <= 4.0; s += 0.13) {
    for (double u = 0.0; u <= 0.8; u += 0.1) {
      const double j = jacobian(b, s, u);
      EXPECT_GE(j, b.jacobian_lower() - 1e-14);
      EXPECT_LE(j, b.jacobian_upper() + 1e-14);
    }
  }
  try {
    jacobian(g, 0.0, 1.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutOfStrip);
  }
}

TEST(Validate, CurvatureCondition) {
  EXPECT_TRUE(inspect_geometry(1.0, CurvatureFunction::constant(0.5, -1.0, 1.0, 0.01), 0.01).curvature_ok);
  EXPECT_FALSE(inspect_geometry(1.0, CurvatureFunction::constant(1.0, -1.0, 1.0, 0.01), 0.01).curvature_ok);
}

TEST(Validate, SelfIntersectionSuspected) {
  auto k = CurvatureFunction::constant(1.5, 0.0, 10.0, 0.01);
  auto report = inspect_geometry(0.2, k, 0.01);
  EXPECT_TRUE(report.curvature_ok);
  EXPECT_FALSE(report.embedding_ok);
  try {
    validate_geometry(0.2, k, 0.01);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SelfIntersectionSuspected);
  }
}

TEST(Validate, GentleBumpPasses) {
  auto r = validate_geometry(0.5, CurvatureFunction::sech_bump(0.5, 1.0, 4.0, 0.01), 0.01);
  EXPECT_TRUE(r.ok());
  EXPECT_NE(r.summary().find("d*sup(k+)"), std::string::npos);
}
