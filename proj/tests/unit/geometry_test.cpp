#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "support/oracles.hpp"
#include "wiretwist/geometry.hpp"

namespace wiretwist {
namespace {

using test::kPi;

TEST(ClassifySection, FullCircleWhenBiteJustTouches) {
  EXPECT_EQ(classify_section(1.0, 3.0, 4.0), Intersection::FullCircle);
  EXPECT_EQ(classify_section(1.0, 3.0, 4.5), Intersection::FullCircle);
}

TEST(ClassifySection, PartialBite) { EXPECT_EQ(classify_section(1.0, 3.0, 3.5), Intersection::PartialBite); }

TEST(ClassifySection, BiteCoveringCentreIsInvalid) {
  EXPECT_THROW(classify_section(1.0, 3.0, 2.5), InvalidGeometry);
  EXPECT_THROW(classify_section(1.0, 3.0, 3.0), InvalidGeometry);
}

TEST(ClassifySection, InteriorHoleIsInvalid) {
  EXPECT_THROW(classify_section(1.0, 0.2, 0.5), InvalidGeometry);
  EXPECT_THROW(classify_section(1.0, 0.4, 0.6), InvalidGeometry);
}

TEST(ClassifySection, UndercutBiteIsInvalid) {
  // L^2 - r_w^2 = 0.52 r^2: the section circle meets the far side of the bite.
  EXPECT_THROW(classify_section(1.0, 1.2, 1.4), InvalidGeometry);
  // Smallest design-grid point: (2.25^2 - 2^2) = 1.0625 r^2.
  EXPECT_EQ(classify_section(1.0, 2.0, 2.25), Intersection::PartialBite);
}

TEST(ClassifySection, NonPositiveOrNonFiniteRejected) {
  EXPECT_THROW(classify_section(0.0, 3.0, 3.5), InvalidGeometry);
  EXPECT_THROW(classify_section(1.0, -3.0, 3.5), InvalidGeometry);
  EXPECT_THROW(classify_section(1.0, 3.0, NAN), InvalidGeometry);
}

TEST(ClassifySection, CircularKindIsAlwaysFullCircle) {
  EXPECT_EQ(classify_section(SectionGeometry::circular(3.3)), Intersection::FullCircle);
}

TEST(ClassifySection, TangencyNoiseStillFullCircle) {
  // 4*3.3 - 3*3.3 is not exactly 3.3 in binary.
  const auto s = SectionGeometry::wire_race_ratios(3.3, 3.0, 4.0, kPi / 4);
  EXPECT_EQ(classify_section(s), Intersection::FullCircle);
}

TEST(ClassifySection, ScaleInvariantProperty) {
  for (int trial = 0; trial < 500; ++trial) {
    const double r = test::uniform(0.1, 10.0);
    const double rw = r * test::uniform(0.05, 5.0);
    const double L = r * test::uniform(0.05, 6.0);
    const double k = std::exp(test::uniform(-5.0, 5.0));
    bool valid = true;
    Intersection base{};
    try {
      base = classify_section(r, rw, L);
    } catch (const InvalidGeometry&) {
      valid = false;
    }
    if (valid) {
      EXPECT_EQ(classify_section(k * r, k * rw, k * L), base);
    } else {
      EXPECT_THROW(classify_section(k * r, k * rw, k * L), InvalidGeometry);
    }
  }
}

TEST(WireRing, DerivesBetaAndValidates) {
  const WireRing ring(227.0, 82, 210000.0, SectionGeometry::circular(3.3));
  EXPECT_DOUBLE_EQ(ring.beta(), 2.0 * kPi / 82.0);
  EXPECT_THROW(WireRing(3.0, 82, 210000.0, SectionGeometry::circular(3.3)), InvalidGeometry);
  EXPECT_THROW(WireRing(227.0, 0, 210000.0, SectionGeometry::circular(3.3)), InvalidGeometry);
  EXPECT_THROW(WireRing(227.0, 82, -1.0, SectionGeometry::circular(3.3)), InvalidGeometry);
}

TEST(RhoOfTheta, MinimumOnSymmetryAxis) {
  const auto s = SectionGeometry::wire_race_ratios(3.3, 3.0, 3.5, kPi / 4);
  EXPECT_NEAR(rho_of_theta(s, kPi / 4), 1.65, 1e-12);
}

TEST(RhoOfTheta, MatchesRayBisection) {
  // Frozen from bisection on the distance-to-bite-centre test (also mpmath: 0.584703301872380224).
  const auto s = SectionGeometry::wire_race_ratios(1.0, 3.0, 3.5, kPi / 4);
  const double theta = kPi / 4 - 0.5;
  const double expected = test::ray_hit(theta, 3.0, 3.5, kPi / 4, 1.0);
  EXPECT_NEAR(expected, 0.584703301872380, 1e-12);
  EXPECT_NEAR(rho_of_theta(s, theta), expected, 1e-12);
}

TEST(RhoOfTheta, OutsideBiteArcIsDomainError) {
  const auto s = SectionGeometry::wire_race_ratios(1.0, 3.0, 3.5, kPi / 4);
  EXPECT_THROW(rho_of_theta(s, kPi / 4 + 1.2), DomainError);
  EXPECT_THROW(rho_of_theta(s, kPi / 4 + kPi), DomainError);
  EXPECT_THROW(rho_of_theta(SectionGeometry::circular(1.0), 0.0), WrongSectionKind);
}

TEST(ThetaLimits, MatchBisectionOfBoundary) {
  const auto s = SectionGeometry::wire_race_ratios(1.0, 3.0, 3.5, kPi / 4);
  const auto [t1, t2] = theta_limits(s);
  // rho(theta) - r changes sign between the bite axis and the edge of the arc.
  const double edge = std::asin(3.0 / 3.5) - 1e-9;
  auto f = [&](double t) { return test::ray_hit(t, 3.0, 3.5, kPi / 4, 3.5) - 1.0; };
  const double b1 = test::bisect(f, kPi / 4 - edge, kPi / 4);
  const double b2 = test::bisect(f, kPi / 4, kPi / 4 + edge);
  EXPECT_NEAR(t1, b1, 1e-10);
  EXPECT_NEAR(t2, b2, 1e-10);
  EXPECT_NEAR(t1, -0.132938266079371, 1e-12);
  EXPECT_NEAR(t2, 1.703734592874268, 1e-12);
}

TEST(ThetaLimits, TangentCaseCollapses) {
  const auto s = SectionGeometry::wire_race_ratios(1.0, 3.0, 4.0, 0.3);
  const auto [t1, t2] = theta_limits(s);
  EXPECT_EQ(t1, 0.3);
  EXPECT_EQ(t2, 0.3);
}

TEST(ThetaLimits, CircularSectionRejected) {
  EXPECT_THROW(theta_limits(SectionGeometry::circular(1.0)), WrongSectionKind);
}

// Random partial-bite sections for the property tests below.
SectionGeometry random_partial_bite() {
  const double r = test::uniform(0.5, 5.0);
  const double rw = test::uniform(1.2, 4.0);
  // Keep L^2 - r_w^2 >= r^2 (otherwise the geometry is rejected as undercut).
  const double x_min = std::max(0.02, std::sqrt(rw * rw + 1.0) - rw + 1e-9);
  const double x = test::uniform(x_min, 0.98);
  return SectionGeometry::wire_race_ratios(r, rw, rw + x, test::uniform(-2 * kPi, 2 * kPi));
}

TEST(GeometryProperties, LimitsHitSectionRadius) {
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = random_partial_bite();
    const auto [t1, t2] = theta_limits(s);
    EXPECT_LT(t1, s.gamma());
    EXPECT_GT(t2, s.gamma());
    EXPECT_NEAR(rho_of_theta(s, t1), s.r(), 1e-12 * s.r() * 10);
    EXPECT_NEAR(rho_of_theta(s, t2), s.r(), 1e-12 * s.r() * 10);
  }
}

TEST(GeometryProperties, RhoInsideSectionAndSatisfiesLawOfCosines) {
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = random_partial_bite();
    const auto [t1, t2] = theta_limits(s);
    for (int k = 1; k < 20; ++k) {
      const double theta = t1 + (t2 - t1) * k / 20.0;
      const double rho = rho_of_theta(s, theta);
      EXPECT_GT(rho, 0.0);
      EXPECT_LT(rho, s.r());
      EXPECT_GE(rho, (s.L() - s.r_w()) * (1 - 1e-12));
      const double residual =
          s.r_w() * s.r_w() - (s.L() * s.L() + rho * rho - 2 * s.L() * rho * std::cos(s.gamma() - theta));
      EXPECT_LT(std::abs(residual), 1e-9 * s.r_w() * s.r_w());
    }
  }
}

TEST(GeometryProperties, LimitsShiftWithGamma) {
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = random_partial_bite();
    const double delta = test::uniform(-3.0, 3.0);
    const auto shifted = SectionGeometry::wire_race(s.r(), s.r_w(), s.L(), s.gamma() + delta);
    const auto a = theta_limits(s);
    const auto b = theta_limits(shifted);
    EXPECT_NEAR(b.theta1 - a.theta1, delta, 1e-12);
    EXPECT_NEAR(b.theta2 - a.theta2, delta, 1e-12);
  }
}

}  // namespace
}  // namespace wiretwist
