#include <gtest/gtest.h>

#include <cmath>

#include "support/oracles.hpp"
#include "wiretwist/stiffness.hpp"
#include "wiretwist/torque.hpp"

namespace wiretwist {
namespace {

using test::kPi;

const QuadratureSpec kQuad = QuadratureSpec::simpson();

WireRing circular_ring(double R = 227.0) { return WireRing(R, 82, 210000.0, SectionGeometry::circular(3.3)); }
WireRing bite_ring() { return WireRing(227.0, 82, 210000.0, SectionGeometry::wire_race_ratios(3.3, 3.0, 3.5, kPi / 4)); }

TEST(DeltaLength, Examples) {
  const auto ring = circular_ring();
  EXPECT_EQ(delta_length(2.0, 0.7, 0.0, ring), 0.0);
  const double a = 1e-6;
  EXPECT_NEAR(delta_length(3.3, kPi / 2, a, ring), -ring.beta() * 3.3 * a, 1e-15);
  // mpmath: -0.0252438674014016138
  EXPECT_NEAR(delta_length(3.3, kPi / 2, 0.1, ring), -0.0252438674014016, 1e-15);
}

TEST(TorqueFull, ZeroAtZeroAndDomain) {
  EXPECT_EQ(torque_full(circular_ring(), 0.0, kQuad), 0.0);
  EXPECT_THROW(torque_full(circular_ring(), kPi / 2, kQuad), DomainError);
  EXPECT_THROW(torque_full(circular_ring(), -2.0, kQuad), DomainError);
}

TEST(TorqueFull, SmallAngleCircularMatchesClosedForm) {
  const double k = torque_full(circular_ring(), 1e-4, kQuad) / 1e-4;
  EXPECT_NEAR(k / 6602.0, 1.0, 2e-3);
}

TEST(TorqueFull, FrozenAgainstIndependentDoubleQuadrature) {
  // Values from scipy dblquad over the same region (rel 1e-11).
  EXPECT_NEAR(torque_full(circular_ring(), 0.1, kQuad) / 0.1, 6597.182930853523, 1e-6);
  EXPECT_NEAR(torque_full(circular_ring(), 1e-3, kQuad) / 1e-3, 6602.681621105497, 1e-6);
  EXPECT_NEAR(torque_full(bite_ring(), 0.1, kQuad) / 0.1, 4956.142507111827, 1e-6);
  EXPECT_NEAR(torque_full(bite_ring(), -0.1, kQuad) / -0.1, 5143.276986724006, 1e-6);
  EXPECT_NEAR(torque_full(bite_ring(), 1e-3, kQuad) / 1e-3, 5052.958834120185, 1e-6);
}

TEST(TorqueFull, SchemesAgree) {
  const auto gl = QuadratureSpec::gauss_legendre();
  for (double a : {-0.3, 0.05, 0.2}) {
    const double s = torque_full(bite_ring(), a, kQuad);
    EXPECT_NEAR(torque_full(bite_ring(), a, gl) / s, 1.0, 1e-9);
  }
}

TEST(TorqueFull, OddSymmetryForCircularSection) {
  for (int trial = 0; trial < 20; ++trial) {
    const double a = test::uniform(1e-4, 1.4);
    const double tp = torque_full(circular_ring(), a, kQuad);
    const double tm = torque_full(circular_ring(), -a, kQuad);
    EXPECT_NEAR(tm / -tp, 1.0, 1e-9) << "alpha=" << a;
  }
}

TEST(TorqueFull, SignFollowsTwist) {
  for (double a : {1e-5, 1e-3, 0.1, 0.5}) {
    EXPECT_GT(torque_full(bite_ring(), a, kQuad), 0.0);
    EXPECT_LT(torque_full(bite_ring(), -a, kQuad), 0.0);
  }
}

TEST(TorqueCurve, CircularReference) {
  const auto curve = torque_curve(circular_ring(), 0.1, 4, kQuad);
  ASSERT_EQ(curve.samples.size(), 9u);
  EXPECT_EQ(curve.samples[4].alpha, 0.0);
  EXPECT_EQ(curve.samples[4].torque, 0.0);
  for (std::size_t i = 1; i < curve.samples.size(); ++i) EXPECT_LT(curve.samples[i - 1].alpha, curve.samples[i].alpha);
  EXPECT_NEAR(curve.K_origin / 6602.0, 1.0, 5e-3);
  EXPECT_NEAR(curve.K_secant_pos / curve.K_secant_neg, 1.0, 1e-9);
}

TEST(TorqueCurve, RealSectionSecantsDiffer) {
  const auto curve = torque_curve(bite_ring(), 0.1, 2, kQuad);
  // Quadrature values frozen above: 4956.14 (+) and 5143.28 (-).
  EXPECT_GT(std::abs(curve.K_secant_pos - curve.K_secant_neg), 100.0);
  EXPECT_NEAR(curve.K_secant_pos, 4956.142507111827, 1e-6);
  EXPECT_NEAR(curve.K_secant_neg, 5143.276986724006, 1e-6);
}

TEST(TorqueCurve, OriginMatchesSimplifiedModel) {
  // R/r ≈ 69: curvature corrections stay well below 0.5 %.
  const auto ring = bite_ring();
  const double k_simple = stiffness_from_integral(ring, section_integral(ring.section(), kQuad).I);
  EXPECT_NEAR(torque_curve(ring, 0.1, 2, kQuad).K_origin / k_simple, 1.0, 5e-3);
}

TEST(TorqueCurve, RejectsBadArguments) {
  EXPECT_THROW(torque_curve(circular_ring(), 0.0, 4, kQuad), InvalidArgument);
  EXPECT_THROW(torque_curve(circular_ring(), 0.1, 1, kQuad), InvalidArgument);
}

TEST(TorqueConvergence, QuotientApproachesOriginUnderHalving) {
  for (const auto& ring : {circular_ring(), bite_ring()}) {
    const double k0 = origin_stiffness(ring, 0.1, kQuad);
    double previous = INFINITY;
    for (int k = 0; k <= 8; ++k) {
      const double a = 0.1 / std::ldexp(1.0, k);
      const double g = (torque_full(ring, a, kQuad) - torque_full(ring, -a, kQuad)) / (2 * a);
      const double dev = std::abs(g - k0);
      EXPECT_LT(dev, previous) << "k=" << k;
      previous = dev;
    }
  }
}

TEST(TorqueConvergence, ApproachesClosedFormAsRingGrows) {
  double previous = INFINITY;
  for (double R : {170.0, 340.0, 680.0, 1360.0, 2720.0}) {
    const auto ring = circular_ring(R);
    const double k8 = stiffness_circular(ring);
    const double dev = std::abs(torque_full(ring, 1e-4, kQuad) / 1e-4 - k8) / k8;
    EXPECT_LT(dev, previous) << "R=" << R;
    previous = dev;
  }
}

}  // namespace
}  // namespace wiretwist
