#pragma once

// Section integral I = ∬ rho^3 sin^2(theta) drho dtheta and the small-angle
// twisting stiffness K_T = (beta E / R) I.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wiretwist/geometry.hpp"
#include "wiretwist/quadrature.hpp"

namespace wiretwist {

/// I split as I1 (full-radius sector) + I2 (sector bounded by the bite), in mm^4.
struct SectionIntegral {
  double I1 = 0.0;
  double I2 = 0.0;
  double I = 0.0;
  double est_error = 0.0;
};

/// Full-disc value pi r^4 / 4.
inline double full_circle_integral(double r) { return std::numbers::pi * std::pow(r, 4) / 4.0; }

/// Closed form over theta in [theta2, 2 pi + theta1] with rho in [0, r].
inline double integral_I1(const SectionGeometry& s) {
  if (s.kind() == SectionKind::Circular) return full_circle_integral(s.r());
  const auto [t1, t2] = theta_limits(s);
  if (t1 == t2) return full_circle_integral(s.r());
  const double r4 = std::pow(s.r(), 4);
  return r4 / 4.0 * (std::numbers::pi + (t1 - t2) / 2.0 + (std::sin(2.0 * t2) - std::sin(2.0 * t1)) / 4.0);
}

/// Quadrature of (1/4) ∫ sin^2(theta) rho(theta)^4 over the bite arc [theta1, theta2].
inline QuadratureResult integral_I2_detailed(const SectionGeometry& s, const QuadratureSpec& quad) {
  if (classify_section(s) == Intersection::FullCircle) return {};
  const auto [t1, t2] = theta_limits(s);
  const double r_w = s.r_w();
  const double L = s.L();
  const double gamma = s.gamma();
  auto integrand = [=](double theta) {
    const double sn = std::sin(theta);
    const double rho = detail::bite_boundary_unchecked(r_w, L, gamma - theta);
    const double rho2 = rho * rho;
    return 0.25 * sn * sn * rho2 * rho2;
  };
  return integrate(integrand, t1, t2, quad);
}

inline double integral_I2(const SectionGeometry& s, const QuadratureSpec& quad) {
  return integral_I2_detailed(s, quad).value;
}

inline SectionIntegral section_integral(const SectionGeometry& s, const QuadratureSpec& quad) {
  SectionIntegral out;
  out.I1 = integral_I1(s);
  if (s.kind() == SectionKind::WireRace) {
    const auto i2 = integral_I2_detailed(s, quad);
    out.I2 = i2.value;
    out.est_error = i2.error;
  }
  out.I = out.I1 + out.I2;
  return out;
}

inline double stiffness_from_integral(const WireRing& ring, double I) {
  return ring.beta() * ring.E() / ring.R() * I;
}

/// K_T = (E r^4 / (Z R)) (pi^2 / 2).
inline double stiffness_circular(const WireRing& ring) {
  if (ring.section().kind() != SectionKind::Circular) {
    throw WrongSectionKind("stiffness_circular requires a circular section");
  }
  const double r4 = std::pow(ring.section().r(), 4);
  return ring.E() * r4 / (ring.Z() * ring.R()) * (std::numbers::pi * std::numbers::pi / 2.0);
}

/// Lower edge of the clearance range covered by the fitted engineering formula.
inline constexpr double kValidatedClearanceMin = 0.25;
inline constexpr double kPublishedSlope = 0.36;

/// A value together with a flag set when the inputs lie below the validated
/// clearance range (L/r - r_w/r < 0.25).
struct FlaggedValue {
  double value = 0.0;
  bool out_of_range = false;
};

/// Clearance term [1 - (L/r - r_w/r)] clamped at zero; circular sections give zero.
inline double clearance_deficit(const SectionGeometry& s) {
  if (s.kind() == SectionKind::Circular) return 0.0;
  return std::max(0.0, 1.0 - s.clearance_ratio());
}

inline bool below_validated_range(const SectionGeometry& s) {
  return s.kind() == SectionKind::WireRace && s.clearance_ratio() < kValidatedClearanceMin;
}

/// K_T = (E r^4 / (Z R)) (pi^2/2 - 2 pi c [1 - (L/r - r_w/r)]), c = 0.36 by default.
inline FlaggedValue stiffness_engineering(const WireRing& ring, double slope = kPublishedSlope) {
  const auto& s = ring.section();
  const double r4 = std::pow(s.r(), 4);
  const double bracket = std::numbers::pi * std::numbers::pi / 2.0 - 2.0 * slope * std::numbers::pi * clearance_deficit(s);
  return {ring.E() * r4 / (ring.Z() * ring.R()) * bracket, below_validated_range(s)};
}

}  // namespace wiretwist
