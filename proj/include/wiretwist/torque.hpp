#pragma once

// Finite-angle twisting torque from the virtual-work balance
//   T(alpha) = (beta E / alpha) ∬ (cos(theta + alpha) - cos(theta))^2 / (R + rho cos(theta)) rho^3 drho dtheta
// evaluated on the undeformed section, and torque-angle curves built from it.

#include <array>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "wiretwist/geometry.hpp"
#include "wiretwist/quadrature.hpp"

namespace wiretwist {

/// Length change of the fibre at (rho, theta) when the section twists by alpha.
inline double delta_length(double rho, double theta, double alpha, const WireRing& ring) {
  return ring.beta() * rho * (std::cos(theta + alpha) - std::cos(theta));
}

namespace detail {

// ∫_0^rho_max rho^3 / (R + rho cos(theta)) drho, 32-point Gauss-Legendre.
inline double radial_moment(double rho_max, double R, double cos_theta) {
  return gauss_legendre_fixed<32>(
      [=](double rho) { return rho * rho * rho / (R + rho * cos_theta); }, 0.0, rho_max);
}

}  // namespace detail

/// Twisting torque (N mm) needed to hold a twist of `alpha` rad. T(0) = 0.
inline double torque_full(const WireRing& ring, double alpha, const QuadratureSpec& quad) {
  if (!std::isfinite(alpha) || std::abs(alpha) >= std::numbers::pi / 2.0) {
    throw DomainError("twist angle must satisfy |alpha| < pi/2");
  }
  if (alpha == 0.0) return 0.0;

  const auto& s = ring.section();
  const double R = ring.R();
  const double r = s.r();
  const double half = 0.5 * alpha;
  // (cos(theta + alpha) - cos(theta))^2 = 4 sin^2(alpha/2) sin^2(theta + alpha/2)
  const double amp = 4.0 * std::sin(half) * std::sin(half);

  auto full_radius = [=](double theta) {
    const double sn = std::sin(theta + half);
    return sn * sn * detail::radial_moment(r, R, std::cos(theta));
  };

  double sum = 0.0;
  if (classify_section(s) == Intersection::FullCircle) {
    const double start = s.kind() == SectionKind::WireRace ? s.gamma() : 0.0;
    sum = integrate(full_radius, start, start + 2.0 * std::numbers::pi, quad).value;
  } else {
    const auto [t1, t2] = theta_limits(s);
    const double r_w = s.r_w();
    const double L = s.L();
    const double gamma = s.gamma();
    auto bite = [=](double theta) {
      const double sn = std::sin(theta + half);
      const double rho_max = detail::bite_boundary_unchecked(r_w, L, gamma - theta);
      return sn * sn * detail::radial_moment(rho_max, R, std::cos(theta));
    };
    sum = integrate(bite, t1, t2, quad).value +
          integrate(full_radius, t2, t1 + 2.0 * std::numbers::pi, quad).value;
  }
  return ring.beta() * ring.E() * amp / alpha * sum;
}

struct TorqueSample {
  double alpha = 0.0;
  double torque = 0.0;
};

struct TorqueCurve {
  std::vector<TorqueSample> samples;
  double K_origin = 0.0;
  double K_secant_pos = 0.0;
  double K_secant_neg = 0.0;
};

/// Origin stiffness by Richardson extrapolation of the odd part of T(h)/h,
///   g(h) = (T(h) - T(-h)) / (2h) = K0 + c2 h^2 + c4 h^4 + ...
/// at h = alpha_max / 2^k, k = 4..8.
inline double origin_stiffness(const WireRing& ring, double alpha_max, const QuadratureSpec& quad) {
  constexpr int kFirst = 4;
  constexpr int kLevels = 5;
  std::array<double, kLevels> table{};
  for (int i = 0; i < kLevels; ++i) {
    const double h = alpha_max / std::ldexp(1.0, kFirst + i);
    table[i] = (torque_full(ring, h, quad) - torque_full(ring, -h, quad)) / (2.0 * h);
  }
  // In-place Neville-style tableau: after pass j, table[i] has h^2..h^{2j} removed.
  for (int j = 1; j < kLevels; ++j) {
    const double factor = std::pow(4.0, j);
    for (int i = kLevels - 1; i >= j; --i) {
      table[i] = table[i] + (table[i] - table[i - 1]) / (factor - 1.0);
    }
  }
  return table[kLevels - 1];
}

/// Samples T on 2*n_steps+1 uniformly spaced angles in [-alpha_max, alpha_max].
inline TorqueCurve torque_curve(const WireRing& ring, double alpha_max, int n_steps, const QuadratureSpec& quad) {
  if (!(alpha_max > 0.0) || alpha_max >= std::numbers::pi / 2.0) {
    throw InvalidArgument("alpha_max must lie in (0, pi/2)");
  }
  if (n_steps < 2) throw InvalidArgument("n_steps must be at least 2");

  TorqueCurve curve;
  curve.samples.reserve(2 * static_cast<std::size_t>(n_steps) + 1);
  for (int i = -n_steps; i <= n_steps; ++i) {
    const double alpha = alpha_max * static_cast<double>(i) / static_cast<double>(n_steps);
    curve.samples.push_back({alpha, torque_full(ring, alpha, quad)});
  }
  curve.K_secant_pos = curve.samples.back().torque / alpha_max;
  curve.K_secant_neg = curve.samples.front().torque / -alpha_max;
  curve.K_origin = origin_stiffness(ring, alpha_max, quad);
  return curve;
}

}  // namespace wiretwist
