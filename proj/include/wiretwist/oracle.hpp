#pragma once

// Brute-force virtual-work oracle. The section is cut into polar cells of
// equal drho x dtheta; each material cell is a fibre of stiffness
// E dA / L whose work E (dL)^2 / L dA is summed and divided by alpha.
// Shares only SectionGeometry/WireRing with the quadrature path: membership
// is a direct distance test against the bite circle.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "wiretwist/geometry.hpp"

namespace wiretwist {

struct GridSpec {
  int n_rho = 400;
  int n_theta = 400;

  static GridSpec square(int n) { return GridSpec{n, n}.validated(); }

  GridSpec validated() const {
    if (n_rho < 8 || n_theta < 8) throw InvalidArgument("oracle grid needs at least 8 cells per direction");
    return *this;
  }
};

namespace detail {

/// Pairwise (tree) summation; fixed association order for a given length.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t mid = v.size() / 2;
  return pairwise_sum(v.first(mid)) + pairwise_sum(v.subspan(mid));
}

inline bool is_material(const SectionGeometry& s, double x, double y) {
  if (s.kind() == SectionKind::Circular) return true;
  const double dx = x - s.L() * std::cos(s.gamma());
  const double dy = y - s.L() * std::sin(s.gamma());
  return dx * dx + dy * dy >= s.r_w() * s.r_w();
}

}  // namespace detail

inline double oracle_torque(const WireRing& ring, double alpha, const GridSpec& grid) {
  grid.validated();
  if (alpha == 0.0 || !std::isfinite(alpha)) throw DomainError("oracle torque needs a finite non-zero twist");

  const auto& s = ring.section();
  const double beta = ring.beta();
  const double E = ring.E();
  const double R = ring.R();
  const double d_rho = s.r() / grid.n_rho;
  const double d_theta = 2.0 * std::numbers::pi / grid.n_theta;

  std::vector<double> cells(static_cast<std::size_t>(grid.n_rho));
  std::vector<double> rows(static_cast<std::size_t>(grid.n_theta));
  for (int j = 0; j < grid.n_theta; ++j) {
    const double theta = (j + 0.5) * d_theta;
    const double c = std::cos(theta);
    const double sn = std::sin(theta);
    const double c_twisted = std::cos(theta + alpha);
    for (int i = 0; i < grid.n_rho; ++i) {
      const double rho = (i + 0.5) * d_rho;
      if (!detail::is_material(s, rho * c, rho * sn)) {
        cells[i] = 0.0;
        continue;
      }
      const double length = beta * (R + rho * c);
      const double twisted_length = beta * (R + rho * c_twisted);
      const double stretch = twisted_length - length;
      const double area = rho * d_rho * d_theta;
      cells[i] = E * stretch * stretch / length * area;
    }
    rows[j] = detail::pairwise_sum(cells);
  }
  return detail::pairwise_sum(rows) / alpha;
}

}  // namespace wiretwist
