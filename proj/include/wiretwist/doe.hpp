#pragma once

// Full-factorial design of experiments over (r_w/r, L/r - r_w/r, gamma) for
// the normalised section integral I/r^4, and the one-parameter surrogate
//   I/r^4 ≈ pi/4 - c [1 - (L/r - r_w/r)]
// fitted by least squares with the anchor I/r^4 = pi/4 at L/r - r_w/r = 1.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "wiretwist/geometry.hpp"
#include "wiretwist/stiffness.hpp"

namespace wiretwist {

struct DoeGrid {
  std::vector<double> rw_ratios{2.0, 2.5, 3.0};
  std::vector<double> x_values{0.25, 0.5, 0.75, 1.0};
  std::vector<double> gammas{std::numbers::pi / 4.0};
};

struct DoeRow {
  double rw_ratio = 0.0;
  double L_ratio = 0.0;
  double gamma = 0.0;
  double I_over_r4 = 0.0;

  double x() const noexcept { return L_ratio - rw_ratio; }
};

struct DoeTable {
  std::vector<DoeRow> rows;
};

/// Evaluates I/r^4 (r = 1) at every grid point; rows ordered gamma, x, r_w/r.
/// Any failing point aborts the whole table.
inline DoeTable run_doe(const DoeGrid& grid, const QuadratureSpec& quad) {
  if (grid.rw_ratios.empty() || grid.x_values.empty() || grid.gammas.empty()) {
    throw InvalidArgument("DoE grid has an empty factor");
  }
  DoeTable table;
  table.rows.reserve(grid.rw_ratios.size() * grid.x_values.size() * grid.gammas.size());
  for (double gamma : grid.gammas) {
    for (double x : grid.x_values) {
      for (double rw : grid.rw_ratios) {
        const double L = rw + x;
        const auto section = SectionGeometry::wire_race_ratios(1.0, rw, L, gamma);
        table.rows.push_back({rw, L, gamma, section_integral(section, quad).I});
      }
    }
  }
  return table;
}

struct SurrogateFit {
  double c = kPublishedSlope;
  std::vector<double> residuals;

  static SurrogateFit published() { return SurrogateFit{kPublishedSlope, {}}; }

  /// Normalised surrogate value at clearance ratio x.
  double predict(double x) const { return std::numbers::pi / 4.0 - c * std::max(0.0, 1.0 - x); }

  double max_abs_residual() const {
    double m = 0.0;
    for (double v : residuals) m = std::max(m, std::abs(v));
    return m;
  }
};

/// Closed-form solution of min_c Σ (I_i - [pi/4 - c (1 - x_i)+])^2.
/// Rows with x >= 1 carry zero weight through the clamp.
inline SurrogateFit fit_surrogate(const DoeTable& table) {
  double num = 0.0;
  double den = 0.0;
  for (const auto& row : table.rows) {
    const double d = std::max(0.0, 1.0 - row.x());
    num += (std::numbers::pi / 4.0 - row.I_over_r4) * d;
    den += d * d;
  }
  if (den == 0.0) throw DegenerateFit("no DoE row has L/r - r_w/r < 1; slope is undetermined");
  SurrogateFit fit;
  fit.c = num / den;
  if (!(fit.c > 0.0)) throw DegenerateFit("fitted slope is not positive");
  fit.residuals.reserve(table.rows.size());
  for (const auto& row : table.rows) fit.residuals.push_back(row.I_over_r4 - fit.predict(row.x()));
  return fit;
}

/// Surrogate section integral in mm^4; flagged when L/r - r_w/r < 0.25.
inline FlaggedValue surrogate_I(const SectionGeometry& section, const SurrogateFit& fit) {
  const double r4 = std::pow(section.r(), 4);
  const double normalised = std::numbers::pi / 4.0 - fit.c * clearance_deficit(section);
  return {r4 * normalised, below_validated_range(section)};
}

}  // namespace wiretwist
