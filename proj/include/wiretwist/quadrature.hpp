#pragma once

// One-dimensional quadrature: adaptive Simpson (default), composite
// Gauss-Legendre with panel doubling, and fixed n-point Gauss-Legendre rules.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <type_traits>

#include "wiretwist/errors.hpp"

namespace wiretwist {

enum class QuadratureScheme { AdaptiveSimpson, GaussLegendreComposite };

/// Integration policy. `cap` is the recursion depth for adaptive Simpson and
/// the maximum panel count for composite Gauss-Legendre.
struct QuadratureSpec {
  QuadratureScheme scheme = QuadratureScheme::AdaptiveSimpson;
  double rel_tol = 1e-10;
  int cap = 40;

  static QuadratureSpec simpson(double rel_tol = 1e-10, int max_depth = 40) {
    return QuadratureSpec{QuadratureScheme::AdaptiveSimpson, rel_tol, max_depth}.validated();
  }

  static QuadratureSpec gauss_legendre(double rel_tol = 1e-10, int max_panels = 512) {
    return QuadratureSpec{QuadratureScheme::GaussLegendreComposite, rel_tol, max_panels}.validated();
  }

  QuadratureSpec validated() const {
    if (!(rel_tol > 0.0 && rel_tol < 1e-2)) {
      throw InvalidArgument("quadrature rel_tol must lie in (0, 1e-2)");
    }
    if (cap < 4) throw InvalidArgument("quadrature refinement cap must be at least 4");
    return *this;
  }
};

inline std::string to_string(QuadratureScheme s) {
  return s == QuadratureScheme::AdaptiveSimpson ? "adaptive-simpson" : "gauss-legendre-composite";
}

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// Nodes and weights of the N-point Gauss-Legendre rule on [-1, 1].
template <std::size_t N>
struct GaussLegendreRule {
  std::array<double, N> nodes{};
  std::array<double, N> weights{};

  GaussLegendreRule() {
    for (std::size_t i = 0; i < (N + 1) / 2; ++i) {
      // Tricomi initial guess, then Newton on P_N.
      double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(N) + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0;
        double p1 = x;
        for (std::size_t k = 2; k <= N; ++k) {
          const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
          p0 = p1;
          p1 = pk;
        }
        dp = static_cast<double>(N) * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      nodes[i] = -x;
      nodes[N - 1 - i] = x;
      weights[i] = w;
      weights[N - 1 - i] = w;
    }
    if constexpr (N % 2 == 1) nodes[N / 2] = 0.0;
  }

  static const GaussLegendreRule& instance() {
    static const GaussLegendreRule rule;
    return rule;
  }

  template <typename F>
  double integrate(F&& f, double a, double b) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < N; ++i) sum += weights[i] * f(mid + half * nodes[i]);
    return half * sum;
  }
};

/// Fixed N-point Gauss-Legendre on [a, b].
template <std::size_t N, typename F>
double gauss_legendre_fixed(F&& f, double a, double b) {
  return GaussLegendreRule<N>::instance().integrate(f, a, b);
}

namespace detail {

inline constexpr long kMaxEvaluations = 20'000'000;

template <typename F>
class AdaptiveSimpson {
 public:
  AdaptiveSimpson(F& f, int max_depth) : f_(f), max_depth_(max_depth) {}

  double run(double a, double fa, double m, double fm, double b, double fb, double whole, double eps, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f_(lm);
    const double frm = f_(rm);
    evaluations_ += 2;
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    const bool unsplittable = !(a < lm && lm < m && m < rm && rm < b);
    if (std::abs(delta) <= 15.0 * eps) {
      error_ += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    if (depth >= max_depth_ || unsplittable || evaluations_ > kMaxEvaluations) {
      converged_ = false;
      error_ += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return run(a, fa, lm, flm, m, fm, left, 0.5 * eps, depth + 1) +
           run(m, fm, rm, frm, b, fb, right, 0.5 * eps, depth + 1);
  }

  bool converged() const noexcept { return converged_; }
  double error() const noexcept { return error_; }

 private:
  F& f_;
  int max_depth_;
  long evaluations_ = 0;
  double error_ = 0.0;
  bool converged_ = true;
};

}  // namespace detail

/// Adaptive Simpson with Richardson correction. The interval is first cut
/// into eight panels; the tolerance is `rel_tol` times a coarse estimate.
template <typename F>
QuadratureResult adaptive_simpson(F&& f, double a, double b, double rel_tol, int max_depth) {
  if (a == b) return {};
  constexpr int kPanels = 8;
  const double h = (b - a) / kPanels;
  std::array<double, 2 * kPanels + 1> fx{};
  for (int i = 0; i <= 2 * kPanels; ++i) fx[i] = f(a + 0.5 * h * i);
  std::array<double, kPanels> coarse{};
  double estimate = 0.0;
  for (int p = 0; p < kPanels; ++p) {
    coarse[p] = h / 6.0 * (fx[2 * p] + 4.0 * fx[2 * p + 1] + fx[2 * p + 2]);
    estimate += coarse[p];
  }
  double scale = 0.0;
  for (double c : coarse) scale += std::abs(c);
  const double eps = rel_tol * std::max(std::abs(estimate), 1e-3 * scale) / kPanels;

  detail::AdaptiveSimpson<std::remove_reference_t<F>> engine(f, max_depth);
  double total = 0.0;
  for (int p = 0; p < kPanels; ++p) {
    const double lo = a + h * p;
    const double hi = (p == kPanels - 1) ? b : a + h * (p + 1);
    total += engine.run(lo, fx[2 * p], 0.5 * (lo + hi), fx[2 * p + 1], hi, fx[2 * p + 2], coarse[p], eps, 1);
  }
  if (!engine.converged()) {
    throw QuadratureNotConverged("adaptive Simpson did not reach rel_tol " + std::to_string(rel_tol),
                                 total, engine.error());
  }
  return {total, engine.error()};
}

/// Composite 16-point Gauss-Legendre; panel count doubles from 4 until two
/// successive sums agree to `rel_tol` or `max_panels` is exceeded.
template <typename F>
QuadratureResult gauss_legendre_composite(F&& f, double a, double b, double rel_tol, int max_panels) {
  if (a == b) return {};
  const auto& rule = GaussLegendreRule<16>::instance();
  auto composite = [&](int panels) {
    const double h = (b - a) / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) sum += rule.integrate(f, a + h * p, (p == panels - 1) ? b : a + h * (p + 1));
    return sum;
  };
  int panels = 4;
  double previous = composite(panels);
  while (2 * panels <= max_panels) {
    panels *= 2;
    const double current = composite(panels);
    const double diff = std::abs(current - previous);
    if (diff <= rel_tol * std::abs(current) || diff <= std::numeric_limits<double>::min()) {
      return {current, diff};
    }
    previous = current;
  }
  throw QuadratureNotConverged("Gauss-Legendre composite did not reach rel_tol " + std::to_string(rel_tol),
                               previous, std::abs(previous) * rel_tol);
}

template <typename F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureSpec& spec) {
  switch (spec.scheme) {
    case QuadratureScheme::GaussLegendreComposite:
      return gauss_legendre_composite(f, a, b, spec.rel_tol, spec.cap);
    case QuadratureScheme::AdaptiveSimpson:
    default:
      return adaptive_simpson(f, a, b, spec.rel_tol, spec.cap);
  }
}

}  // namespace wiretwist
