#pragma once

// Wire cross-section and ring geometry.
//
// A wire-race section is a circle of radius r (centred at the origin) from
// which the "bite" circle of radius r_w, centred at distance L and polar angle
// gamma, has been removed. Polar angle theta is measured from the same axis as
// gamma. Units are mm and rad throughout.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "wiretwist/errors.hpp"

namespace wiretwist {

enum class SectionKind { Circular, WireRace };

enum class Intersection { FullCircle, PartialBite };

namespace detail {

// Relative slack used at the tangency boundary L - r_w = r.
inline constexpr double kTangencyTol = 1e-12;

inline bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace detail

/// Classifies a bite of radius `r_w` at distance `L` against a section of radius `r`.
/// Throws InvalidGeometry when the bite covers the centre (L <= r_w), lies
/// strictly inside the section (L + r_w <= r), or undercuts it so that the
/// section circle meets the far side of the bite (L^2 - r_w^2 < r^2). In the
/// last case rays just outside the bite arc cross the bite twice and the
/// material is no longer bounded by a single rho(theta).
inline Intersection classify_section(double r, double r_w, double L) {
  if (!detail::finite_positive(r) || !detail::finite_positive(r_w) || !detail::finite_positive(L)) {
    throw InvalidGeometry("section parameters must be finite and positive (r=" + detail::fmt(r) +
                          ", r_w=" + detail::fmt(r_w) + ", L=" + detail::fmt(L) + ")");
  }
  if (L <= r_w) {
    throw InvalidGeometry("bite covers the section centre: L=" + detail::fmt(L) +
                          " must exceed r_w=" + detail::fmt(r_w));
  }
  if (L + r_w <= r) {
    throw InvalidGeometry("bite lies strictly inside the section: L + r_w=" + detail::fmt(L + r_w) +
                          " must exceed r=" + detail::fmt(r));
  }
  if (L - r_w >= r * (1.0 - detail::kTangencyTol)) return Intersection::FullCircle;
  if ((L - r_w) * (L + r_w) < r * r * (1.0 - detail::kTangencyTol)) {
    throw InvalidGeometry("bite undercuts the section: L^2 - r_w^2=" + detail::fmt((L - r_w) * (L + r_w)) +
                          " must be at least r^2=" + detail::fmt(r * r));
  }
  return Intersection::PartialBite;
}

/// Immutable wire cross-section. Construct through `circular` or `wire_race`.
class SectionGeometry {
 public:
  static SectionGeometry circular(double r) {
    if (!detail::finite_positive(r)) {
      throw InvalidGeometry("section radius r must be finite and positive, got " + detail::fmt(r));
    }
    return SectionGeometry(SectionKind::Circular, r, 0.0, 0.0, 0.0);
  }

  static SectionGeometry wire_race(double r, double r_w, double L, double gamma) {
    if (!std::isfinite(gamma)) throw InvalidGeometry("gamma must be finite");
    classify_section(r, r_w, L);
    return SectionGeometry(SectionKind::WireRace, r, r_w, L, gamma);
  }

  /// Same as `wire_race` with r_w and L given as multiples of r.
  static SectionGeometry wire_race_ratios(double r, double rw_ratio, double L_ratio, double gamma) {
    return wire_race(r, rw_ratio * r, L_ratio * r, gamma);
  }

  SectionKind kind() const noexcept { return kind_; }
  double r() const noexcept { return r_; }
  double r_w() const noexcept { return r_w_; }
  double L() const noexcept { return L_; }
  double gamma() const noexcept { return gamma_; }

  double rw_ratio() const noexcept { return r_w_ / r_; }
  double L_ratio() const noexcept { return L_ / r_; }
  /// L/r - r_w/r; the DoE's single governing parameter.
  double clearance_ratio() const noexcept { return (L_ - r_w_) / r_; }

 private:
  SectionGeometry(SectionKind kind, double r, double r_w, double L, double gamma)
      : kind_(kind), r_(r), r_w_(r_w), L_(L), gamma_(gamma) {}

  SectionKind kind_;
  double r_;
  double r_w_;
  double L_;
  double gamma_;
};

inline Intersection classify_section(const SectionGeometry& s) {
  if (s.kind() == SectionKind::Circular) return Intersection::FullCircle;
  return classify_section(s.r(), s.r_w(), s.L());
}

/// Circumferential wire ring. The span angle beta = 2*pi/Z is always derived.
class WireRing {
 public:
  WireRing(double R, int Z, double E, SectionGeometry section)
      : R_(R), Z_(Z), E_(E), section_(std::move(section)) {
    if (!detail::finite_positive(R_)) throw InvalidGeometry("ring radius R must be finite and positive");
    if (Z_ < 1) throw InvalidGeometry("ball count Z must be at least 1");
    if (!detail::finite_positive(E_)) throw InvalidGeometry("elastic modulus E must be finite and positive");
    if (!(R_ > section_.r())) {
      throw InvalidGeometry("ring radius R=" + detail::fmt(R_) + " must exceed section radius r=" +
                            detail::fmt(section_.r()));
    }
  }

  double R() const noexcept { return R_; }
  int Z() const noexcept { return Z_; }
  double E() const noexcept { return E_; }
  double beta() const noexcept { return 2.0 * std::numbers::pi / static_cast<double>(Z_); }
  const SectionGeometry& section() const noexcept { return section_; }

 private:
  double R_;
  int Z_;
  double E_;
  SectionGeometry section_;
};

namespace detail {

// Smaller root of r_w^2 = L^2 + rho^2 - 2 L rho cos(gamma - theta), written as
// (L^2 - r_w^2) / (L cos + sqrt(...)) to avoid cancellation. No domain checks.
inline double bite_boundary_unchecked(double r_w, double L, double phi) {
  const double s = std::sin(phi);
  const double disc = std::max(0.0, r_w * r_w - L * L * s * s);
  return (L - r_w) * (L + r_w) / (L * std::cos(phi) + std::sqrt(disc));
}

}  // namespace detail

/// Radial distance from the section centre to the bite circle along polar angle `theta`.
inline double rho_of_theta(const SectionGeometry& s, double theta) {
  if (s.kind() != SectionKind::WireRace) {
    throw WrongSectionKind("rho_of_theta requires a wire-race section");
  }
  const double phi = s.gamma() - theta;
  const double sn = std::sin(phi);
  const double disc = s.r_w() * s.r_w() - s.L() * s.L() * sn * sn;
  if (disc < 0.0 || s.L() * std::cos(phi) <= 0.0) {
    throw DomainError("theta=" + detail::fmt(theta) + " does not point at the bite circle");
  }
  return (s.L() - s.r_w()) * (s.L() + s.r_w()) / (s.L() * std::cos(phi) + std::sqrt(disc));
}

struct ThetaLimits {
  double theta1;
  double theta2;
};

/// Polar angles where the bite circle crosses the section circle (rho = r).
/// For a bite that misses or only touches the section both limits equal gamma.
inline ThetaLimits theta_limits(const SectionGeometry& s) {
  if (s.kind() != SectionKind::WireRace) {
    throw WrongSectionKind("theta_limits requires a wire-race section");
  }
  if (classify_section(s) == Intersection::FullCircle) return {s.gamma(), s.gamma()};
  const double l = s.L_ratio();
  const double w = s.rw_ratio();
  double u = (1.0 + l * l - w * w) / (2.0 * l);
  if (std::abs(u) > 1.0 && std::abs(u) <= 1.0 + detail::kTangencyTol) u = std::copysign(1.0, u);
  const double half = std::acos(u);
  return {s.gamma() - half, s.gamma() + half};
}

}  // namespace wiretwist
