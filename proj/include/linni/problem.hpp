#pragma once

#include <cmath>
#include <numbers>

namespace linni {

/// Surface area of the unit sphere S^n embedded in R^{n+1}.
inline double sphere_area(int n) {
  const double half = 0.5 * (n + 1);
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

/// Volume of the unit ball in R^n.
inline double ball_volume(int n) { return sphere_area(n - 1) / n; }

/// The ODE instance -u'' - (N-1)/r u' + mu u = |u|^{p-2} u on [0, R].
class RadialProblem {
public:
  RadialProblem(int dimension, double radius, double exponent, double potential = 1.0);

  int dimension() const noexcept { return dimension_; }
  double radius() const noexcept { return radius_; }
  double exponent() const noexcept { return exponent_; }
  double potential() const noexcept { return potential_; }

  /// 2N/(N-2).
  double critical_exponent() const noexcept {
    return 2.0 * dimension_ / (dimension_ - 2.0);
  }

  /// |u|^{p-2} u, evaluated as sign(u)|u|^{p-1}.
  double power(double u) const noexcept {
    if (u == 0.0) return 0.0;
    const double m = std::pow(std::abs(u), exponent_ - 1.0);
    return u > 0.0 ? m : -m;
  }

  /// d/du of power(u): (p-1)|u|^{p-2}.
  double power_derivative(double u) const noexcept {
    if (u == 0.0) return 0.0;
    return (exponent_ - 1.0) * std::pow(std::abs(u), exponent_ - 2.0);
  }

  /// Source term g(u) = mu u - |u|^{p-2} u so that Delta u = g(u).
  double source(double u) const noexcept { return potential_ * u - power(u); }

  /// u'' recovered from the ODE at radius r (r = 0 uses the regular limit).
  double second_derivative(double r, double u, double du) const noexcept {
    if (r == 0.0) return source(u) / dimension_;
    return -(dimension_ - 1.0) / r * du + source(u);
  }

  /// The constant positive solution mu^{1/(p-2)}.
  double constant_solution() const noexcept {
    return std::pow(potential_, 1.0 / (exponent_ - 2.0));
  }

  RadialProblem with_radius(double radius) const {
    return {dimension_, radius, exponent_, potential_};
  }
  RadialProblem with_exponent(double exponent) const {
    return {dimension_, radius_, exponent, potential_};
  }

  friend bool operator==(const RadialProblem&, const RadialProblem&) = default;

private:
  int dimension_;
  double radius_;
  double exponent_;
  double potential_;
};

} // namespace linni
