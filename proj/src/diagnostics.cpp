#include "linni/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

#include "linni/error.hpp"
#include "linni/problem.hpp"
#include "linni/radial_ode.hpp"

namespace linni {

namespace {

void check_delta(const Profile& profile, double delta) {
  if (!(delta > 0.0) || delta > profile.r_max())
    throw std::out_of_range("delta must lie in (0, r_max] of the profile");
}

double potential_slope(const Potential& h0, double r) {
  if (const auto* t = std::get_if<TabulatedPotential>(&h0)) return t->slope(r);
  return 0.0;
}

double relative(double residual, double a, double b) {
  const double scale = std::abs(a) + std::abs(b);
  return scale == 0.0 ? std::abs(residual) : std::abs(residual) / scale;
}

} // namespace

RadialIntegral radial_integral(const Profile& profile, double b, const std::function<double(double)>& f) {
  using boost::math::quadrature::gauss;
  const int n = profile.problem().dimension();
  const auto grid = profile.grid();
  auto g = [&](double r) { return f(r) * std::pow(r, n - 1); };
  double fine = 0.0, err = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size() && grid[i] < b; ++i) {
    const double lo = grid[i], hi = std::min(grid[i + 1], b);
    if (hi <= lo) continue;
    const double v10 = gauss<double, 10>::integrate(g, lo, hi);
    const double v5 = gauss<double, 5>::integrate(g, lo, hi);
    fine += v10;
    err += std::abs(v10 - v5);
  }
  const double area = sphere_area(n - 1);
  return {area * fine, area * err};
}

double PohozaevReport::relative_residual() const {
  return scale == 0.0 ? std::abs(residual_exact) : std::abs(residual_exact) / scale;
}

double PotentialPohozaevReport::relative_residual() const { return relative(residual, lhs, rhs_boundary); }

PohozaevReport pohozaev_residual(const Profile& profile, double delta) {
  check_delta(profile, delta);
  const auto& prob = profile.problem();
  const int n = prob.dimension();
  const double p = prob.exponent();
  const double mu = prob.potential();
  const double crit = prob.critical_exponent();

  const auto u2 = radial_integral(profile, delta, [&](double r) {
    const double u = profile.value(r);
    return u * u;
  });
  const auto up = radial_integral(profile, delta, [&](double r) { return std::pow(std::abs(profile.value(r)), p); });

  const double exact_c = (n - 2.0) * (p - crit) / (2.0 * p);
  const double cited_c = (n - 2.0) * (n - 2.0) * (p - crit) / (4.0 * n);
  const double u = profile.value(delta), du = profile.slope(delta);
  const double rhs = sphere_area(n - 1) * std::pow(delta, n - 1) *
                     (-0.5 * delta * du * du - 0.5 * (n - 2.0) * u * du + 0.5 * delta * mu * u * u -
                      delta / p * std::pow(std::abs(u), p));

  PohozaevReport rep{};
  rep.delta = delta;
  rep.integral_u2 = u2.value;
  rep.integral_up = up.value;
  rep.lhs_exact = mu * u2.value + exact_c * up.value;
  rep.lhs_cited_coefficient = mu * u2.value + cited_c * up.value;
  rep.rhs_boundary = rhs;
  rep.residual_exact = rep.lhs_exact - rhs;
  rep.residual_cited = rep.lhs_cited_coefficient - rhs;
  rep.quadrature_error = std::abs(mu) * u2.error + std::abs(exact_c) * up.error;
  rep.scale = std::abs(mu) * u2.value + std::abs(exact_c) * up.value + std::abs(rhs);
  return rep;
}

PotentialPohozaevReport pohozaev_potential_residual(const Profile& v_profile, const Potential& h0,
                                                    double delta) {
  if (v_profile.problem().dimension() != 6)
    throw NumericalError(ErrorKind::Dimension, "the potential Pohozaev identity is stated for N=6");
  check_delta(v_profile, delta);
  const auto lhs = radial_integral(v_profile, delta, [&](double r) {
    const double v = v_profile.value(r);
    return (potential_value(h0, r) + 0.5 * r * potential_slope(h0, r)) * v * v;
  });
  const double v = v_profile.value(delta), dv = v_profile.slope(delta);
  const double rhs = sphere_area(5) * std::pow(delta, 5) *
                     (-0.5 * delta * dv * dv - 2.0 * v * dv + 0.5 * delta * potential_value(h0, delta) * v * v -
                      delta / 3.0 * v * v * v);
  return {delta, lhs.value, rhs, lhs.value - rhs, lhs.error};
}

double lp_norm(const Profile& profile, double alpha) {
  if (!(alpha >= 1.0)) throw std::invalid_argument("Lebesgue exponent must be at least 1");
  const auto in = radial_integral(profile, profile.r_max(),
                                  [&](double r) { return std::pow(std::abs(profile.value(r)), alpha); });
  return std::pow(in.value, 1.0 / alpha);
}

double alpha_exponent(int dimension, double exponent) {
  const double crit = 2.0 * dimension / (dimension - 2.0);
  return std::max(crit, 0.5 * dimension * exponent - dimension);
}

double monotonicity_audit(const Profile& profile) {
  constexpr int per_interval = 8;
  const auto grid = profile.grid();
  double worst = 0.0;
  double prev = energy_density(profile, grid[0]);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double h = (grid[i + 1] - grid[i]) / per_interval;
    for (int k = 1; k <= per_interval; ++k) {
      const double r = k == per_interval ? grid[i + 1] : grid[i] + k * h;
      const double e = energy_density(profile, r);
      worst = std::max(worst, e - prev);
      prev = e;
    }
  }
  return worst;
}

Metadata pohozaev_metadata(const PohozaevReport& r) {
  Metadata m;
  m.set("delta", r.delta);
  m.set("lhs_exact", r.lhs_exact);
  m.set("rhs_boundary", r.rhs_boundary);
  m.set("residual_exact", r.residual_exact);
  m.set("relative_residual", r.relative_residual());
  m.set("lhs_cited_coefficient", r.lhs_cited_coefficient);
  m.set("residual_cited", r.residual_cited);
  m.set("integral_u2", r.integral_u2);
  m.set("integral_up", r.integral_up);
  m.set("quadrature_error", r.quadrature_error);
  m.set("scale", r.scale);
  return m;
}

Metadata pohozaev_metadata(const PotentialPohozaevReport& r) {
  Metadata m;
  m.set("delta", r.delta);
  m.set("lhs", r.lhs);
  m.set("rhs_boundary", r.rhs_boundary);
  m.set("residual", r.residual);
  m.set("relative_residual", r.relative_residual());
  m.set("quadrature_error", r.quadrature_error);
  return m;
}

} // namespace linni
