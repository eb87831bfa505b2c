#include "linni/radial_ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "linni/ode.hpp"
#include "linni/roots.hpp"

namespace linni {

namespace {

void check_settings(double r_max, const IntegrationSettings& s) {
  if (!(r_max > 0.0)) throw std::invalid_argument("r_max must be positive");
  if (!(s.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
}

ode::Options stepper_options(double r_max, const IntegrationSettings& s) {
  ode::Options o;
  o.tolerance = s.tolerance;
  o.overflow_cap = s.overflow_cap;
  o.max_step = s.max_step > 0.0 ? s.max_step : r_max / 50.0;
  return o;
}

double length_scale(const RadialProblem& problem, double a) {
  const double k = std::abs(problem.potential()) + problem.power_derivative(a);
  return k > 0.0 ? 1.0 / std::sqrt(k) : 1.0;
}

double seam_for(const RadialProblem& problem, double a, double r_max, const IntegrationSettings& s) {
  const double seam = s.seam_radius > 0.0 ? s.seam_radius : default_seam_radius(problem, a, r_max);
  return std::min(seam, 0.5 * r_max);
}

struct RadialRhs {
  const RadialProblem& problem;
  ode::State<2> operator()(double r, const ode::State<2>& y) const {
    return {y[1], problem.second_derivative(r, y[0], y[1])};
  }
};

} // namespace

TaylorStart taylor_start(const RadialProblem& problem, double a) {
  const int n = problem.dimension();
  const double g = problem.source(a);
  const double dg = problem.potential() - problem.power_derivative(a);
  const double c2 = g / (2.0 * n);
  const double c4 = dg * g / (8.0 * n * (n + 2.0));
  return {c2, c4};
}

double default_seam_radius(const RadialProblem& problem, double a, double r_max) {
  return std::min(1e-4 * std::max(1.0, r_max), 1e-3 * length_scale(problem, a));
}

Profile integrate(const RadialProblem& problem, double a, double r_max,
                  const IntegrationSettings& settings) {
  check_settings(r_max, settings);
  if (!std::isfinite(a)) throw NumericalError(ErrorKind::NonFinite, "non-finite center value");
  const double seam = seam_for(problem, a, r_max, settings);
  const auto [c2, c4] = taylor_start(problem, a);

  std::vector<double> r{0.0}, u{a}, du{0.0}, ddu{problem.second_derivative(0.0, a, 0.0)};
  const double s2 = seam * seam;
  const ode::State<2> y0{a + c2 * s2 + c4 * s2 * s2, 2.0 * c2 * seam + 4.0 * c4 * s2 * seam};
  r.push_back(seam);
  u.push_back(y0[0]);
  du.push_back(y0[1]);
  ddu.push_back(problem.second_derivative(seam, y0[0], y0[1]));

  auto opts = stepper_options(r_max, settings);
  const auto out = ode::integrate<2>(RadialRhs{problem}, seam, y0, r_max, opts,
                                     [&](double t, const ode::State<2>& y, const ode::State<2>& dy) {
                                       r.push_back(t);
                                       u.push_back(y[0]);
                                       du.push_back(y[1]);
                                       ddu.push_back(dy[1]);
                                     });
  Profile profile(problem, std::move(r), std::move(u), std::move(du), std::move(ddu));
  profile.mark_truncated(out.status == ode::Status::Truncated);
  profile.set_extrema(find_extrema(profile));
  return profile;
}

EndState integrate_endpoint(const RadialProblem& problem, double a, double r_max,
                            const IntegrationSettings& settings) {
  check_settings(r_max, settings);
  if (!std::isfinite(a)) throw NumericalError(ErrorKind::NonFinite, "non-finite center value");
  const double seam = seam_for(problem, a, r_max, settings);
  const auto [c2, c4] = taylor_start(problem, a);
  const double s2 = seam * seam;
  const ode::State<2> y0{a + c2 * s2 + c4 * s2 * s2, 2.0 * c2 * seam + 4.0 * c4 * s2 * seam};
  const auto out = ode::integrate<2>(RadialRhs{problem}, seam, y0, r_max, stepper_options(r_max, settings));
  return {out.t, out.y[0], out.y[1], out.status == ode::Status::Truncated};
}

Profile integrate_linearized(const Profile& base, double r_max, const IntegrationSettings& settings) {
  check_settings(r_max, settings);
  if (r_max > base.r_max() * (1.0 + 1e-14))
    throw std::invalid_argument("linearization range exceeds the base profile");
  const RadialProblem& problem = base.problem();
  const int n = problem.dimension();
  const double p = problem.exponent();
  const double mu = problem.potential();
  const double a = base.center_value();

  auto coefficient = [&](double r) { return mu - problem.power_derivative(base.value(r)); };

  // v = 1 + d2 r^2 + d4 r^4 with q(r) = q0 + q2 r^2 the linearized coefficient.
  const double q0 = coefficient(0.0);
  const double c2 = taylor_start(problem, a).c2;
  double q2 = 0.0;
  if (a != 0.0) q2 = -(p - 1.0) * (p - 2.0) * std::pow(std::abs(a), p - 3.0) * (a > 0 ? 1.0 : -1.0) * c2;
  const double d2 = q0 / (2.0 * n);
  const double d4 = (q0 * d2 + q2) / (4.0 * (n + 2.0));

  const double seam = seam_for(problem, a, r_max, settings);
  const double s2 = seam * seam;
  const ode::State<2> y0{1.0 + d2 * s2 + d4 * s2 * s2, 2.0 * d2 * seam + 4.0 * d4 * s2 * seam};

  auto rhs = [&](double r, const ode::State<2>& y) -> ode::State<2> {
    return {y[1], -(n - 1.0) / r * y[1] + coefficient(r) * y[0]};
  };

  std::vector<double> r{0.0, seam}, v{1.0, y0[0]}, dv{0.0, y0[1]};
  std::vector<double> ddv{q0 / n, rhs(seam, y0)[1]};
  const auto out = ode::integrate<2>(rhs, seam, y0, r_max, stepper_options(r_max, settings),
                                     [&](double t, const ode::State<2>& y, const ode::State<2>& dy) {
                                       r.push_back(t);
                                       v.push_back(y[0]);
                                       dv.push_back(y[1]);
                                       ddv.push_back(dy[1]);
                                     });
  Profile profile(problem, std::move(r), std::move(v), std::move(dv), std::move(ddv));
  profile.mark_truncated(out.status == ode::Status::Truncated);
  profile.set_extrema(find_extrema(profile));
  return profile;
}

std::vector<double> find_extrema(const Profile& profile) {
  const auto r = profile.grid();
  const auto du = profile.slopes();
  std::vector<double> roots;
  // Index of the last node with nonzero slope, skipping r = 0.
  std::size_t prev = 0;
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (du[i] == 0.0) continue;
    if (prev != 0 && (du[prev] > 0.0) != (du[i] > 0.0)) {
      if (i == prev + 1) {
        auto f = [&](double x) { return profile.slope(x); };
        roots.push_back(refine_root(f, r[prev], r[i], du[prev], du[i], 1e-13));
      } else {
        // Exact zero slope on intermediate nodes: take the first of them.
        roots.push_back(r[prev + 1]);
      }
    }
    prev = i;
  }
  return roots;
}

double energy_density(const Profile& profile, double r) {
  const auto& problem = profile.problem();
  const double u = profile.value(r);
  const double du = profile.slope(r);
  const double p = problem.exponent();
  return 0.5 * du * du + std::pow(std::abs(u), p) / p - 0.5 * problem.potential() * u * u;
}

} // namespace linni
