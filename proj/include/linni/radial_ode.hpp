#pragma once

#include <vector>

#include "linni/problem.hpp"
#include "linni/profile.hpp"

namespace linni {

struct IntegrationSettings {
  /// Local error bound per accepted step (mixed absolute/relative).
  double tolerance = 1e-10;
  /// |u| beyond this stops the integration and marks the profile truncated.
  double overflow_cap = 1e12;
  /// Radius up to which the Taylor start is used; zero selects the default
  /// min(1e-4 max(1, r_max), 1e-3 l) with l the local length scale at r = 0.
  double seam_radius = 0.0;
  /// Zero selects r_max / 50.
  double max_step = 0.0;
};

/// Taylor coefficients of the regular solution u = a + c2 r^2 + c4 r^4 + O(r^6).
struct TaylorStart {
  double c2;
  double c4;
};

TaylorStart taylor_start(const RadialProblem& problem, double center_value);

double default_seam_radius(const RadialProblem& problem, double center_value, double r_max);

/// Integrates the radial ODE with u(0) = a, u'(0) = 0 on [0, r_max].  The
/// resulting profile carries refined extrema.  If |u| exceeds the overflow cap
/// the profile ends early and is flagged truncated.
Profile integrate(const RadialProblem& problem, double center_value, double r_max,
                  const IntegrationSettings& settings = {});

/// State at the end of an integration without storing the trajectory.
struct EndState {
  double r;
  double u;
  double du;
  bool truncated;
};

EndState integrate_endpoint(const RadialProblem& problem, double center_value, double r_max,
                            const IntegrationSettings& settings = {});

/// Solves -v'' - (N-1)/r v' + mu v = (p-1)|u|^{p-2} v along `base`, with
/// v(0) = 1, v'(0) = 0.  The returned profile's curvature column holds v''.
Profile integrate_linearized(const Profile& base, double r_max,
                             const IntegrationSettings& settings = {});

/// Radii in (0, r_max] where u' changes sign, refined on the dense output.
std::vector<double> find_extrema(const Profile& profile);

/// E(r) = u'^2/2 + |u|^p/p - mu u^2/2, nonincreasing along solutions.
double energy_density(const Profile& profile, double r);

} // namespace linni
