#pragma once

#include <iosfwd>
#include <vector>

#include "linni/metadata.hpp"
#include "linni/problem.hpp"
#include "linni/profile.hpp"
#include "linni/radial_ode.hpp"

namespace linni {

struct ShootingOptions {
  /// The shooting map is evaluated at a tighter tolerance than plain
  /// integration so that its discretization noise sits below the residual
  /// target.
  IntegrationSettings integration{.tolerance = 1e-12};
  double residual_tolerance = 1e-10;
  int max_iterations = 200;
};

struct ShootingResult {
  Profile profile;
  double center_value;
  /// u'(R), the Neumann residual.
  double boundary_slope;
  bool converged;
  int iterations;
};

/// Root of S(a) = u'(R; a) inside [a_lo, a_hi]: bisection to seed the
/// bracket, then safeguarded false position.  a_lo == a_hi polishes a root
/// guess with secant steps.
ShootingResult solve_neumann(const RadialProblem& problem, double a_lo, double a_hi,
                             const ShootingOptions& options = {});

/// Solves on every sign-change cell of S over an equispaced grid of center
/// values; roots closer than 1e-8 are merged.  Sorted by center value.
std::vector<ShootingResult> scan_solutions(const RadialProblem& problem, double a_min, double a_max,
                                           int samples, const ShootingOptions& options = {});

/// The initial value problem with mu = 1 on [0, r_max], extrema recorded.
Profile entire_profile(int dimension, double exponent, double center_value, double r_max,
                       const IntegrationSettings& settings = {});

/// First `count` extrema of the N=6, p=3, u(0)=1/2 entire profile.  A zero
/// max_step in `settings` is replaced by 2 pi/64, a fraction of the tail period.
std::vector<double> exceptional_radii_dim6(int count, double r_max = 60.0,
                                           const IntegrationSettings& settings = {.tolerance = 1e-11});

struct EigenOptions {
  double tolerance = 1e-13;
  /// Zero selects 0.1 / R^2.
  double scan_step = 0.0;
  bool parallel = true;
};

/// lambda_1 = 1 followed by 1 + nu_j with nu_j the positive zeros of
/// nu -> phi'(R; nu) for the radial Helmholtz initial value problem.
std::vector<double> radial_neumann_eigenvalues(int dimension, double radius, int count,
                                               const EigenOptions& options = {});

struct NondegReport {
  Profile v_profile;
  double v_slope_at_R;
  bool degenerate;
  /// |v'(R)| / max |v'| over [0, R].
  double margin;
};

NondegReport nondegeneracy_check(const ShootingResult& base, double threshold = 1e-6,
                                 const IntegrationSettings& settings = {.tolerance = 1e-12});

/// Maps a solution with coefficient mu on B_R to the solution
/// v(x) = (mu_new/mu)^{1/(p-2)} u(x sqrt(mu_new/mu)) with coefficient mu_new
/// on B_{R sqrt(mu/mu_new)}.
Profile scaling_transport(const Profile& profile, double mu_new);

Metadata shooting_metadata(const ShootingResult& result);

/// Profile CSV followed by nothing else; the metadata goes to `sidecar`.
void write_shooting_result(std::ostream& csv, std::ostream& sidecar, const ShootingResult& result);

} // namespace linni
