#pragma once

// Data-parallel grid kernels.  Each kernel has a serial reference and an
// OpenMP version; both evaluate every grid point independently with the same
// arithmetic, so their outputs are bitwise identical.

#include <span>
#include <vector>

#include "linni/problem.hpp"
#include "linni/radial_ode.hpp"

namespace linni::kernels {

/// One evaluation of the shooting map S(a) = u'(R; a).
struct ShootingSample {
  double center;
  double slope;
  bool truncated;
};

ShootingSample shooting_sample(const RadialProblem& problem, double center,
                               const IntegrationSettings& settings);

std::vector<ShootingSample> shooting_map_serial(const RadialProblem& problem,
                                                std::span<const double> centers,
                                                const IntegrationSettings& settings);

std::vector<ShootingSample> shooting_map_parallel(const RadialProblem& problem,
                                                  std::span<const double> centers,
                                                  const IntegrationSettings& settings);

/// phi'(R; nu) for phi'' + (N-1)/r phi' + nu phi = 0, phi(0) = 1, phi'(0) = 0.
double helmholtz_boundary_slope(int dimension, double radius, double nu, double tolerance);

std::vector<double> helmholtz_slopes_serial(int dimension, double radius,
                                            std::span<const double> nus, double tolerance);

std::vector<double> helmholtz_slopes_parallel(int dimension, double radius,
                                              std::span<const double> nus, double tolerance);

} // namespace linni::kernels
