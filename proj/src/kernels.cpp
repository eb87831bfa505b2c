#include "linni/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "linni/ode.hpp"

namespace linni::kernels {

ShootingSample shooting_sample(const RadialProblem& problem, double center,
                               const IntegrationSettings& settings) {
  const auto end = integrate_endpoint(problem, center, problem.radius(), settings);
  return {center, end.truncated ? std::nan("") : end.du, end.truncated};
}

std::vector<ShootingSample> shooting_map_serial(const RadialProblem& problem,
                                                std::span<const double> centers,
                                                const IntegrationSettings& settings) {
  std::vector<ShootingSample> out;
  out.reserve(centers.size());
  for (double a : centers) out.push_back(shooting_sample(problem, a, settings));
  return out;
}

std::vector<ShootingSample> shooting_map_parallel(const RadialProblem& problem,
                                                  std::span<const double> centers,
                                                  const IntegrationSettings& settings) {
  const long n = static_cast<long>(centers.size());
  std::vector<ShootingSample> out(centers.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = shooting_sample(problem, centers[i], settings);
    } catch (...) {
#pragma omp critical(linni_kernel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

double helmholtz_boundary_slope(int dimension, double radius, double nu, double tolerance) {
  const int n = dimension;
  // phi = 1 - nu r^2/(2N) + nu^2 r^4/(8N(N+2)) near the origin.
  const double seam = std::min(1e-4 * std::max(1.0, radius), 1e-3 / std::sqrt(std::max(std::abs(nu), 1.0)));
  const double c2 = -nu / (2.0 * n), c4 = nu * nu / (8.0 * n * (n + 2.0));
  const double s2 = seam * seam;
  const ode::State<2> y0{1.0 + c2 * s2 + c4 * s2 * s2, 2.0 * c2 * seam + 4.0 * c4 * s2 * seam};
  ode::Options opt;
  opt.tolerance = tolerance;
  opt.max_step = radius / 50.0;
  opt.overflow_cap = std::numeric_limits<double>::infinity();
  auto rhs = [&](double r, const ode::State<2>& y) -> ode::State<2> {
    return {y[1], -(n - 1.0) / r * y[1] - nu * y[0]};
  };
  return ode::integrate<2>(rhs, seam, y0, radius, opt).y[1];
}

std::vector<double> helmholtz_slopes_serial(int dimension, double radius,
                                            std::span<const double> nus, double tolerance) {
  std::vector<double> out;
  out.reserve(nus.size());
  for (double nu : nus) out.push_back(helmholtz_boundary_slope(dimension, radius, nu, tolerance));
  return out;
}

std::vector<double> helmholtz_slopes_parallel(int dimension, double radius,
                                              std::span<const double> nus, double tolerance) {
  const long n = static_cast<long>(nus.size());
  std::vector<double> out(nus.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = helmholtz_boundary_slope(dimension, radius, nus[i], tolerance);
    } catch (...) {
#pragma omp critical(linni_kernel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

} // namespace linni::kernels
