#include "linni/bvp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "linni/error.hpp"
#include "linni/kernels.hpp"
#include "linni/roots.hpp"

namespace linni {

namespace {

using kernels::ShootingSample;

bool opposite(double x, double y) { return (x > 0.0 && y < 0.0) || (x < 0.0 && y > 0.0); }

ShootingResult finish(const RadialProblem& problem, double a, int iterations,
                      const ShootingOptions& options) {
  Profile profile = integrate(problem, a, problem.radius(), options.integration);
  const double slope = profile.slopes().back();
  const bool ok = !profile.truncated() && std::abs(slope) <= options.residual_tolerance;
  return {std::move(profile), a, slope, ok, iterations};
}

// Pulls a truncated bracket end toward the other end until the IVP reaches R.
ShootingSample narrow(const RadialProblem& problem, ShootingSample end, double other,
                      const ShootingOptions& options, int& iterations) {
  while (end.truncated && iterations < options.max_iterations) {
    end = kernels::shooting_sample(problem, 0.5 * (end.center + other), options.integration);
    ++iterations;
  }
  return end;
}

ShootingResult polish_guess(const RadialProblem& problem, double a, const ShootingOptions& options) {
  auto eval = [&](double x) { return kernels::shooting_sample(problem, x, options.integration); };
  ShootingSample s0 = eval(a);
  if (s0.truncated) throw NumericalError(ErrorKind::NonConvergence, "root guess leads to a truncated IVP");
  int it = 1;
  if (std::abs(s0.slope) <= options.residual_tolerance) return finish(problem, a, it, options);
  double x0 = a, f0 = s0.slope;
  double x1 = a + 1e-6 * std::max(1.0, std::abs(a));
  ShootingSample s1 = eval(x1);
  double f1 = s1.slope;
  for (; it < options.max_iterations; ++it) {
    if (s1.truncated || !std::isfinite(f1)) break;
    if (std::abs(f1) <= options.residual_tolerance) return finish(problem, x1, it, options);
    if (f1 == f0) break;
    const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
    x0 = x1;
    f0 = f1;
    x1 = x2;
    s1 = eval(x1);
    f1 = s1.slope;
  }
  throw NumericalError(ErrorKind::NonConvergence,
                       "secant polish from a=" + format_double(a) + " did not converge");
}

} // namespace

ShootingResult solve_neumann(const RadialProblem& problem, double a_lo, double a_hi,
                             const ShootingOptions& options) {
  if (a_lo == a_hi) return polish_guess(problem, a_lo, options);
  if (a_lo > a_hi) std::swap(a_lo, a_hi);
  auto eval = [&](double x) { return kernels::shooting_sample(problem, x, options.integration); };
  const double tol = options.residual_tolerance;

  int it = 2;
  ShootingSample lo = eval(a_lo), hi = eval(a_hi);
  if (lo.truncated) lo = narrow(problem, lo, a_hi, options, it);
  if (hi.truncated) hi = narrow(problem, hi, lo.center, options, it);
  if (lo.truncated || hi.truncated)
    throw NumericalError(ErrorKind::NonConvergence, "bracket could not be narrowed below truncation");
  if (std::abs(lo.slope) <= tol && lo.slope == 0.0) return finish(problem, lo.center, it, options);
  if (hi.slope == 0.0) return finish(problem, hi.center, it, options);
  if (!opposite(lo.slope, hi.slope))
    throw NumericalError(ErrorKind::NoSignChange,
                         "shooting map has constant sign on [" + format_double(a_lo) + ", " +
                             format_double(a_hi) + "]");

  double x0 = lo.center, f0 = lo.slope, x1 = hi.center, f1 = hi.slope;
  double best = std::abs(f0) < std::abs(f1) ? x0 : x1;
  double best_f = std::min(std::abs(f0), std::abs(f1));
  const double seed_width = 1e-3 * (x1 - x0);
  int side = 0;
  bool bisect_next = false;
  while (it < options.max_iterations) {
    const double width = x1 - x0;
    double x;
    if (width > seed_width || bisect_next) {
      x = 0.5 * (x0 + x1);
      bisect_next = false;
    } else {
      x = (x0 * f1 - x1 * f0) / (f1 - f0);
      if (!(x > x0 && x < x1)) x = 0.5 * (x0 + x1);
    }
    ShootingSample s = eval(x);
    ++it;
    if (s.truncated) {
      // Large-amplitude side: discard the end with larger |a|.
      if (std::abs(x1) >= std::abs(x0)) {
        x1 = x;
      } else {
        x0 = x;
      }
      bisect_next = true;
      continue;
    }
    const double f = s.slope;
    if (std::abs(f) < best_f) {
      best_f = std::abs(f);
      best = x;
    }
    if (std::abs(f) <= tol) return finish(problem, x, it, options);
    const double old_width = x1 - x0;
    // Illinois: when the same end is retained twice, halve its residual.
    if (opposite(f, f0)) {
      x1 = x;
      f1 = f;
      if (side == -1) f0 *= 0.5;
      side = -1;
    } else {
      x0 = x;
      f0 = f;
      if (side == 1) f1 *= 0.5;
      side = 1;
    }
    if (x1 - x0 > 0.5 * old_width) bisect_next = true;
    if (x1 - x0 <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x0))) break;
  }
  ShootingResult res = finish(problem, best, it, options);
  if (!res.converged)
    throw NumericalError(ErrorKind::NonConvergence,
                         "shooting did not reach |u'(R)| <= " + format_double(tol) + " (best " +
                             format_double(best_f) + " at a=" + format_double(best) + ")");
  return res;
}

std::vector<ShootingResult> scan_solutions(const RadialProblem& problem, double a_min, double a_max,
                                           int samples, const ShootingOptions& options) {
  if (samples < 2) throw std::invalid_argument("scan needs at least two samples");
  if (a_min > a_max) std::swap(a_min, a_max);
  std::vector<double> grid(samples);
  for (int i = 0; i < samples; ++i)
    grid[i] = i == samples - 1 ? a_max : a_min + (a_max - a_min) * i / (samples - 1.0);
  const auto map = kernels::shooting_map_parallel(problem, grid, options.integration);

  std::vector<ShootingResult> found;
  auto add = [&](ShootingResult r) {
    for (const auto& f : found)
      if (std::abs(f.center_value - r.center_value) < 1e-8) return;
    found.push_back(std::move(r));
  };
  for (int i = 0; i < samples; ++i) {
    if (!map[i].truncated && map[i].slope == 0.0) add(finish(problem, grid[i], 1, options));
  }
  for (int i = 0; i + 1 < samples; ++i) {
    const auto& l = map[i];
    const auto& r = map[i + 1];
    if (l.truncated && r.truncated) continue;
    if (!l.truncated && !r.truncated && !opposite(l.slope, r.slope)) continue;
    if (l.slope == 0.0 || r.slope == 0.0) continue;
    try {
      add(solve_neumann(problem, grid[i], grid[i + 1], options));
    } catch (const NumericalError& e) {
      if (e.kind() != ErrorKind::NoSignChange && e.kind() != ErrorKind::NonConvergence) throw;
    }
  }
  std::sort(found.begin(), found.end(),
            [](const auto& x, const auto& y) { return x.center_value < y.center_value; });
  return found;
}

Profile entire_profile(int dimension, double exponent, double center_value, double r_max,
                       const IntegrationSettings& settings) {
  return integrate(RadialProblem(dimension, r_max, exponent, 1.0), center_value, r_max, settings);
}

std::vector<double> exceptional_radii_dim6(int count, double r_max, const IntegrationSettings& settings) {
  if (count < 1) throw std::invalid_argument("count must be at least 1");
  // The tail oscillates about 1 with period 2 pi (linearization -v'' = v).
  // Without a cap tied to that period the steps grow to r_max/50 and the
  // accumulated phase error dominates the later extrema.
  IntegrationSettings s = settings;
  if (s.max_step <= 0.0) s.max_step = 2.0 * std::numbers::pi / 64.0;
  const auto prof = entire_profile(6, 3.0, 0.5, r_max, s);
  const auto ext = prof.extrema();
  if (static_cast<int>(ext.size()) < count)
    throw NumericalError(ErrorKind::InsufficientRange,
                         "only " + std::to_string(ext.size()) + " extrema before r_max=" +
                             format_double(r_max));
  return {ext.begin(), ext.begin() + count};
}

std::vector<double> radial_neumann_eigenvalues(int dimension, double radius, int count,
                                               const EigenOptions& options) {
  if (dimension < 1) throw std::invalid_argument("dimension must be positive");
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  if (count < 1) throw std::invalid_argument("count must be at least 1");
  std::vector<double> eig{1.0};
  if (count == 1) return eig;

  const double step = options.scan_step > 0.0 ? options.scan_step : 0.1 / (radius * radius);
  auto slope = [&](double nu) {
    return kernels::helmholtz_boundary_slope(dimension, radius, nu, options.tolerance);
  };
  // First window covers the first few Bessel-type zeros; doubled until enough roots.
  double lo = step;
  double hi = 50.0 / (radius * radius);
  double f_prev = slope(lo);
  while (static_cast<int>(eig.size()) < count) {
    const int n = static_cast<int>(std::ceil((hi - lo) / step));
    std::vector<double> nus(n);
    for (int i = 0; i < n; ++i) nus[i] = lo + step * (i + 1);
    const auto vals = options.parallel ? kernels::helmholtz_slopes_parallel(dimension, radius, nus, options.tolerance)
                                       : kernels::helmholtz_slopes_serial(dimension, radius, nus, options.tolerance);
    double x_prev = lo;
    for (int i = 0; i < n && static_cast<int>(eig.size()) < count; ++i) {
      if (vals[i] == 0.0) {
        eig.push_back(1.0 + nus[i]);
      } else if (opposite(f_prev, vals[i])) {
        eig.push_back(1.0 + refine_root(slope, x_prev, nus[i], f_prev, vals[i], 1e-14));
      }
      if (vals[i] != 0.0) f_prev = vals[i];
      x_prev = nus[i];
    }
    lo = nus.back();
    hi = 2.0 * hi;
  }
  return eig;
}

NondegReport nondegeneracy_check(const ShootingResult& base, double threshold,
                                 const IntegrationSettings& settings) {
  if (!base.converged) throw std::invalid_argument("nondegeneracy check needs a converged solution");
  const double R = base.profile.problem().radius();
  Profile v = integrate_linearized(base.profile, std::min(R, base.profile.r_max()), settings);
  double peak = 0.0;
  for (double d : v.slopes()) peak = std::max(peak, std::abs(d));
  const double end = v.slopes().back();
  const double margin = peak > 0.0 ? std::abs(end) / peak : 0.0;
  return {std::move(v), end, margin < threshold, margin};
}

Profile scaling_transport(const Profile& profile, double mu_new) {
  if (!(mu_new > 0.0)) throw std::invalid_argument("mu_new must be positive");
  const RadialProblem& old = profile.problem();
  const double ratio = mu_new / old.potential();
  const double amp = std::pow(ratio, 1.0 / (old.exponent() - 2.0));
  const double s = std::sqrt(ratio);
  const RadialProblem next(old.dimension(), old.radius() / s, old.exponent(), mu_new);
  std::vector<double> r, u, du, ddu;
  r.reserve(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    r.push_back(profile.grid()[i] / s);
    u.push_back(amp * profile.values()[i]);
    du.push_back(amp * s * profile.slopes()[i]);
    ddu.push_back(amp * s * s * profile.curvatures()[i]);
  }
  Profile out(next, std::move(r), std::move(u), std::move(du), std::move(ddu));
  std::vector<double> ext;
  for (double e : profile.extrema()) ext.push_back(e / s);
  out.set_extrema(std::move(ext));
  out.mark_truncated(profile.truncated());
  return out;
}

Metadata shooting_metadata(const ShootingResult& result) {
  const auto& p = result.profile.problem();
  Metadata m;
  m.set("N", p.dimension());
  m.set("R", p.radius());
  m.set("p", p.exponent());
  m.set("mu", p.potential());
  m.set("a", result.center_value);
  m.set("residual", result.boundary_slope);
  m.set("converged", result.converged);
  m.set("iterations", result.iterations);
  return m;
}

void write_shooting_result(std::ostream& csv, std::ostream& sidecar, const ShootingResult& result) {
  write_profile_csv(csv, result.profile);
  write_metadata(sidecar, shooting_metadata(result));
}

} // namespace linni
