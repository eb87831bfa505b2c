#pragma once

// Embedded Dormand-Prince 5(4) stepper with step-size control.  Accepted
// steps are reported to an observer together with the derivative at the step
// end (FSAL), which is what the quintic Hermite dense output in Profile needs.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "linni/error.hpp"

namespace linni::ode {

template <std::size_t Dim>
using State = std::array<double, Dim>;

struct Options {
  double tolerance = 1e-10;
  double max_step = std::numeric_limits<double>::infinity();
  /// Zero selects a step from the derivative magnitude.
  double initial_step = 0.0;
  /// Cap on |y[0]|; exceeding it stops the integration as truncated.
  double overflow_cap = 1e12;
  std::size_t max_steps = 5'000'000;
};

enum class Status { Completed, Truncated };

template <std::size_t Dim>
struct Outcome {
  Status status = Status::Completed;
  double t = 0.0;
  State<Dim> y{};
  State<Dim> dy{};
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

namespace detail {

inline constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                        a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                        a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
inline constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                        b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// b - b* (fifth minus fourth order weights)
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                        e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

template <std::size_t Dim>
bool finite(const State<Dim>& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

} // namespace detail

/// Integrates y' = rhs(t, y) from t0 to t1 (either direction).  The observer
/// is invoked as observe(t, y, dy) after every accepted step.
template <std::size_t Dim, class Rhs, class Observer>
Outcome<Dim> integrate(Rhs&& rhs, double t0, const State<Dim>& y0, double t1,
                       const Options& opt, Observer&& observe) {
  using namespace detail;
  Outcome<Dim> out;
  out.t = t0;
  out.y = y0;
  out.dy = rhs(t0, y0);
  if (!finite(out.y) || !finite(out.dy))
    throw NumericalError(ErrorKind::NonFinite, "non-finite initial state at t=" + std::to_string(t0));
  if (t1 == t0) return out;

  const double dir = t1 > t0 ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);
  const double hmax = std::min(opt.max_step, span);
  double h = opt.initial_step;
  if (h <= 0.0) {
    double dnorm = 0.0, ynorm = 0.0;
    for (std::size_t i = 0; i < Dim; ++i) {
      const double sc = std::max(1.0, std::abs(out.y[i]));
      dnorm = std::max(dnorm, std::abs(out.dy[i]) / sc);
      ynorm = std::max(ynorm, std::abs(out.y[i]) / sc);
    }
    h = dnorm > 1e-12 ? 0.01 * std::max(ynorm, 1e-3) / dnorm : 1e-3 * span;
    h = std::max(h, 1e-10 * span);
  }
  h = std::min(h, hmax);

  double t = t0;
  State<Dim> y = out.y, k1 = out.dy, k2, k3, k4, k5, k6, k7, ytmp, ynew;
  const double tiny = 16.0 * std::numeric_limits<double>::epsilon();

  while (dir * (t1 - t) > 0.0) {
    if (out.accepted + out.rejected >= opt.max_steps)
      throw NumericalError(ErrorKind::NonConvergence, "integrator exceeded its step budget");
    bool last = false;
    if (h >= std::abs(t1 - t) * (1.0 - tiny)) {
      h = std::abs(t1 - t);
      last = true;
    }
    const double hs = dir * h;
    for (std::size_t i = 0; i < Dim; ++i) ytmp[i] = y[i] + hs * a21 * k1[i];
    k2 = rhs(t + c2 * hs, ytmp);
    for (std::size_t i = 0; i < Dim; ++i) ytmp[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
    k3 = rhs(t + c3 * hs, ytmp);
    for (std::size_t i = 0; i < Dim; ++i)
      ytmp[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = rhs(t + c4 * hs, ytmp);
    for (std::size_t i = 0; i < Dim; ++i)
      ytmp[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = rhs(t + c5 * hs, ytmp);
    for (std::size_t i = 0; i < Dim; ++i)
      ytmp[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    const double tnew = last ? t1 : t + hs;
    k6 = rhs(tnew, ytmp);
    for (std::size_t i = 0; i < Dim; ++i)
      ynew[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    k7 = rhs(tnew, ynew);

    double err = 0.0;
    for (std::size_t i = 0; i < Dim; ++i) {
      const double e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = opt.tolerance * std::max({1.0, std::abs(y[i]), std::abs(ynew[i])});
      err = std::max(err, std::abs(e) / sc);
    }
    if (!std::isfinite(err) || !finite(ynew)) {
      if (h <= tiny * std::max(1.0, std::abs(t)))
        throw NumericalError(ErrorKind::NonFinite, "non-finite state near t=" + std::to_string(t));
      h *= 0.25;
      ++out.rejected;
      continue;
    }
    if (err <= 1.0) {
      t = tnew;
      y = ynew;
      k1 = k7;
      ++out.accepted;
      observe(t, y, k1);
      if (std::abs(y[0]) > opt.overflow_cap) {
        out.status = Status::Truncated;
        break;
      }
      const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h = std::min(h * fac, hmax);
    } else {
      ++out.rejected;
      h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
      if (h <= tiny * std::max(1.0, std::abs(t)))
        throw NumericalError(ErrorKind::NonConvergence,
                             "step size underflow at t=" + std::to_string(t));
    }
  }
  out.t = t;
  out.y = y;
  out.dy = k1;
  return out;
}

/// Convenience overload without an observer.
template <std::size_t Dim, class Rhs>
Outcome<Dim> integrate(Rhs&& rhs, double t0, const State<Dim>& y0, double t1, const Options& opt) {
  return integrate<Dim>(std::forward<Rhs>(rhs), t0, y0, t1, opt,
                        [](double, const State<Dim>&, const State<Dim>&) {});
}

} // namespace linni::ode
