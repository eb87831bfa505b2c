#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>

#include <boost/math/tools/roots.hpp>

#include "linni/error.hpp"

namespace linni {

/// Refines a bracketed root of f on [a, b] (f(a), f(b) of opposite sign) with
/// TOMS 748 until the bracket is narrower than rel_tol * max(1, |x|).
template <class F>
double refine_root(F&& f, double a, double b, double fa, double fb, double rel_tol,
                   std::uintmax_t max_iter = 200) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw NumericalError(ErrorKind::NoSignChange, "root refinement: no sign change in bracket");
  auto tol = [rel_tol](double lo, double hi) {
    return std::abs(hi - lo) <= rel_tol * std::max(1.0, std::min(std::abs(lo), std::abs(hi)));
  };
  std::uintmax_t iters = max_iter;
  const auto [lo, hi] = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, iters);
  return 0.5 * (lo + hi);
}

} // namespace linni
