#include "doctest.h"

#include <cmath>
#include <numbers>

#include "linni/bvp.hpp"
#include "linni/diagnostics.hpp"
#include "linni/error.hpp"
#include "linni/radial_ode.hpp"

using namespace linni;

namespace {
constexpr double pi = std::numbers::pi;

Profile constant_profile(int n, double R, double p, double value, double mu = 1.0) {
  std::vector<double> grid, values, zeros;
  for (int i = 0; i <= 40; ++i) {
    grid.push_back(R * i / 40.0);
    values.push_back(value);
    zeros.push_back(0.0);
  }
  return Profile(RadialProblem(n, R, p, mu), grid, values, zeros, zeros);
}

// Bump (1 - r^2)^3 on [0, 1] scaled by u -> s^{2/(p-2)} u(s r).
Profile bump(int n, double p, double s) {
  std::vector<double> grid, values, slopes, curv;
  const double amp = std::pow(s, 2.0 / (p - 2.0));
  for (int i = 0; i <= 400; ++i) {
    const double x = i / 400.0;
    const double w = 1.0 - x * x;
    grid.push_back(x / s);
    values.push_back(amp * w * w * w);
    slopes.push_back(amp * s * (-6.0 * x * w * w));
    curv.push_back(amp * s * s * (-6.0 * w * w + 24.0 * x * x * w));
  }
  return Profile(RadialProblem(n, 1.0 / s, p), grid, values, slopes, curv);
}
} // namespace

TEST_CASE("Pohozaev identity on the constant solution") {
  const auto u = constant_profile(4, 1.0, 3.0, 1.0);
  const auto rep = pohozaev_residual(u, 1.0);
  CHECK(rep.rhs_boundary == doctest::Approx(pi * pi / 3.0).epsilon(1e-14));
  CHECK(rep.lhs_exact == doctest::Approx(pi * pi / 3.0).epsilon(1e-14));
  CHECK(std::abs(rep.residual_exact) < 1e-12);
  CHECK(std::abs(rep.residual_cited) > 0.1);

  for (int n = 3; n <= 7; ++n) {
    const double crit = 2.0 * n / (n - 2.0);
    const auto c = constant_profile(n, 2.0, crit, 1.0);
    const auto r = pohozaev_residual(c, 1.5);
    CHECK(std::abs(r.residual_exact) < 1e-12 * std::abs(r.rhs_boundary));
    CHECK(r.lhs_cited_coefficient == doctest::Approx(r.lhs_exact).epsilon(1e-15));
  }
}

TEST_CASE("Pohozaev identity on solver output") {
  for (int n = 3; n <= 7; ++n) {
    const double crit = 2.0 * n / (n - 2.0);
    for (double p : {crit - 0.05, crit + 0.05}) {
      const RadialProblem prob(n, 5.0, p);
      const auto sols = scan_solutions(prob, 0.05, 3.0, 60);
      REQUIRE(!sols.empty());
      for (const auto& s : sols) {
        CAPTURE(n);
        CAPTURE(p);
        CAPTURE(s.center_value);
        REQUIRE(s.converged);
        const auto rep = pohozaev_residual(s.profile, 5.0);
        CHECK(rep.relative_residual() < 1e-7);
        CHECK(pohozaev_residual(s.profile, 2.0).relative_residual() < 1e-7);
      }
    }
  }
}

TEST_CASE("cited coefficient discrepancy is algebraic and quadratic") {
  const auto prof = integrate(RadialProblem(4, 3.0, 4.05), 1.7, 3.0);
  const auto rep = pohozaev_residual(prof, 3.0);
  const double n = 4.0, p = 4.05, crit = 4.0;
  const double diff = ((n - 2) * (n - 2) * (p - crit) / (4 * n) - (n - 2) * (p - crit) / (2 * p)) * rep.integral_up;
  CHECK((rep.lhs_cited_coefficient - rep.lhs_exact) == doctest::Approx(diff).epsilon(1e-12));
  CHECK(diff == doctest::Approx((n - 2) * (n - 2) * (p - crit) * (p - crit) / (4 * n * p) * rep.integral_up)
                    .epsilon(1e-10));

  std::vector<double> xs, ys;
  for (double e : {0.1, 0.05, 0.025, 0.0125}) {
    const auto r = pohozaev_residual(constant_profile(4, 1.0, 4.0 + e, 1.0), 1.0);
    xs.push_back(std::log(e));
    ys.push_back(std::log(std::abs(r.residual_cited)));
  }
  const double slope = (ys.back() - ys.front()) / (xs.back() - xs.front());
  CHECK(slope > 1.9);
}

TEST_CASE("residual improves with integrator tolerance") {
  const RadialProblem prob(5, 4.0, 3.0);
  const auto coarse = integrate(prob, 2.0, 4.0, {.tolerance = 1e-8});
  const auto fine = integrate(prob, 2.0, 4.0, {.tolerance = 1e-10});
  const double rc = pohozaev_residual(coarse, 4.0).relative_residual();
  const double rf = pohozaev_residual(fine, 4.0).relative_residual();
  MESSAGE("Pohozaev residual at 1e-8: " << rc << ", at 1e-10: " << rf);
  CHECK(rf < rc);
  CHECK(rf < 1e-8);
  CHECK_THROWS_AS(pohozaev_residual(fine, 5.0), std::out_of_range);
}

TEST_CASE("potential Pohozaev identity in dimension 6") {
  const auto zero = constant_profile(6, 1.0, 3.0, 0.0);
  const auto z = pohozaev_potential_residual(zero, 1.0, 1.0);
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs_boundary == 0.0);

  const auto sols = scan_solutions(RadialProblem(6, 5.0, 3.0), 0.05, 3.0, 60);
  REQUIRE(!sols.empty());
  for (const auto& s : sols) {
    const auto rep = pohozaev_potential_residual(s.profile, 1.0, 5.0);
    CHECK(rep.relative_residual() < 1e-7);
  }

  // v = u - u0 solves -Delta v + (1 - 2 u0) v = v^2 whenever u and u0 solve the p = 3 equation.
  const IntegrationSettings tight{.tolerance = 1e-12};
  const auto u0 = entire_profile(6, 3.0, 0.5, 6.0, tight);
  const auto u = entire_profile(6, 3.0, 0.55, 6.0, tight);
  TabulatedPotential h;
  std::vector<double> vv, dv, ddv;
  for (double r : u.grid()) {
    h.r.push_back(r);
    h.h.push_back(1.0 - 2.0 * u0.value(r));
    h.dh.push_back(-2.0 * u0.slope(r));
    vv.push_back(u.value(r) - u0.value(r));
    dv.push_back(u.slope(r) - u0.slope(r));
    ddv.push_back(u.curvature(r) - u0.curvature(r));
  }
  const Profile v(u.problem(), {u.grid().begin(), u.grid().end()}, vv, dv, ddv);
  const auto rep = pohozaev_potential_residual(v, h, 6.0);
  MESSAGE("potential Pohozaev residual for u - u0: " << rep.relative_residual());
  CHECK(rep.relative_residual() < 1e-5);

  CHECK_THROWS_AS(pohozaev_potential_residual(constant_profile(5, 1.0, 3.0, 1.0), 1.0, 1.0), NumericalError);
}

TEST_CASE("Lebesgue norms and the alpha exponent") {
  for (int n = 3; n <= 8; ++n) {
    const double crit = 2.0 * n / (n - 2.0);
    CHECK(alpha_exponent(n, crit) == doctest::Approx(crit).epsilon(1e-15));
    CHECK(alpha_exponent(n, crit + 1.0) > crit);
    CHECK(alpha_exponent(n, crit - 0.5) == crit);
  }
  const auto one = constant_profile(4, 2.0, 3.0, 1.0);
  const double vol = ball_volume(4) * std::pow(2.0, 4);
  for (double a : {1.0, 2.0, 4.0, 7.5}) CHECK(lp_norm(one, a) == doctest::Approx(std::pow(vol, 1.0 / a)).epsilon(1e-13));

  for (int n : {3, 4, 6}) {
    const double p = 2.0 * n / (n - 2.0) + 0.7;
    const double alpha = 0.5 * n * (p - 2.0);
    const double base = lp_norm(bump(n, p, 1.0), alpha);
    for (double s : {0.5, 2.0, 7.0}) {
      CHECK(lp_norm(bump(n, p, s), alpha) == doctest::Approx(base).epsilon(1e-10));
      CHECK(lp_norm(bump(n, p, s), alpha + 1.0) != doctest::Approx(lp_norm(bump(n, p, 1.0), alpha + 1.0)));
    }
  }
  CHECK_THROWS(lp_norm(one, 0.5));
}

TEST_CASE("monotonicity audit") {
  CHECK(monotonicity_audit(constant_profile(4, 1.0, 3.0, 1.0)) == 0.0);
  const auto prof = integrate(RadialProblem(4, 6.0, 3.0), 2.0, 6.0, {.tolerance = 1e-10});
  CHECK(monotonicity_audit(prof) <= 1e-8);

  std::vector<double> grid(prof.grid().begin(), prof.grid().end());
  std::vector<double> u(prof.values().begin(), prof.values().end());
  std::vector<double> du(prof.slopes().begin(), prof.slopes().end());
  std::vector<double> ddu(prof.curvatures().begin(), prof.curvatures().end());
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (grid[i] > 1.0 && grid[i] < 3.0) {
      du[i] = -du[i];
      ddu[i] = -ddu[i];
    }
  const Profile broken(prof.problem(), grid, u, du, ddu);
  const double v = monotonicity_audit(broken);
  MESSAGE("corrupted profile violation: " << v);
  CHECK(v > 1e-3);
}

TEST_CASE("report serialization") {
  const auto rep = pohozaev_residual(constant_profile(4, 1.0, 3.0, 1.0), 1.0);
  const auto m = pohozaev_metadata(rep);
  CHECK(m.number("rhs_boundary") == rep.rhs_boundary);
  CHECK(m.number("residual_cited") == rep.residual_cited);
}
