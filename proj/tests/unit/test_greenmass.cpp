#include "doctest.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "linni/bvp.hpp"
#include "linni/error.hpp"
#include "linni/greenmass.hpp"

using namespace linni;

namespace {
constexpr double pi = std::numbers::pi;
// Root of e^{2R} = (R+1)/(R-1), mpmath at 30 digits.
constexpr double kRStar = 1.19967864025773383;
// (A - 1)/(4 pi) at mu = 1, mpmath.
constexpr double kMass08 = 0.274365193194321;
constexpr double kMass12 = -8.37444035850347e-5;
constexpr double kMass3 = -0.0787923524540313;
constexpr double kMass05 = 1.61525402144589;
} // namespace

TEST_CASE("closed-form mass agrees with frozen values") {
  CHECK(mass_closed_form_dim3(0.8, 1.0) == doctest::Approx(kMass08).epsilon(1e-13));
  CHECK(mass_closed_form_dim3(1.2, 1.0) == doctest::Approx(kMass12).epsilon(1e-11));
  CHECK(mass_closed_form_dim3(3.0, 1.0) == doctest::Approx(kMass3).epsilon(1e-13));
  CHECK(mass_closed_form_dim3(0.5, 1.0) == doctest::Approx(kMass05).epsilon(1e-13));
  CHECK(mass_closed_form_dim3(40.0, 1.0) == doctest::Approx(-1.0 / (4 * pi)).epsilon(1e-12));
}

TEST_CASE("numerical Green function in dimension 3 matches the closed form") {
  for (double R : {0.8, 1.2, 3.0}) {
    const auto g = green_radial(3, R, 1.0);
    CHECK(g.slopes.back() == 0.0);
    for (double f : {0.01, 0.05, 0.2, 0.5, 0.9, 1.0}) {
      const double r = f * R;
      CHECK(g.value(r) == doctest::Approx(green_closed_form_dim3(R, 1.0, r)).epsilon(1e-8));
    }
    for (double v : g.values) CHECK(v > 0.0);
    const double c = g.singular_coefficient();
    CHECK(g.grid[0] * g.values[0] == doctest::Approx(c).epsilon(1e-6));
    CHECK(g.grid[1] * g.values[1] == doctest::Approx(c).epsilon(1e-6));
    const auto m = mass_at_origin(g);
    MESSAGE("R=", R, " H=", m.H, " err=", m.extrapolation_error);
    CHECK(std::abs(m.H - mass_closed_form_dim3(R, 1.0)) < 1e-7 * std::max(1.0, std::abs(m.H)));
  }
}

TEST_CASE("tabulated constant potential reproduces the constant path") {
  TabulatedPotential t;
  for (int i = 0; i <= 20; ++i) {
    t.r.push_back(2.0 * i / 20.0);
    t.h.push_back(1.7);
    t.dh.push_back(0.0);
  }
  const auto a = green_radial(3, 2.0, 1.7);
  const auto b = green_radial(3, 2.0, t);
  REQUIRE(a.grid.size() == b.grid.size());
  for (std::size_t i = 0; i < a.grid.size(); ++i) CHECK(std::abs(a.values[i] - b.values[i]) <= 1e-10 * std::abs(a.values[i]));
}

TEST_CASE("mass sign law around R*") {
  CHECK(mass_closed_form_dim3(kRStar - 0.1, 1.0) > 0.0);
  CHECK(mass_closed_form_dim3(kRStar + 0.1, 1.0) < 0.0);
  CHECK(mass_at_origin(green_radial(3, kRStar - 0.1, 1.0)).H > 0.0);
  CHECK(mass_at_origin(green_radial(3, kRStar + 0.1, 1.0)).H < 0.0);
}

TEST_CASE("exceptional radius in dimension 3") {
  CHECK(std::abs(exceptional_radius_dim3() - kRStar) < 1e-12);
  CHECK(exceptional_radius_dim3(4.0) == doctest::Approx(kRStar / 2).epsilon(1e-12));
  CHECK(std::abs(exceptional_radius_dim3(1.0, MassMethod::Numerical) - kRStar) < 1e-7);
}

TEST_CASE("normalization stability under a larger inner radius") {
  const auto fine = mass_at_origin(green_radial(3, 0.9, 1.0));
  const auto coarse = mass_at_origin(green_radial(3, 0.9, 1.0, {.r_min_fraction = 2e-6}));
  CHECK(std::abs(fine.H - coarse.H) <= 10.0 * std::max(fine.extrapolation_error, 1e-12));
}

TEST_CASE("dimension 4 logarithmic term and mass") {
  // G = (m/(4 pi^2 r)) K_1(m r) + A I_1(m r)/r, A = m K_2(mR)/(4 pi^2 I_2(mR)).
  const double mu = 2.0, m = std::sqrt(mu), R = 1.5;
  const auto g = green_radial(4, R, mu);
  const auto mass = mass_at_origin(g);
  const double euler = 0.57721566490153286;
  const double expect = m * m / (8 * pi * pi) * (std::log(m / 2) + euler - 0.5) +
                        m * m * std::cyl_bessel_k(2.0, m * R) / (8 * pi * pi * std::cyl_bessel_i(2.0, m * R));
  MESSAGE("alpha4 ", mass.log_coefficient, " H ", mass.H, " expect ", expect, " err ", mass.extrapolation_error);
  CHECK(mass.log_coefficient == doctest::Approx(-mu / (8 * pi * pi)).epsilon(1e-5));
  CHECK(std::abs(mass.H - expect) < 1e-4);
  const double r = 0.3;
  const double closed = m / (4 * pi * pi * r) * std::cyl_bessel_k(1.0, m * r) +
                        m * std::cyl_bessel_k(2.0, m * R) / (4 * pi * pi * std::cyl_bessel_i(2.0, m * R)) *
                            std::cyl_bessel_i(1.0, m * r) / r;
  CHECK(g.value(r) == doctest::Approx(closed).epsilon(1e-8));
}

TEST_CASE("unsupported dimensions and the kernel guard") {
  CHECK_THROWS_AS(mass_at_origin(green_radial(5, 1.0, 1.0)), NumericalError);
  // -Delta - nu has a radial Neumann kernel exactly at nu = x1^2 on the unit ball.
  const double nu = radial_neumann_eigenvalues(3, 1.0, 2)[1] - 1.0;
  try {
    green_radial(3, 1.0, -nu);
    FAIL("expected a kernel error");
  } catch (const NumericalError& e) {
    CHECK(e.kind() == ErrorKind::Kernel);
  }
  CHECK_NOTHROW(green_radial(3, 1.0, -nu + 0.5));
  CHECK_NOTHROW(green_radial(3, 1.0, -nu - 0.5));
}

TEST_CASE("Green CSV round trip") {
  const auto g = green_radial(3, 1.0, 1.0);
  std::stringstream ss;
  write_green_csv(ss, g);
  const auto [r, v] = read_green_csv(ss);
  REQUIRE(r.size() == g.grid.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    CHECK(r[i] == g.grid[i]);
    CHECK(v[i] == g.values[i]);
  }
}
