#include "linni/greenmass.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "linni/error.hpp"
#include "linni/hermite.hpp"
#include "linni/ode.hpp"
#include "linni/problem.hpp"
#include "linni/roots.hpp"

namespace linni {

namespace {

constexpr double pi = std::numbers::pi;

std::size_t locate(const std::vector<double>& grid, double x) {
  const auto it = std::upper_bound(grid.begin(), grid.end(), x);
  const std::size_t i = it == grid.begin() ? 0 : static_cast<std::size_t>(it - grid.begin()) - 1;
  return std::min(i, grid.size() - 2);
}

struct Cubic {
  double v, d;
};

Cubic hermite3(double h, double t, double y0, double d0, double y1, double d1) {
  const double t2 = t * t, t3 = t2 * t;
  // Written around y0 so a constant table is reproduced bit for bit.
  const double v = y0 + (3 * t2 - 2 * t3) * (y1 - y0) + (t3 - 2 * t2 + t) * h * d0 + (t3 - t2) * h * d1;
  const double d = (6 * t - 6 * t2) * (y1 - y0) / h + (3 * t2 - 4 * t + 1) * d0 + (3 * t2 - 2 * t) * d1;
  return {v, d};
}

Cubic tabulated_eval(const TabulatedPotential& p, double x) {
  if (p.r.size() < 2 || p.h.size() != p.r.size() || p.dh.size() != p.r.size())
    throw std::invalid_argument("tabulated potential needs matching r, h, dh arrays of length >= 2");
  if (x < p.r.front() || x > p.r.back() * (1.0 + 1e-12))
    throw std::out_of_range("radius outside the tabulated potential");
  const std::size_t i = locate(p.r, x);
  const double h = p.r[i + 1] - p.r[i];
  return hermite3(h, (x - p.r[i]) / h, p.h[i], p.dh[i], p.h[i + 1], p.dh[i + 1]);
}

// Potential scale used to decide whether h0(0) vanishes.
double potential_scale(const Potential& potential) {
  if (const auto* c = std::get_if<double>(&potential)) return std::abs(*c);
  const auto& t = std::get<TabulatedPotential>(potential);
  double m = 0.0;
  for (double v : t.h) m = std::max(m, std::abs(v));
  return m;
}

bool vanishes_at_origin(const Potential& potential) {
  const double scale = potential_scale(potential);
  return std::abs(potential_value(potential, 0.0)) <= 1e-12 * std::max(scale, 1.0);
}

double potential_curvature_at_origin(const Potential& potential) {
  if (std::holds_alternative<double>(potential)) return 0.0;
  const auto& t = std::get<TabulatedPotential>(potential);
  const double h = t.r[1] - t.r[0];
  // Second derivative of the first Hermite cell at its left end.
  return (6.0 * (t.h[1] - t.h[0]) / h - 4.0 * t.dh[0] - 2.0 * t.dh[1]) / h;
}

// Forward IVP phi(0) = 1, phi'(0) = 0 for -phi'' - (N-1)/r phi' + h phi = 0.
// Returns |phi'(R)| / max |phi'|.
double kernel_margin(int n, double radius, const Potential& potential, double tolerance) {
  const double h0 = potential_value(potential, 0.0);
  const double seam = std::min(1e-4 * std::max(1.0, radius), 1e-3 / std::sqrt(std::max(std::abs(h0), 1.0)));
  const double c2 = h0 / (2.0 * n);
  const ode::State<2> y0{1.0 + c2 * seam * seam, 2.0 * c2 * seam};
  ode::Options opt;
  opt.tolerance = tolerance;
  opt.max_step = radius / 50.0;
  opt.overflow_cap = std::numeric_limits<double>::infinity();
  double peak = std::abs(y0[1]);
  auto rhs = [&](double r, const ode::State<2>& y) -> ode::State<2> {
    return {y[1], -(n - 1.0) / r * y[1] + potential_value(potential, r) * y[0]};
  };
  const auto out = ode::integrate<2>(rhs, seam, y0, radius, opt,
                                     [&](double, const ode::State<2>& y, const ode::State<2>&) {
                                       peak = std::max(peak, std::abs(y[1]));
                                     });
  return peak > 0.0 ? std::abs(out.y[1]) / peak : 0.0;
}

// Least squares coefficients for samples (x_i, y_i) against basis functions.
template <class Basis>
Eigen::VectorXd fit(const std::vector<double>& x, const std::vector<double>& y, int terms, Basis basis) {
  Eigen::MatrixXd A(static_cast<Eigen::Index>(x.size()), terms);
  Eigen::VectorXd b(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (int j = 0; j < terms; ++j) A(static_cast<Eigen::Index>(i), j) = basis(j, x[i]);
    b(static_cast<Eigen::Index>(i)) = y[i];
  }
  return A.colPivHouseholderQr().solve(b);
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = lo * std::pow(hi / lo, i / (count - 1.0));
  return out;
}

} // namespace

double TabulatedPotential::value(double x) const { return tabulated_eval(*this, x).v; }
double TabulatedPotential::slope(double x) const { return tabulated_eval(*this, x).d; }

double potential_value(const Potential& potential, double r) {
  if (const auto* c = std::get_if<double>(&potential)) return *c;
  return std::get<TabulatedPotential>(potential).value(r);
}

double GreenProfile::singular_coefficient() const {
  return 1.0 / ((dimension - 2.0) * sphere_area(dimension - 1));
}

double GreenProfile::value(double r) const {
  if (r < grid.front() || r > grid.back()) throw std::out_of_range("radius outside the Green profile");
  const std::size_t i = locate(grid, r);
  const double h = grid[i + 1] - grid[i];
  return detail::hermite5(h, (r - grid[i]) / h, values[i], slopes[i], curvatures[i], values[i + 1],
                          slopes[i + 1], curvatures[i + 1])
      .v;
}

double GreenProfile::slope(double r) const {
  if (r < grid.front() || r > grid.back()) throw std::out_of_range("radius outside the Green profile");
  const std::size_t i = locate(grid, r);
  const double h = grid[i + 1] - grid[i];
  return detail::hermite5(h, (r - grid[i]) / h, values[i], slopes[i], curvatures[i], values[i + 1],
                          slopes[i + 1], curvatures[i + 1])
      .d1;
}

GreenProfile green_radial(int dimension, double radius, const Potential& potential,
                          const GreenOptions& options) {
  if (dimension < 3) throw std::invalid_argument("dimension must be at least 3");
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  if (const auto* t = std::get_if<TabulatedPotential>(&potential)) {
    if (t->r.empty() || t->r.front() != 0.0 || t->r.back() < radius * (1.0 - 1e-12))
      throw std::invalid_argument("tabulated potential must cover [0, R]");
  }
  const int n = dimension;
  const double margin = kernel_margin(n, radius, potential, options.tolerance);
  if (margin < options.kernel_threshold)
    throw NumericalError(ErrorKind::Kernel, "-Delta + h0 has a radial Neumann kernel on B_R (margin " +
                                                format_double(margin) + ")");

  const double r_min = options.r_min_fraction * radius;
  auto rhs = [&](double r, const ode::State<2>& y) -> ode::State<2> {
    return {y[1], -(n - 1.0) / r * y[1] + potential_value(potential, r) * y[0]};
  };
  std::vector<double> r{radius}, g{1.0}, dg{0.0}, ddg{potential_value(potential, radius)};
  ode::Options opt;
  opt.tolerance = options.tolerance;
  opt.max_step = radius / 50.0;
  opt.overflow_cap = std::numeric_limits<double>::infinity();
  ode::integrate<2>(rhs, radius, ode::State<2>{1.0, 0.0}, r_min, opt,
                    [&](double t, const ode::State<2>& y, const ode::State<2>& dy) {
                      r.push_back(t);
                      g.push_back(y[0]);
                      dg.push_back(y[1]);
                      ddg.push_back(dy[1]);
                    });
  std::reverse(r.begin(), r.end());
  std::reverse(g.begin(), g.end());
  std::reverse(dg.begin(), dg.end());
  std::reverse(ddg.begin(), ddg.end());

  GreenProfile out{n, radius, potential, std::move(r), std::move(g), std::move(dg), std::move(ddg), 1.0};

  // Fit r^{N-2} phi over the smallest decade; the constant term is the
  // singular coefficient of the unnormalized solution.
  std::vector<double> xs = log_spaced(r_min, 10.0 * r_min, 24), ys;
  for (double x : xs) ys.push_back(std::pow(x, n - 2) * out.value(x));
  Eigen::VectorXd c;
  if (n == 3) {
    c = fit(xs, ys, 3, [](int j, double x) { return std::pow(x, j); });
  } else if (n == 4) {
    c = fit(xs, ys, 3, [](int j, double x) { return j == 0 ? 1.0 : j == 1 ? x * x : x * x * std::log(x); });
  } else {
    c = fit(xs, ys, 2, [](int j, double x) { return j == 0 ? 1.0 : x * x; });
  }
  const double scale = out.singular_coefficient() / c(0);
  out.normalization = scale;
  for (auto& v : out.values) v *= scale;
  for (auto& v : out.slopes) v *= scale;
  for (auto& v : out.curvatures) v *= scale;
  out.slopes.back() = 0.0;
  return out;
}

namespace {

/// In dimension 3, G = c y/r + B z/r with y'' = h0 y, z'' = h0 z, y(0) = 1,
/// y'(0) = 0, z(0) = 0, z'(0) = 1.  y/r has no constant term and z/r -> 1, so
/// H = B, fixed by G'(R) = 0 without subtracting the singular part.
double mass_dim3_reduced(const GreenProfile& green) {
  const double R = green.radius;
  auto rhs = [&](double r, const ode::State<4>& s) -> ode::State<4> {
    const double h = potential_value(green.potential, r);
    return {s[1], h * s[0], s[3], h * s[2]};
  };
  ode::Options opt;
  opt.tolerance = 1e-14;
  opt.max_step = R / 50.0;
  opt.overflow_cap = std::numeric_limits<double>::infinity();
  const auto end = ode::integrate<4>(rhs, 0.0, ode::State<4>{1.0, 0.0, 0.0, 1.0}, R, opt,
                                     [](double, const ode::State<4>&, const ode::State<4>&) {});
  const auto& s = end.y;
  return -green.singular_coefficient() * (R * s[1] - s[0]) / (R * s[3] - s[2]);
}

} // namespace

MassResult mass_at_origin(const GreenProfile& green) {
  const int n = green.dimension;
  const double R = green.radius;
  const bool flat = vanishes_at_origin(green.potential);
  if (n >= 7 || (n >= 5 && !flat))
    throw NumericalError(ErrorKind::UnsupportedDimension,
                         "the expansion of G has no constant term at this order for N=" + std::to_string(n) +
                             (flat ? "" : " with h0(0) != 0"));
  if (n == 6 && std::abs(potential_curvature_at_origin(green.potential)) > 1e-10)
    throw NumericalError(ErrorKind::UnsupportedDimension, "N=6 mass needs h0''(0) = 0 as well");
  if (green.grid.front() > 2.5e-4 * R)
    throw NumericalError(ErrorKind::InsufficientRange, "Green profile does not reach 2.5e-4 R");

  const double c = green.singular_coefficient();
  double alpha = 0.0;
  auto remainder = [&](double r) { return green.value(r) - c * std::pow(r, 2 - n) - alpha * std::log(1.0 / r); };

  double fit_constant = std::numeric_limits<double>::quiet_NaN();
  if (n == 4 && !flat) {
    std::vector<double> xs = log_spaced(2.5e-4 * R, 1e-1 * R, 48), ys;
    for (double x : xs) ys.push_back(remainder(x));
    const auto coef = fit(xs, ys, 4, [](int j, double x) {
      switch (j) {
        case 0: return 1.0;
        case 1: return std::log(1.0 / x);
        case 2: return x * x;
        default: return x * x * std::log(x);
      }
    });
    alpha = coef(1);
    fit_constant = coef(0);
  }

  const double r1 = 1e-3 * R, r2 = r1 / 2.0, r3 = r1 / 4.0;
  const double d1 = remainder(r1), d2 = remainder(r2), d3 = remainder(r3);
  // Eliminate the linear then the quadratic term.
  const double e12 = 2.0 * d2 - d1, e23 = 2.0 * d3 - d2;
  const double richardson = (4.0 * e23 - e12) / 3.0;
  if (n == 3) {
    // The extrapolated value is kept only as an independent error bound.
    const double H = mass_dim3_reduced(green);
    return {H, std::abs(H - richardson), n, R, alpha};
  }
  double err = std::abs(richardson - e23);
  if (std::isfinite(fit_constant)) err = std::max(err, std::abs(richardson - fit_constant));
  return {richardson, err, n, R, alpha};
}

double green_closed_form_dim3(double radius, double mu, double r) {
  const double m = std::sqrt(mu), x = m * radius;
  const double A = std::exp(-x) * (x + 1.0) / (x * std::cosh(x) - std::sinh(x));
  return (std::exp(-m * r) + A * std::sinh(m * r)) / (4.0 * pi * r);
}

double mass_closed_form_dim3(double radius, double mu) {
  const double m = std::sqrt(mu), x = m * radius;
  const double A = std::exp(-x) * (x + 1.0) / (x * std::cosh(x) - std::sinh(x));
  return m * (A - 1.0) / (4.0 * pi);
}

double exceptional_radius_dim3(double mu, MassMethod method) {
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
  if (method == MassMethod::ClosedForm) {
    // H = 0 reduces to e^{2x} (x - 1) = x + 1 in x = sqrt(mu) R.
    auto f = [](double x) { return std::exp(2.0 * x) * (x - 1.0) - (x + 1.0); };
    const double lo = 1.0 + 1e-6, hi = 10.0;
    return refine_root(f, lo, hi, f(lo), f(hi), 1e-15) / std::sqrt(mu);
  }
  auto H = [&](double R) { return mass_at_origin(green_radial(3, R, mu)).H; };
  const double lo = (1.0 + 1e-6) / std::sqrt(mu), hi = 10.0 / std::sqrt(mu);
  return refine_root(H, lo, hi, H(lo), H(hi), 1e-11);
}

void write_green_csv(std::ostream& os, const GreenProfile& green) {
  std::ostringstream buf;
  buf << std::setprecision(17) << "r,G\n";
  for (std::size_t i = 0; i < green.grid.size(); ++i) buf << green.grid[i] << ',' << green.values[i] << '\n';
  os << buf.str();
}

std::pair<std::vector<double>, std::vector<double>> read_green_csv(std::istream& is) {
  std::vector<double> r, g;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "r,G") throw IoError("Green CSV: expected header 'r,G', got '" + line + "'");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw IoError("Green CSV: malformed row '" + line + "'");
    try {
      r.push_back(std::stod(line.substr(0, comma)));
      g.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw IoError("Green CSV: non-numeric row '" + line + "'");
    }
  }
  if (!header) throw IoError("Green CSV: missing header");
  return {std::move(r), std::move(g)};
}

Metadata mass_metadata(const MassResult& mass) {
  Metadata m;
  m.set("N", mass.dimension);
  m.set("R", mass.radius);
  m.set("H", mass.H);
  m.set("extrapolation_error", mass.extrapolation_error);
  if (mass.dimension == 4) m.set("alpha4", mass.log_coefficient);
  return m;
}

} // namespace linni
