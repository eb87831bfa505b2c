#include "linni/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "linni/bvp.hpp"
#include "linni/error.hpp"
#include "linni/greenmass.hpp"
#include "linni/problem.hpp"

namespace linni {

namespace {

constexpr double pi = std::numbers::pi;

void require_dimension(int n) {
  if (n < 3) throw std::invalid_argument("dimension must be at least 3");
}

double critical_exponent(int n) { return 2.0 * n / (n - 2.0); }

double bubble_height(int n) { return std::pow(n * (n - 2.0), (n - 2.0) / 4.0); }

template <unsigned Points>
QuadratureResult gk(const std::function<double(double)>& f, double tolerance) {
  auto g = [&](double s) {
    const double w = 1.0 - s;
    return f(s / w) / (w * w);
  };
  double err = 0.0;
  const double v =
      boost::math::quadrature::gauss_kronrod<double, Points>::integrate(g, 0.0, 1.0, 30, tolerance, &err);
  return {v, err};
}

struct CachedConstants {
  double mass_2star;
  std::optional<double> c1;
  double beta;
};

std::mutex cache_mutex;
std::map<int, CachedConstants> cache;

double mass_2star_quadrature(int n, int points) {
  const double q = critical_exponent(n);
  auto f = [&](double r) { return std::pow(r, n - 1) * std::pow(b0(n, r), q); };
  return sphere_area(n - 1) * half_line_integral(f, 1e-12, points).value;
}

double c1_quadrature(int n, int points) {
  auto f = [&](double r) { return std::pow(r, n - 1) * std::pow(b0(n, r), 2); };
  return sphere_area(n - 1) * half_line_integral(f, 1e-12, points).value;
}

const CachedConstants& cached(int n) {
  std::lock_guard lock(cache_mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    CachedConstants c{mass_2star_quadrature(n, 15), std::nullopt, beta_constant(n, 15)};
    if (n >= 5) c.c1 = c1_quadrature(n, 15);
    it = cache.emplace(n, c).first;
  }
  return it->second;
}

} // namespace

double bubble(const BubbleParams& b, double r) {
  const int n = b.dimension;
  return bubble_height(n) * std::pow(b.lambda / (b.lambda * b.lambda + r * r), (n - 2.0) / 2.0);
}

double bubble_modified(const BubbleParams& b, double r) {
  const int n = b.dimension;
  return std::pow(b.lambda, (n - 2.0) / 2.0 - 2.0 / (b.exponent - 2.0)) * bubble(b, r);
}

double bubble_modified_slope(const BubbleParams& b, double r) {
  const int n = b.dimension;
  return -(n - 2.0) * r / (b.lambda * b.lambda + r * r) * bubble_modified(b, r);
}

double b0(int dimension, double r) {
  return bubble_height(dimension) * std::pow(1.0 + r * r, 1.0 - dimension / 2.0);
}

double v0(int dimension, double r) { return (r * r - 1.0) / std::pow(1.0 + r * r, dimension / 2.0); }

double sobolev_constant(int dimension) {
  require_dimension(dimension);
  const double n = dimension;
  return std::sqrt(4.0 / (n * (n - 2.0) * std::pow(sphere_area(dimension), 2.0 / n)));
}

QuadratureResult half_line_integral(const std::function<double(double)>& f, double tolerance, int points) {
  if (points == 15) return gk<15>(f, tolerance);
  if (points == 31) return gk<31>(f, tolerance);
  throw std::invalid_argument("Gauss-Kronrod rule must have 15 or 31 points");
}

BubbleMoments bubble_moments(int dimension) {
  require_dimension(dimension);
  const auto& c = cached(dimension);
  return {c.mass_2star, c.c1};
}

double c1_moment(int dimension) {
  require_dimension(dimension);
  if (dimension <= 4)
    throw NumericalError(ErrorKind::DivergentMoment,
                         "the integral of B0^2 diverges for N=" + std::to_string(dimension));
  return *cached(dimension).c1;
}

double c1_cited_dim6() { return 106.0 * pi * pi * pi; }

double beta_constant(int dimension) {
  require_dimension(dimension);
  return cached(dimension).beta;
}

double beta_constant(int dimension, int points) {
  require_dimension(dimension);
  const double n = dimension;
  auto f = [&](double r) { return std::pow(r, (n - 2.0) / 2.0) * std::log1p(r) / std::pow(1.0 + r, n); };
  const double integral = half_line_integral(f, 1e-12, points).value;
  const double ratio = sphere_area(dimension - 1) / sphere_area(dimension);
  return std::pow(2.0, n - 3.0) * (n - 2.0) * (n - 2.0) * ratio * integral +
         (n - 2.0) * (n - 2.0) / (4.0 * n) * (1.0 - 2.0 * n * std::log(std::sqrt(n * (n - 2.0))));
}

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::Sub: return "sub";
    case Regime::Crit: return "crit";
    case Regime::Super: return "super";
  }
  return "?";
}

Regime regime_from_string(const std::string& text) {
  if (text == "sub") return Regime::Sub;
  if (text == "crit") return Regime::Crit;
  if (text == "super") return Regime::Super;
  throw std::invalid_argument("regime must be sub, crit or super, got '" + text + "'");
}

double c5(int dimension, double u0_center) {
  require_dimension(dimension);
  if (u0_center < 0.0) throw std::invalid_argument("u0(0) must be nonnegative");
  const double n = dimension;
  const double k = std::pow(sobolev_constant(dimension), -n) / n;
  double bracket = 0.0;
  if (dimension >= 6) bracket += 2.0 * (n - 1.0) / ((n - 2.0) * (n - 4.0));
  if (dimension <= 6)
    bracket -= std::pow(2.0, n) * u0_center * sphere_area(dimension - 1) /
               (bubble_height(dimension) * sphere_area(dimension));
  return k * bracket;
}

double lambda_power(int dimension, bool u0_zero) {
  require_dimension(dimension);
  switch (dimension) {
    case 3: return 2.0;
    case 4: return 1.0;
    case 5: return u0_zero ? 0.5 : 2.0 / 3.0;
    default: return 0.5;
  }
}

double lambda_eps(int dimension, double eps, double t, bool u0_zero) {
  require_dimension(dimension);
  const double e = std::abs(eps);
  if (!(e > 0.0 && e < 1.0)) throw std::invalid_argument("need 0 < |eps| < 1");
  if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
  switch (dimension) {
    case 3: return std::pow(e * t, 2.0);
    case 4: return u0_zero ? std::sqrt(e / std::log(1.0 / e)) * t : e * t;
    case 5: return u0_zero ? std::sqrt(e * t) : std::pow(e * t, 2.0 / 3.0);
    default: return std::sqrt(e * t);
  }
}

ReducedEnergyModel make_reduced_energy_model(int dimension, Regime regime, double u0_center,
                                             bool n4_type_b) {
  require_dimension(dimension);
  if (regime == Regime::Crit)
    throw NumericalError(ErrorKind::Regime, "the reduced energy needs eps != 0 (sub or super)");
  if (u0_center < 0.0) throw std::invalid_argument("u0(0) must be nonnegative");
  if (n4_type_b && dimension != 4) throw std::invalid_argument("the type-B special form is for N=4 only");
  const bool u0_zero = u0_center == 0.0 || n4_type_b;
  const double n = dimension;
  const double k = std::pow(sobolev_constant(dimension), -n) / n;
  const double sign = regime == Regime::Sub ? 1.0 : -1.0;

  ReducedEnergyModel m{dimension, regime, u0_zero ? 0.0 : u0_center, dimension == 4 && u0_zero, 0.0, 0.0,
                       c5(dimension, u0_zero ? 0.0 : u0_center), std::nullopt};
  // -((N-2)/2)^2 eps ln lambda with lambda ~ t^gamma.
  m.c4 = k * std::pow((n - 2.0) / 2.0, 2) * lambda_power(dimension, u0_zero);
  if (m.special_n4_type_b) {
    m.c5 = 1.5 * m.c4;
    if (regime == Regime::Sub) m.t0 = 1.0 / std::sqrt(3.0);
    return m;
  }
  m.c5 = m.c5_cited;
  // For N=5 with u0 = 0 the lambda^2 term is of order |eps| t and survives,
  // although the cited indicator drops it.
  if (dimension == 5 && u0_zero) m.c5 = k * 2.0 * (n - 1.0) / ((n - 2.0) * (n - 4.0));
  const double s = sign * m.c5;
  if (s > 0.0) m.t0 = m.c4 / s;
  return m;
}

double reduced_energy(const ReducedEnergyModel& model, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
  const double sign = model.regime == Regime::Sub ? 1.0 : -1.0;
  if (model.special_n4_type_b) return sign * std::log(1.0 / t) + 1.5 * t * t;
  return model.c4 * std::log(1.0 / t) + sign * model.c5 * t;
}

std::optional<double> critical_point(const ReducedEnergyModel& model) { return model.t0; }

double mu_from_center(int dimension, double exponent, double u_center) {
  require_dimension(dimension);
  if (!(exponent > 2.0)) throw std::invalid_argument("exponent must exceed 2");
  if (!(u_center > 0.0)) throw std::invalid_argument("center value must be positive");
  const double n = dimension;
  return std::pow(n * (n - 2.0), (n - 2.0) * (exponent - 2.0) / 8.0) *
         std::pow(u_center, -(exponent - 2.0) / 2.0);
}

double decomposition_residual(const Profile& profile, const Profile* u0_profile, double mu, int kappa) {
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
  if (kappa != 1 && kappa != -1) throw std::invalid_argument("kappa must be +1 or -1");
  const auto& prob = profile.problem();
  if (u0_profile) {
    const auto& q = u0_profile->problem();
    if (q.dimension() != prob.dimension() || q.radius() != prob.radius())
      throw std::invalid_argument("profile and u0 profile must share dimension and radius");
  }
  const int n = prob.dimension();
  const double p = prob.exponent();
  const BubbleParams b{n, mu, p};
  const double u0_sup = u0_profile ? u0_profile->sup_norm() : 0.0;
  const double floor = std::pow(mu, n - 2.0 - 2.0 / (p - 2.0));
  double worst = 0.0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const double r = profile.grid()[i];
    const double u0 = u0_profile && r <= u0_profile->r_max() ? u0_profile->value(r) : 0.0;
    const double bt = bubble_modified(b, r);
    worst = std::max(worst, std::abs(profile.values()[i] - u0 - kappa * bt) / (u0_sup + bt + floor));
  }
  return worst;
}

std::string to_string(Allowed allowed) {
  switch (allowed) {
    case Allowed::None: return "none";
    case Allowed::B: return "B";
    case Allowed::U0PlusB: return "u0+B";
    case Allowed::TowersPossible: return "towers_possible";
  }
  return "?";
}

std::vector<ClassificationEntry> classify_blowup(int dimension, Regime regime) {
  require_dimension(dimension);
  const int n = dimension;
  const double inf = std::numeric_limits<double>::infinity();
  using E = ClassificationEntry;
  auto plain = [&](std::string s, std::vector<Allowed> a, std::string cond = "", RadiusHook h = RadiusHook::None) {
    E e;
    e.dimension = n;
    e.regime = regime;
    e.statement = std::move(s);
    e.allowed = std::move(a);
    e.condition = std::move(cond);
    e.hook = h;
    return e;
  };
  auto occurs = [&](std::string s, Allowed what, double lo, double hi, bool lo_open, bool hi_open,
                    bool external = false, std::string cond = "") {
    E e;
    e.dimension = n;
    e.regime = regime;
    e.statement = std::move(s);
    e.allowed = {what};
    e.condition = std::move(cond);
    e.occurs = what;
    e.u0_min = lo;
    e.u0_max = hi;
    e.u0_min_open = lo_open;
    e.u0_max_open = hi_open;
    e.external = external;
    return e;
  };
  const auto towers = plain("towers might exist", {Allowed::TowersPossible});
  std::vector<E> rows;
  if (n == 3) {
    switch (regime) {
      case Regime::Sub:
        rows.push_back(plain("no blow-up if R<R*", {Allowed::None}, "R < R*", RadiusHook::BelowRStar));
        rows.push_back(plain("single bubble only", {Allowed::B}));
        rows.push_back(plain("only type B is possible", {Allowed::B}));
        rows.push_back(occurs("type B occurs for large R", Allowed::B, 0, 0, false, false, true, "R large"));
        break;
      case Regime::Crit:
        rows.push_back(plain("no blow-up", {Allowed::None}, "R != R*", RadiusHook::NotRStar));
        break;
      case Regime::Super:
        rows.push_back(towers);
        rows.push_back(plain("no type B if R>R*", {Allowed::U0PlusB, Allowed::TowersPossible}, "R > R*",
                             RadiusHook::AboveRStar));
        rows.push_back(occurs("type B occurs for small R", Allowed::B, 0, 0, false, false, true, "R small"));
        rows.push_back(occurs("type u0+B with u0>0 occurs", Allowed::U0PlusB, 0, inf, true, true));
        break;
    }
  } else if (n <= 5) {
    switch (regime) {
      case Regime::Sub:
        rows.push_back(plain("single bubble only", {Allowed::B}));
        rows.push_back(plain("only type B is possible", {Allowed::B}));
        rows.push_back(occurs("type B occurs", Allowed::B, 0, 0, false, false));
        break;
      case Regime::Crit:
        rows.push_back(plain("no blow-up", {Allowed::None}));
        break;
      case Regime::Super:
        rows.push_back(towers);
        rows.push_back(plain("no type B", {Allowed::U0PlusB, Allowed::TowersPossible}));
        rows.push_back(occurs("type u0+B with u0>0 occurs", Allowed::U0PlusB, 0, inf, true, true));
        break;
    }
  } else if (n == 6) {
    switch (regime) {
      case Regime::Sub:
        rows.push_back(plain("single bubble only", {Allowed::B, Allowed::U0PlusB}));
        rows.push_back(plain("only type u0+B with u0(0)<=1/2 is possible", {Allowed::U0PlusB}, "u0(0) <= 1/2"));
        // u0 = 0 is the type-B member of this family.
        rows.push_back(occurs("type u0+B with u0(0)<1/2 occurs", Allowed::U0PlusB, 0, 0.5, false, true, false,
                              "u0(0) < 1/2"));
        break;
      case Regime::Crit:
        rows.push_back(plain("no blow-up", {Allowed::None}, "R not in {R_l}", RadiusHook::NotDim6Radii));
        break;
      case Regime::Super:
        rows.push_back(towers);
        rows.push_back(plain("only type u0+B u0(0)>=1/2 is possible", {Allowed::U0PlusB, Allowed::TowersPossible},
                             "u0(0) >= 1/2"));
        rows.push_back(occurs("type u0+B with u0(0)>1/2 occurs", Allowed::U0PlusB, 0.5, inf, true, true, false,
                              "u0(0) > 1/2"));
        break;
    }
  } else {
    switch (regime) {
      case Regime::Sub:
        rows.push_back(towers);
        rows.push_back(occurs("type B occurs", Allowed::B, 0, 0, false, false));
        rows.push_back(occurs("type u0+B with u0>0 occurs", Allowed::U0PlusB, 0, inf, true, true));
        break;
      case Regime::Crit:
      case Regime::Super:
        rows.push_back(plain("no blow-up", {Allowed::None}));
        break;
    }
  }
  return rows;
}

bool table_constructs(int dimension, Regime regime, double u0_center) {
  for (const auto& e : classify_blowup(dimension, regime)) {
    if (!e.occurs || e.external) continue;
    const bool above = e.u0_min_open ? u0_center > e.u0_min : u0_center >= e.u0_min;
    const bool below = e.u0_max_open ? u0_center < e.u0_max : u0_center <= e.u0_max;
    if (above && below) return true;
  }
  return false;
}

bool radius_condition_holds(RadiusHook hook, double radius) {
  switch (hook) {
    case RadiusHook::None: return true;
    case RadiusHook::BelowRStar: return radius < exceptional_radius_dim3();
    case RadiusHook::AboveRStar: return radius > exceptional_radius_dim3();
    case RadiusHook::NotRStar: return std::abs(radius - exceptional_radius_dim3()) > 1e-9;
    case RadiusHook::NotDim6Radii: {
      const auto prof = entire_profile(6, 3.0, 0.5, radius + 5.0, {.tolerance = 1e-11});
      for (double r : prof.extrema())
        if (std::abs(r - radius) <= 1e-9 * std::max(1.0, radius)) return false;
      return true;
    }
  }
  return true;
}

std::vector<double> tower_ratio_prediction(int dimension, double exponent, const std::vector<double>& ratios) {
  if (dimension < 3 || dimension > 6) throw std::invalid_argument("tower ratio law holds for 3 <= N <= 6");
  const double gap = exponent - critical_exponent(dimension);
  if (!(gap > 0.0)) throw NumericalError(ErrorKind::Regime, "tower ratio law needs p > 2*");
  std::vector<double> out;
  out.reserve(ratios.size());
  for (double q : ratios) out.push_back(std::pow(q, (dimension - 2.0) / 2.0) / gap);
  return out;
}

std::vector<ConstantRow> constants_table(int dimension) {
  require_dimension(dimension);
  const auto mom = bubble_moments(dimension);
  const double k = sobolev_constant(dimension);
  std::vector<ConstantRow> rows{
      {"K_N", dimension, k, "closed_form", 0.0},
      {"K_N^-N", dimension, std::pow(k, -dimension), "closed_form", 0.0},
      {"int_B0^2*", dimension, mom.mass_2star, "quadrature", 1e-10},
      {"beta_N", dimension, beta_constant(dimension), "quadrature+closed_tail", 1e-10},
      {"omega_ratio", dimension, sphere_area(dimension - 1) / sphere_area(dimension), "closed_form", 0.0},
  };
  if (mom.C1) rows.push_back({"C1", dimension, *mom.C1, "quadrature", 1e-10});
  if (dimension == 6) rows.push_back({"C1_cited", dimension, c1_cited_dim6(), "cited", 0.0});
  return rows;
}

void write_constants_csv(std::ostream& os, const std::vector<ConstantRow>& rows) {
  std::ostringstream buf;
  buf << std::setprecision(17) << "name,N,value,method,tolerance\n";
  for (const auto& r : rows)
    buf << r.name << ',' << r.dimension << ',' << r.value << ',' << r.method << ',' << r.tolerance << '\n';
  os << buf.str();
}

} // namespace linni
