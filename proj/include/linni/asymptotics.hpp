#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "linni/profile.hpp"

namespace linni {

struct BubbleParams {
  int dimension;
  double lambda;
  double exponent;
};

/// B_lambda(r) = (N(N-2))^{(N-2)/4} (lambda/(lambda^2 + r^2))^{(N-2)/2}.
double bubble(const BubbleParams& b, double r);
/// lambda^{(N-2)/2 - 2/(p-2)} B_lambda(r).
double bubble_modified(const BubbleParams& b, double r);
double bubble_modified_slope(const BubbleParams& b, double r);
/// B_lambda at lambda = 1.
double b0(int dimension, double r);
/// (r^2 - 1)/(1 + r^2)^{N/2}.
double v0(int dimension, double r);

/// sqrt(4/(N(N-2) omega_N^{2/N})).
double sobolev_constant(int dimension);

struct QuadratureResult {
  double value;
  double error;
};

/// Integral over [0, inf) of f after r = s/(1-s), adaptive Gauss-Kronrod with
/// `points` in {15, 31} (the pair is the node-doubling check).
QuadratureResult half_line_integral(const std::function<double(double)>& f, double tolerance = 1e-10,
                                    int points = 15);

struct BubbleMoments {
  /// Integral of B0^{2*} over R^N.
  double mass_2star;
  /// Integral of B0^2 over R^N, finite for N >= 5.
  std::optional<double> C1;
};

/// Memoized per dimension.  Asking for C1 with N <= 4 is not an error here;
/// c1_moment() is the strict accessor.
BubbleMoments bubble_moments(int dimension);
double c1_moment(int dimension);
/// The cited value for N = 6; the quadrature gives 96 pi^3.
double c1_cited_dim6();

/// beta_N by quadrature of the log integral plus the algebraic term.
double beta_constant(int dimension);
double beta_constant(int dimension, int points);

enum class Regime { Sub, Crit, Super };
std::string to_string(Regime regime);
Regime regime_from_string(const std::string& text);

/// c5(N, u0) with the indicators exactly as cited.
double c5(int dimension, double u0_center);

/// Exponent gamma with lambda proportional to t^gamma for fixed epsilon.
double lambda_power(int dimension, bool u0_zero);

double lambda_eps(int dimension, double eps, double t, bool u0_zero);

struct ReducedEnergyModel {
  int dimension;
  Regime regime;
  double u0_center;
  bool special_n4_type_b;
  double c4;
  /// Coefficient of |eps| t actually present in the expansion (see
  /// make_reduced_energy_model); the cited c5 is kept in c5_cited.
  double c5;
  double c5_cited;
  std::optional<double> t0;
};

/// Sub means eps > 0 (p < 2*), Super eps < 0.  The N = 4, u0 = 0 case uses
/// H(t) = sign(eps) ln(1/t) + 3/2 t^2 and is selected automatically.
ReducedEnergyModel make_reduced_energy_model(int dimension, Regime regime, double u0_center,
                                             bool n4_type_b = false);

double reduced_energy(const ReducedEnergyModel& model, double t);
std::optional<double> critical_point(const ReducedEnergyModel& model);

/// mu = (N(N-2))^{(N-2)(p-2)/8} u(0)^{-(p-2)/2}.
double mu_from_center(int dimension, double exponent, double u_center);

/// sup_r |u - u0 - kappa Btilde_mu| / (|u0|_inf + Btilde_mu + mu^{N-2-2/(p-2)}).
/// A null u0 means u0 = 0.
double decomposition_residual(const Profile& profile, const Profile* u0_profile, double mu,
                              int kappa = 1);

enum class Allowed { None, B, U0PlusB, TowersPossible };
std::string to_string(Allowed allowed);

/// Radius-dependent conditions, evaluated through the greenmass and bvp modules.
enum class RadiusHook { None, BelowRStar, AboveRStar, NotRStar, NotDim6Radii };

struct ClassificationEntry {
  int dimension;
  Regime regime;
  std::string statement;
  std::vector<Allowed> allowed;
  std::string condition;
  RadiusHook hook = RadiusHook::None;
  /// Set when the entry asserts that a configuration occurs.
  std::optional<Allowed> occurs;
  /// u0(0) range of occurring configurations; 0 means u0 = 0 (type B).
  double u0_min = 0.0;
  double u0_max = 0.0;
  bool u0_min_open = false;
  bool u0_max_open = false;
  /// Proved in an external reference rather than by the reduced energy.
  bool external = false;
};

std::vector<ClassificationEntry> classify_blowup(int dimension, Regime regime);

/// Does the table assert a construction at (N, regime, u0(0)) via the reduced energy?
bool table_constructs(int dimension, Regime regime, double u0_center);

/// Evaluates a radius hook at R with mu = 1; true when the condition holds.
bool radius_condition_holds(RadiusHook hook, double radius);

/// C_i = ratio^{(N-2)/2}/(p - 2*), for 3 <= N <= 6 and p > 2*.
std::vector<double> tower_ratio_prediction(int dimension, double exponent,
                                           const std::vector<double>& ratios);

struct ConstantRow {
  std::string name;
  int dimension;
  double value;
  std::string method;
  double tolerance;
};

std::vector<ConstantRow> constants_table(int dimension);
void write_constants_csv(std::ostream& os, const std::vector<ConstantRow>& rows);

} // namespace linni
