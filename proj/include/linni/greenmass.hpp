#pragma once

#include <iosfwd>
#include <variant>
#include <vector>

#include "linni/metadata.hpp"

namespace linni {

/// Radial potential h0 given by samples of h0 and h0' on an increasing grid
/// that starts at 0; evaluated by cubic Hermite interpolation.
struct TabulatedPotential {
  std::vector<double> r;
  std::vector<double> h;
  std::vector<double> dh;

  double value(double x) const;
  double slope(double x) const;
};

/// Either a constant coefficient (negative values allowed, which is how the
/// kernel guard is exercised) or a sampled h0.
using Potential = std::variant<double, TabulatedPotential>;

double potential_value(const Potential& potential, double r);

struct GreenOptions {
  double tolerance = 1e-12;
  /// Innermost radius as a fraction of R.
  double r_min_fraction = 1e-6;
  /// |phi'(R)| / max|phi'| below this means -Delta + h0 has a radial kernel.
  double kernel_threshold = 1e-6;
};

/// G(0, r) of -Delta + h0 with Neumann data on B_R, normalized so that
/// r^{N-2} G -> 1/((N-2) omega_{N-1}) as r -> 0.
struct GreenProfile {
  int dimension;
  double radius;
  Potential potential;
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> slopes;
  std::vector<double> curvatures;
  /// Factor applied to the backward solution with G(R) = 1.
  double normalization;

  double value(double r) const;
  double slope(double r) const;
  /// 1/((N-2) omega_{N-1}).
  double singular_coefficient() const;
};

GreenProfile green_radial(int dimension, double radius, const Potential& potential,
                          const GreenOptions& options = {});

struct MassResult {
  double H;
  double extrapolation_error;
  int dimension;
  double radius;
  /// Coefficient of ln(1/r) removed first in dimension 4 with h0(0) != 0;
  /// zero otherwise.
  double log_coefficient = 0.0;
};

/// Constant term of G(0, r) - r^{2-N}/((N-2) omega_{N-1}).  N = 4..6 use
/// Richardson extrapolation at {1e-3, 5e-4, 2.5e-4} R.  N = 3 solves for it
/// directly through G = (c y + H z)/r and reports the distance to the
/// Richardson value as the error.
MassResult mass_at_origin(const GreenProfile& green);

/// Closed forms for N = 3 and constant mu:
///   G = (e^{-m r} + A sinh(m r)) / (4 pi r),  A = e^{-mR}(mR + 1)/(mR cosh mR - sinh mR)
/// with m = sqrt(mu), and H = m (A - 1)/(4 pi).
double green_closed_form_dim3(double radius, double mu, double r);
double mass_closed_form_dim3(double radius, double mu);

enum class MassMethod { ClosedForm, Numerical };

/// The radius where the N = 3 mass of -Delta + mu changes sign.
double exceptional_radius_dim3(double mu = 1.0, MassMethod method = MassMethod::ClosedForm);

void write_green_csv(std::ostream& os, const GreenProfile& green);

/// (r, G) columns of a `r,G` table.
std::pair<std::vector<double>, std::vector<double>> read_green_csv(std::istream& is);

Metadata mass_metadata(const MassResult& mass);

} // namespace linni
