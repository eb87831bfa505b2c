#pragma once

#include <functional>

#include "linni/greenmass.hpp"
#include "linni/metadata.hpp"
#include "linni/profile.hpp"

namespace linni {

/// Integral of f(r) r^{N-1} over [0, b] times the sphere area, by Gauss
/// rules on every profile interval.  The 10-point rule is the value, the
/// 5-point rule the error estimate.
struct RadialIntegral {
  double value;
  double error;
};

RadialIntegral radial_integral(const Profile& profile, double b, const std::function<double(double)>& f);

/// Both sides of the Pohozaev identity on B_delta, multiplier r u' + (N-2)/2 u:
///   mu int u^2 + c int |u|^p = omega_{N-1} delta^{N-1} (-(delta/2) u'^2 - (N-2)/2 u u'
///                               + (delta/2) mu u^2 - (delta/p)|u|^p)
/// with the exact c = (N-2)(p-2*)/(2p).  The cited form has c = (N-2)^2(p-2*)/(4N),
/// which agrees only at p = 2*; that variant is reported alongside.
struct PohozaevReport {
  double delta;
  double lhs_exact;
  double rhs_boundary;
  double residual_exact;
  double lhs_cited_coefficient;
  double residual_cited;
  double integral_u2;
  double integral_up;
  double quadrature_error;
  /// |mu| int u^2 + |c| int |u|^p + |rhs|; on blow-up profiles the two
  /// interior terms nearly cancel, so |lhs| alone is no scale.
  double scale;

  double relative_residual() const;
};

PohozaevReport pohozaev_residual(const Profile& profile, double delta);

/// The identity for -Delta v + h0 v = v^2 in dimension 6:
///   int (h0 + r h0'/2) v^2 = omega_5 delta^5 (-(delta/2) v'^2 - 2 v v' + delta h0/2 v^2 - delta/3 v^3).
struct PotentialPohozaevReport {
  double delta;
  double lhs;
  double rhs_boundary;
  double residual;
  double quadrature_error;

  double relative_residual() const;
};

PotentialPohozaevReport pohozaev_potential_residual(const Profile& v_profile, const Potential& h0,
                                                    double delta);

/// (omega_{N-1} int_0^{r_max} r^{N-1} |u|^alpha dr)^{1/alpha}.
double lp_norm(const Profile& profile, double alpha);

/// max(2*, N p/2 - N).
double alpha_exponent(int dimension, double exponent);

/// Largest increase of E(r) between consecutive dense samples (8 per
/// interval); zero when E is nonincreasing.
double monotonicity_audit(const Profile& profile);

Metadata pohozaev_metadata(const PohozaevReport& report);
Metadata pohozaev_metadata(const PotentialPohozaevReport& report);

} // namespace linni
