#pragma once

#include <filesystem>
#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "linni/error.hpp"
#include "linni/metadata.hpp"
#include "linni/profile.hpp"
#include "linni/radial_ode.hpp"

namespace linni {

struct Bifurcation {
  int index;
  /// 1 + lambda_i: where d/da S(1, p) vanishes, since the linearization at
  /// u = 1 is -Delta phi = (p - 2) phi.
  double p;
  /// 2 + lambda_i, the cited form; one unit to the right of p.
  double cited_p;
};

/// Bifurcation exponents for i = 2..i_max, lambda_i the radial Neumann
/// eigenvalues of -Delta + 1 on B_R.
std::vector<Bifurcation> detect_bifurcations(int dimension, double radius, int i_max);

enum class Direction { Upper, Lower };
std::string to_string(Direction direction);
Direction direction_from_string(const std::string& text);

struct BranchPoint {
  double p;
  double a;
  /// Index into Branch::profiles.
  std::size_t profile;
  /// Sign changes of u - 1 on [0, R].
  int zeros;
  double arclength;
  /// |u'(R)| at (a, p).
  double residual;
  /// Unit tangent in (ln a, p).
  double tangent_x;
  double tangent_p;
};

struct ContinuationOptions {
  double step = 0.05;
  int max_points = 2000;
  double p_min = 2.05;
  /// NaN selects 2* + 2.
  double p_max = std::numeric_limits<double>::quiet_NaN();
  double a_max = 1e4;
  /// Largest step as a multiple of `step`.
  double max_step_factor = 8.0;
  double min_step = 1e-12;
  /// Steps whose tangent turns by more than this (radians) are retried at half size.
  double max_turn = 0.1;
  double fd_step = 1e-7;
  double departure = 1e-3;
  double residual_tolerance = 1e-9;
  int max_newton = 8;
  IntegrationSettings integration{.tolerance = 1e-12};
};

/// A connected half-branch leaving the trivial solution at (p_i, 1).  Points
/// are in the coordinates (p, a); arclength is measured in (p, ln a).
struct Branch {
  int dimension;
  double radius;
  int origin_index;
  double origin_p;
  Direction direction;
  std::vector<BranchPoint> points;
  /// Append-only; BranchPoint::profile indexes here.
  std::vector<Profile> profiles;
  std::string stop_reason;

  const Profile& profile(const BranchPoint& point) const { return profiles.at(point.profile); }
};

class StallError : public NumericalError {
public:
  StallError(const std::string& message, Branch partial)
      : NumericalError(ErrorKind::Stall, message), partial_(std::move(partial)) {}
  const Branch& partial() const noexcept { return partial_; }

private:
  Branch partial_;
};

/// Pseudo-arclength continuation of F(a, p) = S(a, p)/(a - 1), which removes
/// the trivial family a = 1 from the zero set of the shooting map S.
Branch trace_branch(int dimension, double radius, int index, Direction direction,
                    const ContinuationOptions& options = {});

/// Independent branches traced concurrently; order follows the requests.
std::vector<Branch> trace_branches(int dimension, double radius,
                                   const std::vector<std::pair<int, Direction>>& requests,
                                   const ContinuationOptions& options = {});

/// Sign changes of u - 1 over the profile nodes.
int count_crossings_of_one(const Profile& profile);

/// Symmetric Hausdorff distance between two (p, a) polylines restricted to
/// their common range of a.
double hausdorff_distance(const std::vector<std::pair<double, double>>& first,
                          const std::vector<std::pair<double, double>>& second);

/// (p, a) samples of the branch; with `subdivisions` > 1 every step is
/// refined by cubic Hermite interpolation in (ln a, p) using the tangents.
std::vector<std::pair<double, double>> branch_curve(const Branch& branch, int subdivisions = 1);

/// Hausdorff distance of the Hermite-refined curves on their common range of a.
double hausdorff_distance(const Branch& first, const Branch& second, int subdivisions = 16);

std::string branch_file_name(const Branch& branch);

/// CSV `p,u0,a,zeros,arclength`, 17 significant digits.
void write_branch_csv(std::ostream& os, const Branch& branch);

struct BranchRow {
  double p;
  double u0;
  double a;
  int zeros;
  double arclength;
};

std::vector<BranchRow> read_branch_csv(std::istream& is);

/// Largest |u'(R)| over the rows, recomputed by integration.
double revalidate_branch(int dimension, double radius, const std::vector<BranchRow>& rows,
                         const IntegrationSettings& settings = {.tolerance = 1e-12});

/// One CSV per branch plus `diagram_N{N}_R{R}_index.csv`, which starts with
/// `# key=value` lines (N, R, critical_exponent) followed by
/// `file,i,direction,origin_p,points,stop_reason`.  Files are written
/// atomically.  Returns the index path.
std::filesystem::path bifurcation_diagram(int dimension, double radius, const std::vector<Branch>& branches,
                                          const std::filesystem::path& directory);

struct BlowupSample {
  double p;
  double a;
  double mu;
  double decomposition_residual;
  double pohozaev_residual;
  double probe;
};

struct BlowupReport {
  std::vector<BlowupSample> samples;
  /// Least-squares slope of ln|2* - p| against ln mu; NaN when undefined.
  double trend_slope;
  bool probe_decreasing;
};

/// Examines the last `tail` points of a branch.
BlowupReport blowup_diagnostics(const Branch& branch, int tail);

Metadata blowup_metadata(const BlowupReport& report);

} // namespace linni
