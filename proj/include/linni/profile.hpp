#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "linni/problem.hpp"

namespace linni {

/// A solved radial trajectory: nodes r_0 = 0 < r_1 < ... < r_M with u, u'
/// and u'' at every node.  Between nodes the solution is reconstructed by
/// quintic Hermite interpolation, which reproduces node values exactly.
class Profile {
public:
  Profile(RadialProblem problem, std::vector<double> grid, std::vector<double> values,
          std::vector<double> slopes, std::vector<double> curvatures);

  /// Builds a profile from (r, u, u') samples, recovering u'' from the ODE.
  static Profile from_ode_samples(RadialProblem problem, std::vector<double> grid,
                                  std::vector<double> values, std::vector<double> slopes);

  const RadialProblem& problem() const noexcept { return problem_; }
  std::span<const double> grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> slopes() const noexcept { return slopes_; }
  std::span<const double> curvatures() const noexcept { return curvatures_; }
  std::size_t size() const noexcept { return grid_.size(); }
  double r_max() const noexcept { return grid_.back(); }
  double center_value() const noexcept { return values_.front(); }

  double value(double r) const;
  double slope(double r) const;
  double curvature(double r) const;

  std::span<const double> extrema() const noexcept { return extrema_; }
  void set_extrema(std::vector<double> radii) { extrema_ = std::move(radii); }

  /// Set when the integration stopped at the overflow cap before r_max was
  /// requested; the grid then ends at the truncation radius.
  bool truncated() const noexcept { return truncated_; }
  void mark_truncated(bool flag = true) noexcept { truncated_ = flag; }

  /// max |u| over the nodes.
  double sup_norm() const;

private:
  std::size_t interval(double r) const;

  RadialProblem problem_;
  std::vector<double> grid_;
  std::vector<double> values_;
  std::vector<double> slopes_;
  std::vector<double> curvatures_;
  std::vector<double> extrema_;
  bool truncated_ = false;
};

/// CSV with header `r,u,du`, 17 significant digits.
void write_profile_csv(std::ostream& os, const Profile& profile);

/// Reads a `r,u,du` table.  Lines starting with '#' and key=value metadata
/// lines are skipped.  Second derivatives are recovered from the ODE of
/// `problem`.
Profile read_profile_csv(std::istream& is, const RadialProblem& problem);

} // namespace linni
