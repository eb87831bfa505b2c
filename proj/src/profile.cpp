#include "linni/profile.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "linni/error.hpp"
#include "linni/hermite.hpp"

namespace linni {


Profile::Profile(RadialProblem problem, std::vector<double> grid, std::vector<double> values,
                 std::vector<double> slopes, std::vector<double> curvatures)
    : problem_(problem),
      grid_(std::move(grid)),
      values_(std::move(values)),
      slopes_(std::move(slopes)),
      curvatures_(std::move(curvatures)) {
  if (grid_.empty()) throw std::invalid_argument("profile grid is empty");
  if (values_.size() != grid_.size() || slopes_.size() != grid_.size() ||
      curvatures_.size() != grid_.size())
    throw std::invalid_argument("profile arrays differ in length");
  if (grid_.front() != 0.0) throw std::invalid_argument("profile grid must start at r = 0");
  if (slopes_.front() != 0.0) throw std::invalid_argument("profile must satisfy u'(0) = 0");
  for (std::size_t i = 1; i < grid_.size(); ++i)
    if (!(grid_[i] > grid_[i - 1])) throw std::invalid_argument("profile grid not increasing");
}

Profile Profile::from_ode_samples(RadialProblem problem, std::vector<double> grid,
                                  std::vector<double> values, std::vector<double> slopes) {
  std::vector<double> curv(grid.size());
  for (std::size_t i = 0; i < grid.size() && i < values.size() && i < slopes.size(); ++i)
    curv[i] = problem.second_derivative(grid[i], values[i], slopes[i]);
  return {problem, std::move(grid), std::move(values), std::move(slopes), std::move(curv)};
}

std::size_t Profile::interval(double r) const {
  if (r < 0.0 || r > grid_.back() * (1.0 + 1e-14))
    throw std::out_of_range("radius " + std::to_string(r) + " outside profile range [0, " +
                            std::to_string(grid_.back()) + "]");
  if (grid_.size() == 1) return 0;
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), r);
  std::size_t i = it == grid_.begin() ? 0 : static_cast<std::size_t>(it - grid_.begin()) - 1;
  return std::min(i, grid_.size() - 2);
}

double Profile::value(double r) const {
  const std::size_t i = interval(r);
  if (grid_.size() == 1) return values_[0];
  if (r == grid_[i]) return values_[i];
  if (r == grid_[i + 1]) return values_[i + 1];
  const double h = grid_[i + 1] - grid_[i];
  return detail::hermite5(h, (r - grid_[i]) / h, values_[i], slopes_[i], curvatures_[i], values_[i + 1],
                  slopes_[i + 1], curvatures_[i + 1])
      .v;
}

double Profile::slope(double r) const {
  const std::size_t i = interval(r);
  if (grid_.size() == 1) return slopes_[0];
  if (r == grid_[i]) return slopes_[i];
  if (r == grid_[i + 1]) return slopes_[i + 1];
  const double h = grid_[i + 1] - grid_[i];
  return detail::hermite5(h, (r - grid_[i]) / h, values_[i], slopes_[i], curvatures_[i], values_[i + 1],
                  slopes_[i + 1], curvatures_[i + 1])
      .d1;
}

double Profile::curvature(double r) const {
  const std::size_t i = interval(r);
  if (grid_.size() == 1) return curvatures_[0];
  if (r == grid_[i]) return curvatures_[i];
  if (r == grid_[i + 1]) return curvatures_[i + 1];
  const double h = grid_[i + 1] - grid_[i];
  return detail::hermite5(h, (r - grid_[i]) / h, values_[i], slopes_[i], curvatures_[i], values_[i + 1],
                  slopes_[i + 1], curvatures_[i + 1])
      .d2;
}

double Profile::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

void write_profile_csv(std::ostream& os, const Profile& profile) {
  const auto r = profile.grid();
  const auto u = profile.values();
  const auto du = profile.slopes();
  std::ostringstream buf;
  buf << std::setprecision(17);
  buf << "r,u,du\n";
  for (std::size_t i = 0; i < r.size(); ++i) buf << r[i] << ',' << u[i] << ',' << du[i] << '\n';
  os << buf.str();
}

Profile read_profile_csv(std::istream& is, const RadialProblem& problem) {
  std::vector<double> r, u, du;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "r,u,du") throw IoError("profile CSV: expected header 'r,u,du', got '" + line + "'");
      header = true;
      continue;
    }
    if (line.find('=') != std::string::npos) continue;
    std::istringstream row(line);
    std::string a, b, c;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c))
      throw IoError("profile CSV: malformed row '" + line + "'");
    try {
      r.push_back(std::stod(a));
      u.push_back(std::stod(b));
      du.push_back(std::stod(c));
    } catch (const std::exception&) {
      throw IoError("profile CSV: non-numeric row '" + line + "'");
    }
  }
  if (!header || r.empty()) throw IoError("profile CSV: no data rows");
  return Profile::from_ode_samples(problem, std::move(r), std::move(u), std::move(du));
}

} // namespace linni
