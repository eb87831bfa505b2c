#include "linni/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>
#include <ostream>
#include <sstream>

#include "linni/asymptotics.hpp"
#include "linni/bvp.hpp"
#include "linni/diagnostics.hpp"
#include "linni/io.hpp"

namespace linni {

namespace {

// S(a, p) and the desingularized F in the coordinates (x, p), x = ln a.
class ShootingField {
public:
  ShootingField(int n, double radius, const IntegrationSettings& settings)
      : n_(n), radius_(radius), settings_(settings) {}

  std::optional<double> S(double a, double p) const {
    try {
      const auto e = integrate_endpoint(RadialProblem(n_, radius_, p), a, radius_, settings_);
      if (e.truncated || !std::isfinite(e.du)) return std::nullopt;
      return e.du;
    } catch (const NumericalError&) {
      return std::nullopt;
    }
  }

  std::optional<double> F(double x, double p) const {
    const auto s = S(std::exp(x), p);
    if (!s) return std::nullopt;
    return *s / std::expm1(x);
  }

private:
  int n_;
  double radius_;
  IntegrationSettings settings_;
};

struct Vec2 {
  double x, p;
};

double norm(Vec2 v) { return std::hypot(v.x, v.p); }

struct Linearization {
  double f, fx, fp;
};

std::optional<Linearization> linearize(const ShootingField& field, Vec2 at, double h) {
  const auto f = field.F(at.x, at.p);
  if (!f) return std::nullopt;
  const double hx = h * std::max(1.0, std::abs(at.x));
  const double hp = h * std::max(1.0, std::abs(at.p));
  const auto fx = field.F(at.x + hx, at.p);
  const auto fp = field.F(at.x, at.p + hp);
  if (!fx || !fp) return std::nullopt;
  return Linearization{*f, (*fx - *f) / hx, (*fp - *f) / hp};
}

Vec2 tangent_of(const Linearization& l) {
  const Vec2 t{-l.fp, l.fx};
  const double m = norm(t);
  return {t.x / m, t.p / m};
}

struct Corrected {
  Vec2 point;
  Linearization lin;
  int iterations;
};

std::optional<Corrected> correct(const ShootingField& field, Vec2 base, Vec2 tangent, double ds,
                                 const ContinuationOptions& opt) {
  Vec2 x{base.x + ds * tangent.x, base.p + ds * tangent.p};
  for (int it = 1; it <= opt.max_newton; ++it) {
    const auto l = linearize(field, x, opt.fd_step);
    if (!l) return std::nullopt;
    const double g = tangent.x * (x.x - base.x) + tangent.p * (x.p - base.p) - ds;
    const double det = l->fx * tangent.p - l->fp * tangent.x;
    if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
    const double dx = (-l->f * tangent.p + g * l->fp) / det;
    const double dp = (-g * l->fx + l->f * tangent.x) / det;
    x.x += dx;
    x.p += dp;
    const double step = std::hypot(dx, dp);
    if (step <= 1e-11 * (1.0 + norm(x))) {
      const auto s = field.S(std::exp(x.x), x.p);
      if (s && std::abs(*s) <= opt.residual_tolerance) {
        const auto fin = linearize(field, x, opt.fd_step);
        if (!fin) return std::nullopt;
        return Corrected{x, *fin, it};
      }
    }
  }
  return std::nullopt;
}

// Secant iterations on p -> F(x0, p) starting from the bifurcation value.
std::optional<double> departure_exponent(const ShootingField& field, double x0, double p0) {
  double pa = p0, pb = p0 + 1e-4;
  auto fa = field.F(x0, pa), fb = field.F(x0, pb);
  for (int it = 0; it < 50 && fa && fb; ++it) {
    if (*fb == *fa) break;
    const double pc = pb - *fb * (pb - pa) / (*fb - *fa);
    pa = pb;
    fa = fb;
    pb = pc;
    fb = field.F(x0, pb);
    if (std::abs(pb - pa) <= 1e-14 * std::abs(pb)) return pb;
  }
  return std::nullopt;
}

std::string format_radius(double r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

double point_segment_distance(std::pair<double, double> q, std::pair<double, double> a,
                              std::pair<double, double> b) {
  const double vx = b.first - a.first, vy = b.second - a.second;
  const double wx = q.first - a.first, wy = q.second - a.second;
  const double len2 = vx * vx + vy * vy;
  const double t = len2 > 0.0 ? std::clamp((wx * vx + wy * vy) / len2, 0.0, 1.0) : 0.0;
  return std::hypot(wx - t * vx, wy - t * vy);
}

double directed_hausdorff(const std::vector<std::pair<double, double>>& from,
                          const std::vector<std::pair<double, double>>& to, double lo, double hi) {
  double worst = 0.0;
  for (const auto& q : from) {
    if (q.second < lo || q.second > hi) continue;
    double best = std::numeric_limits<double>::infinity();
    if (to.size() == 1) best = std::hypot(q.first - to[0].first, q.second - to[0].second);
    for (std::size_t i = 0; i + 1 < to.size(); ++i) best = std::min(best, point_segment_distance(q, to[i], to[i + 1]));
    worst = std::max(worst, best);
  }
  return worst;
}

} // namespace

std::vector<Bifurcation> detect_bifurcations(int dimension, double radius, int i_max) {
  if (i_max < 2) throw std::invalid_argument("i_max must be at least 2");
  const auto eig = radial_neumann_eigenvalues(dimension, radius, i_max);
  std::vector<Bifurcation> out;
  for (int i = 2; i <= i_max; ++i) out.push_back({i, 1.0 + eig[i - 1], 2.0 + eig[i - 1]});
  return out;
}

std::string to_string(Direction d) { return d == Direction::Upper ? "upper" : "lower"; }

Direction direction_from_string(const std::string& text) {
  if (text == "upper") return Direction::Upper;
  if (text == "lower") return Direction::Lower;
  throw std::invalid_argument("direction must be upper or lower, got '" + text + "'");
}

int count_crossings_of_one(const Profile& profile) {
  int count = 0;
  int last = 0;
  for (double u : profile.values()) {
    const int s = u > 1.0 ? 1 : (u < 1.0 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

Branch trace_branch(int dimension, double radius, int index, Direction direction, const ContinuationOptions& opt) {
  if (index < 2) throw std::invalid_argument("branch index must be at least 2");
  if (!(opt.step > 0.0)) throw std::invalid_argument("step must be positive");
  const double crit = 2.0 * dimension / (dimension - 2.0);
  const double p_max = std::isnan(opt.p_max) ? crit + 2.0 : opt.p_max;
  const double origin = detect_bifurcations(dimension, radius, index).back().p;
  const ShootingField field(dimension, radius, opt.integration);
  const double sign = direction == Direction::Upper ? 1.0 : -1.0;

  Branch br{dimension, radius, index, origin, direction, {}, {}, ""};

  auto accept = [&](Vec2 x, Vec2 t, double arclength) {
    const double a = std::exp(x.x);
    auto prof = integrate(RadialProblem(dimension, radius, x.p), a, radius, opt.integration);
    const double residual = std::abs(prof.slopes().back());
    const int zeros = count_crossings_of_one(prof);
    br.profiles.push_back(std::move(prof));
    br.points.push_back({x.p, a, br.profiles.size() - 1, zeros, arclength, residual, t.x, t.p});
  };

  const double x0 = std::log1p(sign * opt.departure);
  const auto p0 = departure_exponent(field, x0, origin);
  if (!p0) throw StallError("could not leave the trivial branch at p=" + format_double(origin), br);
  Vec2 x{x0, *p0};
  auto lin = linearize(field, x, opt.fd_step);
  if (!lin) throw StallError("departure point could not be linearized", br);
  Vec2 t = tangent_of(*lin);
  if (t.x * sign < 0.0) t = {-t.x, -t.p};
  accept(x, t, 0.0);

  double ds = opt.step;
  double arclength = 0.0;
  const double max_step = opt.max_step_factor * opt.step;
  while (static_cast<int>(br.points.size()) < opt.max_points) {
    if (ds < opt.min_step) throw StallError("step underflow at p=" + format_double(x.p), br);
    const auto c = correct(field, x, t, ds, opt);
    if (!c || std::hypot(c->point.x - x.x, c->point.p - x.p) > 2.0 * ds) {
      ds *= 0.5;
      continue;
    }
    if (c->point.x * sign <= 0.0) {
      if (ds > 1e-3 * opt.step) {
        ds *= 0.5;
        continue;
      }
      br.stop_reason = "returned to a=1";
      return br;
    }
    const double a = std::exp(c->point.x);
    if (c->point.p < opt.p_min || c->point.p > p_max) {
      br.stop_reason = "p limit";
      return br;
    }
    if (a > opt.a_max) {
      br.stop_reason = "a limit";
      return br;
    }
    Vec2 nt = tangent_of(c->lin);
    if (nt.x * t.x + nt.p * t.p < 0.0) nt = {-nt.x, -nt.p};
    if (std::abs(nt.x * t.p - nt.p * t.x) > std::sin(opt.max_turn)) {
      ds *= 0.5;
      continue;
    }
    arclength += std::hypot(c->point.x - x.x, c->point.p - x.p);
    x = c->point;
    t = nt;
    accept(x, t, arclength);
    if (c->iterations <= 2) ds = std::min(1.3 * ds, max_step);
  }
  br.stop_reason = "max points";
  return br;
}

std::vector<Branch> trace_branches(int dimension, double radius, const std::vector<std::pair<int, Direction>>& requests,
                                   const ContinuationOptions& options) {
  const long n = static_cast<long>(requests.size());
  std::vector<std::optional<Branch>> out(requests.size());
  std::vector<std::exception_ptr> errors(requests.size());
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < n; ++k) {
    try {
      out[k] = trace_branch(dimension, radius, requests[k].first, requests[k].second, options);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Branch> result;
  for (auto& b : out) result.push_back(std::move(*b));
  return result;
}

std::vector<std::pair<double, double>> branch_curve(const Branch& branch, int subdivisions) {
  std::vector<std::pair<double, double>> c;
  const auto& pts = branch.points;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    c.emplace_back(pts[k].p, pts[k].a);
    if (k + 1 == pts.size() || subdivisions <= 1) continue;
    const auto& u = pts[k];
    const auto& v = pts[k + 1];
    const double x0 = std::log(u.a), x1 = std::log(v.a);
    const double h = std::hypot(x1 - x0, v.p - u.p);
    for (int j = 1; j < subdivisions; ++j) {
      const double s = static_cast<double>(j) / subdivisions;
      const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
      const double h01 = s * s * (3 - 2 * s), h11 = -s * s * (1 - s);
      const double x = h00 * x0 + h10 * h * u.tangent_x + h01 * x1 + h11 * h * v.tangent_x;
      const double p = h00 * u.p + h10 * h * u.tangent_p + h01 * v.p + h11 * h * v.tangent_p;
      c.emplace_back(p, std::exp(x));
    }
  }
  return c;
}

double hausdorff_distance(const Branch& first, const Branch& second, int subdivisions) {
  return hausdorff_distance(branch_curve(first, subdivisions), branch_curve(second, subdivisions));
}

double hausdorff_distance(const std::vector<std::pair<double, double>>& first,
                          const std::vector<std::pair<double, double>>& second) {
  if (first.empty() || second.empty()) throw std::invalid_argument("Hausdorff distance of an empty curve");
  auto range = [](const auto& c) {
    auto [lo, hi] = std::minmax_element(c.begin(), c.end(), [](auto& u, auto& v) { return u.second < v.second; });
    return std::pair{lo->second, hi->second};
  };
  const auto [lo1, hi1] = range(first);
  const auto [lo2, hi2] = range(second);
  const double lo = std::max(lo1, lo2), hi = std::min(hi1, hi2);
  if (lo > hi) throw std::invalid_argument("curves do not overlap in a");
  return std::max(directed_hausdorff(first, second, lo, hi), directed_hausdorff(second, first, lo, hi));
}

std::string branch_file_name(const Branch& b) {
  return "branch_N" + std::to_string(b.dimension) + "_R" + format_radius(b.radius) + "_i" +
         std::to_string(b.origin_index) + "_" + to_string(b.direction) + ".csv";
}

void write_branch_csv(std::ostream& os, const Branch& branch) {
  std::ostringstream buf;
  buf << "p,u0,a,zeros,arclength\n";
  for (const auto& pt : branch.points)
    buf << format_double(pt.p) << ',' << format_double(branch.profile(pt).center_value()) << ','
        << format_double(pt.a) << ',' << pt.zeros << ',' << format_double(pt.arclength) << '\n';
  os << buf.str();
}

std::vector<BranchRow> read_branch_csv(std::istream& is) {
  std::vector<BranchRow> rows;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "p,u0,a,zeros,arclength") throw IoError("branch CSV: unexpected header '" + line + "'");
      header = true;
      continue;
    }
    std::istringstream row(line);
    std::string f[5];
    for (int k = 0; k < 5; ++k)
      if (!std::getline(row, f[k], ',')) throw IoError("branch CSV: malformed row '" + line + "'");
    try {
      rows.push_back({std::stod(f[0]), std::stod(f[1]), std::stod(f[2]), std::stoi(f[3]), std::stod(f[4])});
    } catch (const std::exception&) {
      throw IoError("branch CSV: non-numeric row '" + line + "'");
    }
  }
  if (!header) throw IoError("branch CSV: missing header");
  return rows;
}

double revalidate_branch(int dimension, double radius, const std::vector<BranchRow>& rows,
                         const IntegrationSettings& settings) {
  double worst = 0.0;
  for (const auto& r : rows) {
    const auto e = integrate_endpoint(RadialProblem(dimension, radius, r.p), r.a, radius, settings);
    worst = std::max(worst, e.truncated ? std::numeric_limits<double>::infinity() : std::abs(e.du));
  }
  return worst;
}

std::filesystem::path bifurcation_diagram(int dimension, double radius, const std::vector<Branch>& branches,
                                          const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  std::ostringstream index;
  index << "# N=" << dimension << "\n# R=" << format_double(radius)
        << "\n# critical_exponent=" << format_double(2.0 * dimension / (dimension - 2.0)) << '\n';
  index << "file,i,direction,origin_p,points,stop_reason\n";
  for (const auto& b : branches) {
    if (b.dimension != dimension || b.radius != radius)
      throw std::invalid_argument("branch does not belong to this diagram");
    std::ostringstream csv;
    write_branch_csv(csv, b);
    const auto name = branch_file_name(b);
    write_file_atomically(directory / name, csv.str());
    index << name << ',' << b.origin_index << ',' << to_string(b.direction) << ',' << format_double(b.origin_p)
          << ',' << b.points.size() << ',' << b.stop_reason << '\n';
  }
  const auto path = directory / ("diagram_N" + std::to_string(dimension) + "_R" + format_radius(radius) + "_index.csv");
  write_file_atomically(path, index.str());
  return path;
}

BlowupReport blowup_diagnostics(const Branch& branch, int tail) {
  if (tail < 2 || static_cast<int>(branch.points.size()) < tail)
    throw NumericalError(ErrorKind::InsufficientTail, "branch has " + std::to_string(branch.points.size()) +
                                                          " points, tail of " + std::to_string(tail) + " requested");
  const int n = branch.dimension;
  const double crit = 2.0 * n / (n - 2.0);
  BlowupReport rep{};
  for (std::size_t k = branch.points.size() - tail; k < branch.points.size(); ++k) {
    const auto& pt = branch.points[k];
    const auto& prof = branch.profile(pt);
    const double mu = mu_from_center(n, pt.p, pt.a);
    const double r = prof.problem().radius();
    rep.samples.push_back({pt.p, pt.a, mu, decomposition_residual(prof, nullptr, mu),
                           pohozaev_residual(prof, r).relative_residual(), prof.value(0.5 * r)});
  }
  // ln|2* - p| against ln mu.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  bool defined = true;
  for (const auto& s : rep.samples) {
    const double gap = std::abs(crit - s.p);
    if (gap == 0.0) defined = false;
    const double lx = std::log(s.mu), ly = std::log(gap);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double m = static_cast<double>(rep.samples.size());
  const double den = m * sxx - sx * sx;
  rep.trend_slope = defined && den > 1e-300 ? (m * sxy - sx * sy) / den : std::numeric_limits<double>::quiet_NaN();

  auto sorted = rep.samples;
  std::sort(sorted.begin(), sorted.end(), [](const auto& u, const auto& v) { return u.a < v.a; });
  rep.probe_decreasing = sorted.back().a > sorted.front().a;
  for (std::size_t k = 1; k < sorted.size(); ++k)
    rep.probe_decreasing = rep.probe_decreasing && sorted[k].probe <= sorted[k - 1].probe;
  return rep;
}

Metadata blowup_metadata(const BlowupReport& report) {
  Metadata m;
  m.set("samples", static_cast<int>(report.samples.size()));
  m.set("trend_slope", report.trend_slope);
  m.set("probe_decreasing", report.probe_decreasing);
  for (std::size_t k = 0; k < report.samples.size(); ++k) {
    const auto& s = report.samples[k];
    const std::string pre = "sample" + std::to_string(k) + ".";
    m.set(pre + "p", s.p);
    m.set(pre + "a", s.a);
    m.set(pre + "mu", s.mu);
    m.set(pre + "decomposition_residual", s.decomposition_residual);
    m.set(pre + "pohozaev_residual", s.pohozaev_residual);
    m.set(pre + "probe", s.probe);
  }
  return m;
}

} // namespace linni
