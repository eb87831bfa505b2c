#include "linni/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "linni/asymptotics.hpp"
#include "linni/bvp.hpp"
#include "linni/continuation.hpp"
#include "linni/diagnostics.hpp"
#include "linni/error.hpp"
#include "linni/greenmass.hpp"
#include "linni/io.hpp"
#include "linni/metadata.hpp"

namespace linni::cli {

namespace fs = std::filesystem;

namespace {

/// Shortest round-trip spelling, used only inside file names.
std::string tag(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& key, const std::string& text) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size()) throw std::invalid_argument(key + ": not a number: '" + text + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw std::invalid_argument(key + ": not a boolean: '" + text + "'");
}

ConfigLayer layer_from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs) {
  ConfigLayer c;
  for (const auto& [k, v] : pairs) {
    if (k == "tolerance") c.tolerance = parse_number(k, v);
    else if (k == "overflow_cap") c.overflow_cap = parse_number(k, v);
    else if (k == "outdir") c.outdir = v;
    else if (k == "overwrite") c.overwrite = parse_bool(k, v);
    else throw std::invalid_argument("unknown config key '" + k + "'");
  }
  return c;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

class Context {
public:
  Context(RunConfig config, std::ostream& out) : config_(std::move(config)), out_(out) {}

  const RunConfig& config() const { return config_; }
  std::ostream& out() const { return out_; }

  IntegrationSettings integration() const {
    return {.tolerance = config_.tolerance, .overflow_cap = config_.overflow_cap};
  }

  fs::path target(const std::string& name) const { return config_.outdir / name; }

  void guard(const fs::path& path) const {
    if (!config_.overwrite && fs::exists(path))
      throw IoError("refusing to overwrite existing " + path.generic_string());
  }

  void emit(const std::string& name, const std::string& contents) const {
    const fs::path path = target(name);
    guard(path);
    write_file_atomically(path, contents);
    out_ << "file=" << path.generic_string() << '\n';
  }

  void emit(const std::string& name, const Metadata& meta) const {
    std::ostringstream os;
    write_metadata(os, meta);
    emit(name, os.str());
  }

  void print(const Metadata& meta) const { write_metadata(out_, meta); }

private:
  RunConfig config_;
  std::ostream& out_;
};

void check_outdir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.generic_string() + ": " + ec.message());
  const fs::path probe = dir / ".linni_write_probe";
  {
    std::ofstream os(probe);
    if (!(os << "probe")) throw IoError("output directory " + dir.generic_string() + " is not writable");
  }
  fs::remove(probe, ec);
}

struct ProfileSource {
  std::string path;
  int dimension = 0;
  double exponent = std::numeric_limits<double>::quiet_NaN();
  double mu = std::numeric_limits<double>::quiet_NaN();
};

/// N, p and mu come from the flags first, then from the `.meta` sidecar next
/// to the CSV.  R is the last grid point.
Profile load_profile(const ProfileSource& src) {
  const fs::path path(src.path);
  int n = src.dimension;
  double p = src.exponent, mu = src.mu;
  fs::path side = path;
  side.replace_extension(".meta");
  if (fs::exists(side)) {
    std::ifstream is(side);
    if (!is) throw IoError("cannot open " + side.generic_string());
    const Metadata meta = read_metadata(is);
    if (n == 0 && meta.contains("N")) n = static_cast<int>(meta.number("N"));
    if (std::isnan(p) && meta.contains("p")) p = meta.number("p");
    if (std::isnan(mu) && meta.contains("mu")) mu = meta.number("mu");
  }
  if (n == 0 || std::isnan(p))
    throw std::invalid_argument(path.generic_string() + ": N and p must be given by flags or a .meta sidecar");
  if (std::isnan(mu)) mu = 1.0;
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path.generic_string());
  const RadialProblem problem(n, 1.0, p, mu);
  const Profile raw = read_profile_csv(is, problem);
  auto vec = [](std::span<const double> s) { return std::vector<double>(s.begin(), s.end()); };
  return Profile(problem.with_radius(raw.r_max()), vec(raw.grid()), vec(raw.values()), vec(raw.slopes()),
                 vec(raw.curvatures()));
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

void add_profile_options(CLI::App* sub, ProfileSource& src, bool with_mu = true) {
  sub->add_option("--profile", src.path, "profile CSV (r,u,du)")->required();
  sub->add_option("--N", src.dimension, "dimension, overrides the sidecar");
  sub->add_option("--p", src.exponent, "exponent, overrides the sidecar");
  if (with_mu) sub->add_option("--mu", src.mu, "coefficient, overrides the sidecar");
}

ShootingOptions shooting_options(const Context& ctx) {
  ShootingOptions o;
  o.integration = ctx.integration();
  return o;
}

void emit_solution(const Context& ctx, const std::string& stem, const ShootingResult& res) {
  std::ostringstream csv, side;
  write_shooting_result(csv, side, res);
  ctx.emit(stem + ".csv", csv.str());
  ctx.emit(stem + ".meta", side.str());
}

void emit_branch(const Context& ctx, const Branch& b) {
  std::ostringstream os;
  write_branch_csv(os, b);
  const std::string name = branch_file_name(b);
  ctx.emit(name, os.str());
  Metadata m;
  m.set("N", b.dimension);
  m.set("R", b.radius);
  m.set("i", b.origin_index);
  m.set("direction", to_string(b.direction));
  m.set("origin_p", b.origin_p);
  m.set("points", static_cast<int>(b.points.size()));
  m.set("stop_reason", b.stop_reason);
  ctx.emit(fs::path(name).replace_extension(".meta").string(), m);
  ctx.print(m);
}

int report(std::ostream& err, int code, const std::string& kind, const std::string& message) {
  err << "ERROR " << code << ' ' << kind << ": " << message << '\n';
  return code;
}

} // namespace

ConfigLayer read_config_file(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open config file " + path.generic_string());
  return layer_from_pairs(read_metadata(is).entries());
}

ConfigLayer config_from_environment(const std::map<std::string, std::string>& env) {
  std::vector<std::pair<std::string, std::string>> pairs;
  const std::pair<const char*, const char*> names[] = {{"LINNI_TOLERANCE", "tolerance"},
                                                       {"LINNI_OVERFLOW_CAP", "overflow_cap"},
                                                       {"LINNI_OUTDIR", "outdir"},
                                                       {"LINNI_OVERWRITE", "overwrite"}};
  for (const auto& [var, key] : names) {
    const auto it = env.find(var);
    if (it != env.end()) pairs.emplace_back(key, it->second);
  }
  return layer_from_pairs(pairs);
}

RunConfig resolve_config(const ConfigLayer& flags, const ConfigLayer& env, const ConfigLayer& file) {
  RunConfig c;
  for (const ConfigLayer* l : {&file, &env, &flags}) {
    if (l->tolerance) c.tolerance = *l->tolerance;
    if (l->overflow_cap) c.overflow_cap = *l->overflow_cap;
    if (l->outdir) c.outdir = *l->outdir;
    if (l->overwrite) c.overwrite = *l->overwrite;
  }
  if (!(c.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (!(c.overflow_cap > 0.0)) throw std::invalid_argument("overflow cap must be positive");
  return c;
}

std::map<std::string, std::string> process_environment() {
  std::map<std::string, std::string> env;
  for (const char* name : {"LINNI_TOLERANCE", "LINNI_OUTDIR", "LINNI_OVERFLOW_CAP", "LINNI_OVERWRITE"})
    if (const char* v = std::getenv(name)) env[name] = v;
  return env;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::map<std::string, std::string>& env) {
  CLI::App app{"Radial Neumann problems -Delta u + mu u = |u|^{p-2} u on balls", "linni"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  ConfigLayer flags;
  double flag_tol = 0.0, flag_cap = 0.0;
  std::string flag_outdir, flag_overwrite;
  app.add_option("--config", config_path, "key=value config file");
  auto* o_tol = app.add_option("--tolerance", flag_tol, "integration tolerance");
  auto* o_cap = app.add_option("--overflow-cap", flag_cap, "|u| at which integration stops");
  auto* o_out = app.add_option("--outdir", flag_outdir, "output directory");
  auto* o_ovw = app.add_option("--overwrite", flag_overwrite, "replace existing outputs (true/false)");

  // The handler for the chosen subcommand; set by whichever callback fires.
  std::function<void(const Context&)> action;
  auto command = [&](const std::string& name, const std::string& help) { return app.add_subcommand(name, help); };

  int n = 0, count = 0, samples = 0, index = 0, max_points = 2000, kappa = 1;
  double radius = 0.0, p = 0.0, mu = 1.0, a_lo = 0.0, a_hi = 0.0, delta = 0.0, u0_center = 0.0;
  double r_max = 60.0, threshold = 1e-6, residual_limit = 1e-8;
  std::string direction, regime;
  std::vector<int> i_list;
  bool n4_type_b = false;
  ContinuationOptions cont;
  ProfileSource src, u0_src;

  auto* solve = command("solve", "Neumann solution by shooting on u(0) in [a-lo, a-hi]");
  solve->add_option("--N", n)->required();
  solve->add_option("--R", radius)->required();
  solve->add_option("--p", p)->required();
  solve->add_option("--mu", mu);
  solve->add_option("--a-lo", a_lo)->required();
  solve->add_option("--a-hi", a_hi)->required();
  solve->callback([&] {
    action = [&](const Context& ctx) {
      const RadialProblem prob(n, radius, p, mu);
      const ShootingResult res = solve_neumann(prob, a_lo, a_hi, shooting_options(ctx));
      if (!res.converged)
        throw NumericalError(ErrorKind::NonConvergence,
                             "shooting stopped with |u'(R)| = " + format_double(std::abs(res.boundary_slope)));
      emit_solution(ctx, "solve_N" + std::to_string(n) + "_R" + tag(radius) + "_p" + tag(p) + "_mu" + tag(mu), res);
      ctx.print(shooting_metadata(res));
    };
  });

  auto* scan = command("scan", "all solutions with u(0) in [a-min, a-max]");
  scan->add_option("--N", n)->required();
  scan->add_option("--R", radius)->required();
  scan->add_option("--p", p)->required();
  scan->add_option("--mu", mu);
  scan->add_option("--a-min", a_lo)->required();
  scan->add_option("--a-max", a_hi)->required();
  scan->add_option("--samples", samples)->required()->check(CLI::PositiveNumber);
  scan->callback([&] {
    action = [&](const Context& ctx) {
      const RadialProblem prob(n, radius, p, mu);
      const auto found = scan_solutions(prob, a_lo, a_hi, samples, shooting_options(ctx));
      const std::string stem = "scan_N" + std::to_string(n) + "_R" + tag(radius) + "_p" + tag(p) + "_mu" + tag(mu);
      std::ostringstream list;
      list << "k,a,boundary_slope,converged,iterations,sup_norm\n";
      for (std::size_t k = 0; k < found.size(); ++k) {
        const auto& s = found[k];
        list << k << ',' << format_double(s.center_value) << ',' << format_double(s.boundary_slope) << ','
             << (s.converged ? "true" : "false") << ',' << s.iterations << ','
             << format_double(s.profile.sup_norm()) << '\n';
        emit_solution(ctx, stem + "_k" + std::to_string(k), s);
      }
      ctx.emit(stem + ".csv", list.str());
      ctx.out() << "solutions=" << found.size() << '\n';
    };
  });

  auto* eigs = command("eigs", "radial Neumann eigenvalues of -Delta + 1");
  eigs->add_option("--N", n)->required();
  eigs->add_option("--R", radius)->required();
  eigs->add_option("--count", count)->required()->check(CLI::PositiveNumber);
  eigs->callback([&] {
    action = [&](const Context& ctx) {
      const auto lambda = radial_neumann_eigenvalues(n, radius, count);
      std::ostringstream os;
      os << "j,lambda,p_bifurcation,p_cited\n";
      for (std::size_t j = 0; j < lambda.size(); ++j)
        os << j + 1 << ',' << format_double(lambda[j]) << ',' << format_double(1.0 + lambda[j]) << ','
           << format_double(2.0 + lambda[j]) << '\n';
      ctx.emit("eigs_N" + std::to_string(n) + "_R" + tag(radius) + ".csv", os.str());
      ctx.out() << os.str();
    };
  });

  auto continuation_flags = [&](CLI::App* sub) {
    sub->add_option("--step", cont.step, "initial arclength step");
    sub->add_option("--max-points", max_points, "points per branch")->check(CLI::PositiveNumber);
    sub->add_option("--p-min", cont.p_min);
    sub->add_option("--p-max", cont.p_max, "defaults to 2* + 2");
    sub->add_option("--a-max", cont.a_max);
  };

  auto* branch = command("branch", "trace one half-branch from the i-th bifurcation");
  branch->add_option("--N", n)->required();
  branch->add_option("--R", radius)->required();
  branch->add_option("--i", index)->required();
  branch->add_option("--direction", direction)->required()->check(CLI::IsMember({"upper", "lower"}));
  continuation_flags(branch);
  branch->callback([&] {
    action = [&](const Context& ctx) {
      cont.max_points = max_points;
      cont.integration = ctx.integration();
      try {
        emit_branch(ctx, trace_branch(n, radius, index, direction_from_string(direction), cont));
      } catch (const StallError& e) {
        emit_branch(ctx, e.partial());
        throw;
      }
    };
  });

  auto* diagram = command("diagram", "both half-branches for every i, plus an index");
  diagram->add_option("--N", n)->required();
  diagram->add_option("--R", radius)->required();
  diagram->add_option("--i-list", i_list, "comma-separated indices")->required()->delimiter(',');
  continuation_flags(diagram);
  diagram->callback([&] {
    action = [&](const Context& ctx) {
      cont.max_points = max_points;
      cont.integration = ctx.integration();
      std::vector<std::pair<int, Direction>> requests;
      for (int i : i_list)
        for (Direction d : {Direction::Upper, Direction::Lower}) requests.emplace_back(i, d);
      const auto branches = trace_branches(n, radius, requests, cont);
      for (const auto& b : branches) ctx.guard(ctx.target(branch_file_name(b)));
      ctx.guard(ctx.target("diagram_N" + std::to_string(n) + "_R" + tag(radius) + "_index.csv"));
      const fs::path index_path = bifurcation_diagram(n, radius, branches, ctx.config().outdir);
      for (const auto& b : branches)
        ctx.out() << "file=" << ctx.target(branch_file_name(b)).generic_string() << '\n';
      ctx.out() << "index=" << index_path.generic_string() << '\n';
    };
  });

  auto* green = command("green-mass", "Neumann Green function of -Delta + mu at the center and its mass");
  green->add_option("--N", n)->required();
  green->add_option("--R", radius)->required();
  green->add_option("--mu", mu);
  green->callback([&] {
    action = [&](const Context& ctx) {
      GreenOptions opt;
      opt.tolerance = ctx.config().tolerance;
      const GreenProfile g = green_radial(n, radius, Potential{mu}, opt);
      const MassResult m = mass_at_origin(g);
      const std::string stem = "N" + std::to_string(n) + "_R" + tag(radius) + "_mu" + tag(mu);
      std::ostringstream os;
      write_green_csv(os, g);
      ctx.emit("green_" + stem + ".csv", os.str());
      Metadata meta = mass_metadata(m);
      meta.set("mu", mu);
      ctx.emit("mass_" + stem + ".meta", meta);
      ctx.print(meta);
    };
  });

  auto* rstar = command("rstar", "radius where the N=3 mass of -Delta + mu vanishes");
  rstar->add_option("--mu", mu);
  rstar->callback([&] {
    action = [&](const Context& ctx) {
      Metadata m;
      m.set("mu", mu);
      m.set("rstar", exceptional_radius_dim3(mu));
      ctx.print(m);
    };
  });

  auto* radii = command("dim6-radii", "extrema of the N=6, p=3, u(0)=1/2 entire profile");
  radii->add_option("--count", count)->required()->check(CLI::PositiveNumber);
  radii->add_option("--r-max", r_max);
  radii->callback([&] {
    action = [&](const Context& ctx) {
      const auto rl = exceptional_radii_dim6(count, r_max, ctx.integration());
      std::ostringstream os;
      os << "l,R\n";
      for (std::size_t l = 0; l < rl.size(); ++l) os << l + 1 << ',' << format_double(rl[l]) << '\n';
      ctx.emit("dim6_radii.csv", os.str());
      ctx.out() << os.str();
    };
  });

  auto* nondeg = command("nondeg", "linearized solution at a Neumann solution");
  add_profile_options(nondeg, src);
  nondeg->add_option("--threshold", threshold, "relative |v'(R)| below which the solution is degenerate");
  nondeg->add_option("--residual", residual_limit, "largest |u'(R)| accepted as a solution");
  nondeg->callback([&] {
    action = [&](const Context& ctx) {
      Profile u = load_profile(src);
      const double slope = u.slopes().back();
      if (!(std::abs(slope) <= residual_limit))
        throw NumericalError(ErrorKind::NonConvergence,
                             "profile has |u'(R)| = " + format_double(std::abs(slope)) + ", not a Neumann solution");
      const double a = u.center_value();
      const ShootingResult base{std::move(u), a, slope, true, 0};
      const NondegReport rep = nondegeneracy_check(base, threshold, ctx.integration());
      const std::string stem = "nondeg_" + stem_of(src.path);
      std::ostringstream os;
      write_profile_csv(os, rep.v_profile);
      ctx.emit(stem + "_v.csv", os.str());
      Metadata m;
      m.set("v_slope_at_R", rep.v_slope_at_R);
      m.set("margin", rep.margin);
      m.set("threshold", threshold);
      m.set("degenerate", rep.degenerate);
      ctx.emit(stem + ".meta", m);
      ctx.print(m);
    };
  });

  auto* poho = command("pohozaev", "Pohozaev identity on B_delta");
  add_profile_options(poho, src);
  poho->add_option("--delta", delta)->required();
  poho->callback([&] {
    action = [&](const Context& ctx) {
      const Metadata m = pohozaev_metadata(pohozaev_residual(load_profile(src), delta));
      ctx.emit("pohozaev_" + stem_of(src.path) + ".meta", m);
      ctx.print(m);
    };
  });

  auto* classify = command("classify", "blow-up classification rows");
  classify->add_option("--N", n)->required();
  classify->add_option("--regime", regime)->required()->check(CLI::IsMember({"sub", "crit", "super"}));
  classify->callback([&] {
    action = [&](const Context& ctx) {
      std::ostringstream os;
      os << "N,regime,statement,allowed,condition,external\n";
      for (const auto& e : classify_blowup(n, regime_from_string(regime))) {
        std::string allowed;
        for (Allowed a : e.allowed) allowed += (allowed.empty() ? "" : ";") + to_string(a);
        os << e.dimension << ',' << to_string(e.regime) << ',' << csv_field(e.statement) << ','
           << csv_field(allowed) << ',' << csv_field(e.condition) << ',' << (e.external ? "true" : "false")
           << '\n';
      }
      ctx.emit("classify_N" + std::to_string(n) + "_" + regime + ".csv", os.str());
      ctx.out() << os.str();
    };
  });

  auto* energy = command("reduced-energy", "coefficients and critical point of the reduced energy");
  energy->add_option("--N", n)->required();
  energy->add_option("--regime", regime)->required()->check(CLI::IsMember({"sub", "crit", "super"}));
  energy->add_option("--u0-center", u0_center)->required();
  energy->add_flag("--n4-type-b", n4_type_b, "log form used for N=4 without a weak limit");
  energy->callback([&] {
    action = [&](const Context& ctx) {
      const auto model = make_reduced_energy_model(n, regime_from_string(regime), u0_center, n4_type_b);
      Metadata m;
      m.set("N", n);
      m.set("regime", regime);
      m.set("u0_center", u0_center);
      m.set("special_n4_type_b", model.special_n4_type_b);
      m.set("c4", model.c4);
      m.set("c5", model.c5);
      m.set("c5_cited", model.c5_cited);
      if (model.t0) {
        m.set("t0", *model.t0);
        m.set("H_t0", reduced_energy(model, *model.t0));
      } else {
        m.set("t0", std::string("none"));
      }
      const std::string stem = "reduced_energy_N" + std::to_string(n) + "_" + regime + "_u0" + tag(u0_center);
      std::ostringstream curve;
      curve << "t,H\n";
      constexpr int points = 300;
      for (int k = 1; k <= points; ++k) {
        const double t = 3.0 * k / points;
        curve << format_double(t) << ',' << format_double(reduced_energy(model, t)) << '\n';
      }
      ctx.emit(stem + ".csv", curve.str());
      ctx.emit(stem + ".meta", m);
      ctx.print(m);
    };
  });

  auto* decompose = command("decompose", "distance of a profile from u0 + kappa bubbles");
  add_profile_options(decompose, src, false);
  decompose->add_option("--u0-profile", u0_src.path, "weak limit profile; u0 = 0 when absent");
  decompose->add_option("--mu", mu, "concentration parameter of the bubble")->required();
  decompose->add_option("--kappa", kappa)->check(CLI::PositiveNumber);
  decompose->callback([&] {
    action = [&](const Context& ctx) {
      const Profile u = load_profile(src);
      std::optional<Profile> u0;
      if (!u0_src.path.empty()) {
        u0_src.dimension = u.problem().dimension();
        u0_src.exponent = u.problem().exponent();
        u0 = load_profile(u0_src);
      }
      Metadata m;
      m.set("bubble_mu", mu);
      m.set("kappa", kappa);
      m.set("residual", decomposition_residual(u, u0 ? &*u0 : nullptr, mu, kappa));
      ctx.emit("decompose_" + stem_of(src.path) + ".meta", m);
      ctx.print(m);
    };
  });

  auto* constants = command("constants", "Sobolev constant, bubble moments and beta_N");
  constants->add_option("--N", n)->required();
  constants->callback([&] {
    action = [&](const Context& ctx) {
      std::ostringstream os;
      write_constants_csv(os, constants_table(n));
      ctx.emit("constants_N" + std::to_string(n) + ".csv", os.str());
      ctx.out() << os.str();
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return report(err, Usage, "Usage", e.what());
  } catch (const std::invalid_argument& e) {
    return report(err, Usage, "Usage", e.what());
  }

  try {
    ConfigLayer file;
    if (!config_path.empty()) file = read_config_file(config_path);
    if (o_tol->count()) flags.tolerance = flag_tol;
    if (o_cap->count()) flags.overflow_cap = flag_cap;
    if (o_out->count()) flags.outdir = flag_outdir;
    if (o_ovw->count()) flags.overwrite = parse_bool("--overwrite", flag_overwrite);
    const RunConfig config = resolve_config(flags, config_from_environment(env), file);
    check_outdir(config.outdir);
    action(Context(config, out));
    return Success;
  } catch (const IoError& e) {
    return report(err, InputOutput, "Io", e.what());
  } catch (const NumericalError& e) {
    return report(err, Numerical, to_string(e.kind()), e.what());
  } catch (const fs::filesystem_error& e) {
    return report(err, InputOutput, "Io", e.what());
  } catch (const std::invalid_argument& e) {
    return report(err, Usage, "Usage", e.what());
  } catch (const std::out_of_range& e) {
    return report(err, Usage, "Usage", e.what());
  } catch (const std::exception& e) {
    return report(err, Numerical, "Internal", e.what());
  }
}

} // namespace linni::cli
