#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace linni::cli {

enum ExitCode { Success = 0, Usage = 1, Numerical = 2, InputOutput = 3 };

struct RunConfig {
  double tolerance = 1e-12;
  double overflow_cap = 1e12;
  std::filesystem::path outdir = ".";
  bool overwrite = true;
};

/// Values that may come from any layer; unset fields fall through.
struct ConfigLayer {
  std::optional<double> tolerance;
  std::optional<double> overflow_cap;
  std::optional<std::string> outdir;
  std::optional<bool> overwrite;
};

/// key=value lines with '#' comments; keys tolerance, overflow_cap, outdir, overwrite.
ConfigLayer read_config_file(const std::filesystem::path& path);

/// LINNI_TOLERANCE, LINNI_OUTDIR, LINNI_OVERFLOW_CAP, LINNI_OVERWRITE.
ConfigLayer config_from_environment(const std::map<std::string, std::string>& env);

/// Flags over environment over file over defaults.  Throws std::invalid_argument
/// for nonpositive tolerances or caps.
RunConfig resolve_config(const ConfigLayer& flags, const ConfigLayer& env, const ConfigLayer& file);

/// The LINNI_ variables of the running process.
std::map<std::string, std::string> process_environment();

/// Parses and dispatches `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::map<std::string, std::string>& env);

} // namespace linni::cli
