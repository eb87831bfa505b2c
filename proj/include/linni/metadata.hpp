#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace linni {

/// Ordered key=value block used for sidecar files and report serialization.
class Metadata {
public:
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, int value);
  void set(const std::string& key, bool value);

  bool contains(const std::string& key) const;
  const std::string& get(const std::string& key) const;
  double number(const std::string& key) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept {
    return entries_;
  }

private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Doubles print with 17 significant digits.
std::string format_double(double value);

void write_metadata(std::ostream& os, const Metadata& meta);

/// Reads key=value lines; blank lines and '#' comments are ignored.
Metadata read_metadata(std::istream& is);

} // namespace linni
