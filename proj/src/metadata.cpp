#include "linni/metadata.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "linni/error.hpp"

namespace linni {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void Metadata::set(const std::string& key, const std::string& value) {
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == key; });
  if (it != entries_.end())
    it->second = value;
  else
    entries_.emplace_back(key, value);
}

void Metadata::set(const std::string& key, double value) { set(key, format_double(value)); }
void Metadata::set(const std::string& key, int value) { set(key, std::to_string(value)); }
void Metadata::set(const std::string& key, bool value) { set(key, std::string(value ? "true" : "false")); }

bool Metadata::contains(const std::string& key) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == key; });
}

const std::string& Metadata::get(const std::string& key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return v;
  throw IoError("metadata key '" + key + "' missing");
}

double Metadata::number(const std::string& key) const {
  const auto& v = get(key);
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw IoError("metadata key '" + key + "' is not numeric: '" + v + "'");
  }
}

void write_metadata(std::ostream& os, const Metadata& meta) {
  for (const auto& [k, v] : meta.entries()) os << k << '=' << v << '\n';
}

Metadata read_metadata(std::istream& is) {
  Metadata meta;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    meta.set(line.substr(0, eq), line.substr(eq + 1));
  }
  return meta;
}

} // namespace linni
