#pragma once

#include <filesystem>
#include <string>

namespace linni {

/// Writes to a temporary sibling and renames it over `path`.  Throws IoError.
void write_file_atomically(const std::filesystem::path& path, const std::string& contents);

} // namespace linni
