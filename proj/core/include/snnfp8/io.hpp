#pragma once

#include <string>
#include <string_view>

namespace snnfp8 {

/// Writes `contents` to a sibling temp file, then renames it over `path`.
/// Parent directories are created. Throws std::runtime_error on failure.
void write_file_atomic(const std::string& path, std::string_view contents);

std::string read_file(const std::string& path);

}  // namespace snnfp8
