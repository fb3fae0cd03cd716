#pragma once

#include <filesystem>
#include <string_view>

namespace lphvg {

// Writes to a sibling temp file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace lphvg
