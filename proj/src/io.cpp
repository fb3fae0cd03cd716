#include "lphvg/io.hpp"

#include <fstream>
#include <system_error>

#include "lphvg/error.hpp"

namespace lphvg {

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw NumericError("cannot open for writing: " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw NumericError("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw NumericError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

}  // namespace lphvg
