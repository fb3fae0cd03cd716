#include "lphvg/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lphvg/error.hpp"
#include "lphvg/io.hpp"

namespace lphvg {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

bool parse_real(std::string_view text, double& out) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end && !text.empty();
}

std::size_t resolve(const ColumnRef& ref, const std::vector<std::string_view>& header,
                    const std::filesystem::path& path) {
  if (!ref.name) return ref.index;
  if (header.empty()) {
    throw ValidationError(path.string() + ": column '" + *ref.name +
                          "' selected by name but the file has no header");
  }
  const auto it = std::find(header.begin(), header.end(), *ref.name);
  if (it == header.end()) {
    throw ValidationError(path.string() + ": no column named '" + *ref.name + "'");
  }
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

TimeSeries::TimeSeries(std::vector<double> values, std::vector<std::string> labels)
    : values_(std::move(values)), labels_(std::move(labels)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw ValidationError("time series value at index " + std::to_string(i) + " is not finite");
    }
  }
  if (!labels_.empty() && labels_.size() != values_.size()) {
    throw ValidationError("time series labels (" + std::to_string(labels_.size()) +
                          ") and values (" + std::to_string(values_.size()) +
                          ") differ in length");
  }
}

TimeSeries TimeSeries::slice(std::size_t begin, std::size_t end) const {
  if (begin > end || end > values_.size()) {
    throw ValidationError("slice [" + std::to_string(begin) + ", " + std::to_string(end) +
                          ") out of range for series of length " +
                          std::to_string(values_.size()));
  }
  std::vector<double> v(values_.begin() + static_cast<std::ptrdiff_t>(begin),
                        values_.begin() + static_cast<std::ptrdiff_t>(end));
  std::vector<std::string> l;
  if (!labels_.empty()) {
    l.assign(labels_.begin() + static_cast<std::ptrdiff_t>(begin),
             labels_.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return TimeSeries(std::move(v), std::move(l));
}

ColumnRef ColumnRef::parse(const std::string& text) {
  if (!text.empty() && std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return by_index(static_cast<std::size_t>(std::stoull(text)));
  }
  return by_name(text);
}

TimeSeries load_series(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open series file: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  std::vector<std::string_view> lines;
  {
    std::string_view rest(text);
    while (!rest.empty()) {
      const auto nl = rest.find('\n');
      if (nl == std::string_view::npos) {
        lines.push_back(rest);
        break;
      }
      lines.push_back(rest.substr(0, nl));
      rest.remove_prefix(nl + 1);
    }
  }
  if (!lines.empty() && lines.front().starts_with("\xEF\xBB\xBF")) lines.front().remove_prefix(3);

  std::vector<std::string_view> header;
  std::size_t first = 0;
  if (options.has_header) {
    if (lines.empty()) throw ValidationError(path.string() + ": empty file");
    header = split_csv(lines.front());
    first = 1;
  }
  const std::size_t value_col = resolve(options.column, header, path);
  std::optional<std::size_t> label_col;
  if (options.label_column) label_col = resolve(*options.label_column, header, path);

  std::vector<double> values;
  std::vector<std::string> labels;
  for (std::size_t r = first; r < lines.size(); ++r) {
    const std::size_t row = r + 1;  // one-based line number in the file
    const auto cells = split_csv(lines[r]);
    if (cells.size() == 1 && cells.front().empty()) {
      throw ValidationError(path.string() + ": blank line at row " + std::to_string(row));
    }
    if (!label_col && !options.label_column && cells.size() == 2 && r == first) {
      label_col = value_col == 0 ? 1 : 0;
    }
    if (value_col >= cells.size()) {
      throw ValidationError(path.string() + ": row " + std::to_string(row) + " has no column " +
                            std::to_string(value_col));
    }
    double v = 0.0;
    if (!parse_real(cells[value_col], v) || !std::isfinite(v)) {
      throw ValidationError(path.string() + ": cannot parse '" + std::string(cells[value_col]) +
                            "' as a finite real at row " + std::to_string(row));
    }
    values.push_back(v);
    if (label_col) {
      if (*label_col >= cells.size()) {
        throw ValidationError(path.string() + ": row " + std::to_string(row) +
                              " has no label column " + std::to_string(*label_col));
      }
      labels.emplace_back(cells[*label_col]);
    }
  }
  if (values.empty()) throw ValidationError(path.string() + ": no data rows");
  return TimeSeries(std::move(values), std::move(labels));
}

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

std::string format_series_csv(const TimeSeries& series) {
  std::string out = series.has_labels() ? "label,value\n" : "value\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series.has_labels()) {
      out += series.labels()[i];
      out += ',';
    }
    out += format_real(series[i]);
    out += '\n';
  }
  return out;
}

void write_series(const std::filesystem::path& path, const TimeSeries& series) {
  write_file_atomic(path, format_series_csv(series));
}

TimeSeries affine_transform(const TimeSeries& series, double a, double b) {
  if (!(a > 0.0)) throw ValidationError("affine_transform requires a > 0");
  std::vector<double> out(series.values().begin(), series.values().end());
  for (double& x : out) x = a * x + b;
  return TimeSeries(std::move(out), series.labels());
}

}  // namespace lphvg
