#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lphvg {

// Ordered real-valued samples. Values are finite; labels, when present, are
// parallel to values.
class TimeSeries {
 public:
  TimeSeries() = default;
  explicit TimeSeries(std::vector<double> values, std::vector<std::string> labels = {});

  std::span<const double> values() const noexcept { return values_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool has_labels() const noexcept { return !labels_.empty(); }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  // Contiguous sub-range [begin, end), labels carried along.
  TimeSeries slice(std::size_t begin, std::size_t end) const;

 private:
  std::vector<double> values_;
  std::vector<std::string> labels_;
};

// Maximum number of intermediate values allowed at or above the lower
// endpoint of a link. Zero gives the ordinary horizontal visibility graph.
struct Penetrability {
  std::uint32_t rho = 0;

  constexpr Penetrability() = default;
  constexpr explicit Penetrability(std::uint32_t r) : rho(r) {}
  friend constexpr bool operator==(Penetrability, Penetrability) = default;
};

// Seed plus stream id; the same pair always yields the same draws.
struct RngConfig {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  friend constexpr bool operator==(const RngConfig&, const RngConfig&) = default;
};

// Column selector for CSV ingestion: either a header name or a zero-based index.
struct ColumnRef {
  std::optional<std::string> name;
  std::size_t index = 0;

  static ColumnRef by_name(std::string n) { return {std::move(n), 0}; }
  static ColumnRef by_index(std::size_t i) { return {std::nullopt, i}; }
  // Digits-only text selects by index, anything else by name.
  static ColumnRef parse(const std::string& text);
};

struct LoadOptions {
  ColumnRef column = ColumnRef::by_index(0);
  bool has_header = false;
  // When unset and the file has exactly two columns, the other column
  // becomes the label column.
  std::optional<ColumnRef> label_column;
};

TimeSeries load_series(const std::filesystem::path& path, const LoadOptions& options);

// Writes "value" (or "label,value") CSV with a header; values use 17
// significant digits so that load_series reproduces them exactly.
void write_series(const std::filesystem::path& path, const TimeSeries& series);
std::string format_series_csv(const TimeSeries& series);

// Maps every value x to a*x + b. Requires a > 0.
TimeSeries affine_transform(const TimeSeries& series, double a, double b);

// Shortest-safe decimal text used across all CSV exports (17 significant digits).
std::string format_real(double v);

}  // namespace lphvg
