#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lphvg/evolution.hpp"
#include "lphvg/series.hpp"

namespace lphvg::cli {

inline constexpr const char* kManifestName = "manifest.json";
inline constexpr std::size_t kSoftMinLength = 500;

// Exit status of `verify` when it ran cleanly but a threshold failed.
inline constexpr int kExitChecksFailed = 3;

using Config = std::map<std::string, std::string>;

struct Manifest {
  std::string subcommand;
  Config config;
  std::vector<std::string> artifacts;  // relative to the output directory
  std::string version;

  nlohmann::json to_json() const;
  static Manifest from_json(const nlohmann::json& j);
};

// Splices the flat key=value entries of `--config FILE` in front of the
// command-line options of the subcommand, so explicit flags win.
std::vector<std::string> expand_config_file(const std::vector<std::string>& args);

// Every option of `sub` that has a value (given or defaulted), keyed by its
// long name. help, config and outdir are not part of the configuration.
Config collect_config(const CLI::App& sub);

// Inverse of collect_config for replay.
std::vector<std::string> config_to_args(const std::string& subcommand, const Config& config,
                                        const std::filesystem::path& outdir);

// Writes the artifacts that are still in memory, then the manifest.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {}
  void add(const std::string& name, std::string contents);
  void commit(const std::string& subcommand, const Config& config) const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::pair<std::string, std::string>> files_;
};

// Where a series comes from: a CSV file or one of the generators.
struct SourceOptions {
  std::string input;
  std::string column = "0";
  std::string header = "auto";  // auto | yes | no
  std::string label_column;

  std::string family;  // uniform | gaussian | powerlaw
  std::string system;  // periodic | logistic | henon | lorenz | energy
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  double mean = 0.0;
  double sd = 1.0;
  double alpha = 2.5;
  double xmin = 1.0;
  std::size_t period = 0;
  std::optional<double> x0;
  std::optional<double> y0;
  double mu = 4.0;
  std::optional<double> a;
  std::optional<double> b;
  std::optional<std::size_t> transient;
  double dt = 0.01;
  std::size_t stride = 1;
  std::string component = "x";
  std::string init;    // "x,y,z"
  std::string params;  // "name=value,..."

  void add_file_options(CLI::App& sub);
  void add_generator_options(CLI::App& sub);
  bool from_file() const { return !input.empty(); }
  TimeSeries load() const;
  TimeSeries generate() const;
  TimeSeries make() const { return from_file() ? load() : generate(); }
};

std::string format_matrix(const SquareMatrix<double>& m);
std::string format_matrix(const SquareMatrix<std::uint8_t>& m);

void warn_if_short(std::size_t n);

}  // namespace lphvg::cli
