#include "cli_support.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lphvg/error.hpp"
#include "lphvg/generators.hpp"
#include "lphvg/io.hpp"

#ifndef LPHVG_VERSION
#define LPHVG_VERSION "0.0.0"
#endif

namespace lphvg::cli {

namespace fs = std::filesystem;

nlohmann::json Manifest::to_json() const {
  return {{"tool", "lphvg"}, {"version", version}, {"subcommand", subcommand}, {"config", config},
          {"artifacts", artifacts}};
}

Manifest Manifest::from_json(const nlohmann::json& j) {
  Manifest m;
  try {
    m.subcommand = j.at("subcommand").get<std::string>();
    m.config = j.at("config").get<Config>();
    m.artifacts = j.value("artifacts", std::vector<std::string>{});
    m.version = j.value("version", std::string{});
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

std::vector<std::string> expand_config_file(const std::vector<std::string>& args) {
  if (args.empty()) return args;
  std::optional<std::string> path;
  std::vector<std::string> rest;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!path) return args;

  std::ifstream in(*path);
  if (!in) throw ValidationError("cannot open config file " + *path);
  const std::string& sub = args[0];
  std::vector<std::string> out{sub};
  for (const auto& item : CLI::ConfigINI().from_config(in)) {
    if (item.name == "++" || item.name == "--") continue;  // section markers
    if (!item.parents.empty() && !(item.parents.size() == 1 && item.parents[0] == sub)) {
      throw ValidationError("config file " + *path + ": section [" + item.parents[0] + "] does not match " + sub);
    }
    std::string value;
    for (const auto& v : item.inputs) value += (value.empty() ? "" : ",") + v;
    out.push_back("--" + item.name + "=" + value);
  }
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

Config collect_config(const CLI::App& sub) {
  Config config;
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name == "config" || name == "outdir") continue;
    std::string value = opt->count() > 0 ? opt->results().back() : opt->get_default_str();
    if (value.empty()) continue;
    if (name == "input" || name == "manifest") value = fs::absolute(value).lexically_normal().string();
    config[name] = value;
  }
  return config;
}

std::vector<std::string> config_to_args(const std::string& subcommand, const Config& config, const fs::path& outdir) {
  std::vector<std::string> args{subcommand};
  for (const auto& [key, value] : config) args.push_back("--" + key + "=" + value);
  args.push_back("--outdir=" + outdir.string());
  return args;
}

void OutputSet::add(const std::string& name, std::string contents) { files_.emplace_back(name, std::move(contents)); }

void OutputSet::commit(const std::string& subcommand, const Config& config) const {
  Manifest m;
  m.subcommand = subcommand;
  m.config = config;
  m.version = LPHVG_VERSION;
  for (const auto& [name, contents] : files_) {
    write_file_atomic(dir_ / name, contents);
    m.artifacts.push_back(name);
  }
  write_file_atomic(dir_ / kManifestName, m.to_json().dump(2) + "\n");
}

namespace {

bool parses_as_real(std::string_view cell) {
  while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
  while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' || cell.back() == '\r')) cell.remove_suffix(1);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  return ec == std::errc() && ptr == cell.data() + cell.size();
}

// A header is assumed when the selected cell of the first row is not a number.
bool detect_header(const fs::path& path, const ColumnRef& column) {
  if (column.name) return true;
  std::ifstream in(path);
  std::string line;
  if (!in || !std::getline(in, line)) return false;
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  std::vector<std::string> cells;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
  return column.index >= cells.size() || !parses_as_real(cells[column.index]);
}

std::map<std::string, double> parse_params(const std::string& text) {
  std::map<std::string, double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ValidationError("parameter override '" + item + "' is not name=value");
    const std::string value = item.substr(eq + 1);
    if (!parses_as_real(value)) throw ValidationError("parameter override '" + item + "' has no numeric value");
    out[item.substr(0, eq)] = std::stod(value);
  }
  return out;
}

State3 parse_state(const std::string& text) {
  State3 s{};
  std::stringstream ss(text);
  std::size_t i = 0;
  for (std::string item; std::getline(ss, item, ',');) {
    if (i == 3 || !parses_as_real(item)) throw ValidationError("--init expects three comma-separated numbers");
    s[i++] = std::stod(item);
  }
  if (i != 3) throw ValidationError("--init expects three comma-separated numbers");
  return s;
}

}  // namespace

void SourceOptions::add_file_options(CLI::App& sub) {
  sub.add_option("--input", input, "CSV file holding the series");
  sub.add_option("--column", column, "value column: zero-based index or header name")->capture_default_str();
  sub.add_option("--header", header, "whether the CSV has a header row")
      ->check(CLI::IsMember({"auto", "yes", "no"}))
      ->capture_default_str();
  sub.add_option("--label-column", label_column, "label column: index or header name");
}

void SourceOptions::add_generator_options(CLI::App& sub) {
  auto* fam = sub.add_option("--family", family, "i.i.d. family")->check(CLI::IsMember({"uniform", "gaussian", "powerlaw"}));
  auto* sys = sub.add_option("--system", system, "deterministic or periodic system")
                  ->check(CLI::IsMember({"periodic", "logistic", "henon", "lorenz", "energy"}));
  fam->excludes(sys);
  if (auto* in = sub.get_option_no_throw("--input")) {
    in->excludes(fam);
    in->excludes(sys);
  }
  sub.add_option("--n", n, "number of samples");
  sub.add_option("--seed", seed, "random seed")->capture_default_str();
  sub.add_option("--stream", stream, "random stream")->capture_default_str();
  sub.add_option("--mean", mean, "gaussian mean")->capture_default_str();
  sub.add_option("--sd", sd, "gaussian standard deviation")->capture_default_str();
  sub.add_option("--alpha", alpha, "power-law exponent")->capture_default_str();
  sub.add_option("--xmin", xmin, "power-law lower cutoff")->capture_default_str();
  sub.add_option("--period", period, "periodic: samples per period");
  sub.add_option("--x0", x0, "map start (default: drawn from the seed)");
  sub.add_option("--y0", y0, "henon start y");
  sub.add_option("--mu", mu, "logistic parameter")->capture_default_str();
  sub.add_option("--a", a, "henon a (default 1.4)");
  sub.add_option("--b", b, "henon b (default 0.3)");
  sub.add_option("--transient", transient, "steps discarded before recording");
  sub.add_option("--dt", dt, "flow time step")->capture_default_str();
  sub.add_option("--stride", stride, "flow steps per recorded sample")->capture_default_str();
  sub.add_option("--component", component, "recorded flow coordinate")
      ->check(CLI::IsMember({"x", "y", "z"}))
      ->capture_default_str();
  sub.add_option("--init", init, "flow start x,y,z (default: drawn from the seed)");
  sub.add_option("--params", params, "flow parameter overrides name=value,...");
}

TimeSeries SourceOptions::load() const {
  LoadOptions opts;
  opts.column = ColumnRef::parse(column);
  opts.has_header = header == "yes" || (header == "auto" && detect_header(input, opts.column));
  if (!label_column.empty()) opts.label_column = ColumnRef::parse(label_column);
  return load_series(input, opts);
}

TimeSeries SourceOptions::generate() const {
  if (family.empty() && system.empty()) throw ValidationError("give --input, --family or --system");
  if (n == 0) throw ValidationError("--n is required and must be > 0");
  const RngConfig rng{seed, stream};
  if (!family.empty()) {
    IidSpec spec;
    spec.family = family == "uniform" ? IidFamily::kUniform
                  : family == "gaussian" ? IidFamily::kGaussian
                                         : IidFamily::kPowerLaw;
    spec.n = n;
    spec.rng = rng;
    spec.mean = mean;
    spec.sd = sd;
    spec.alpha = alpha;
    spec.xmin = xmin;
    return gen_iid(spec);
  }
  if (system == "periodic") {
    if (period == 0) throw ValidationError("--period is required for the periodic system");
    return gen_periodic(period, n, rng);
  }
  if (system == "logistic") return gen_logistic(n, x0.value_or(seeded_logistic_x0(rng)), mu, transient.value_or(0));
  if (system == "henon") {
    const auto start = seeded_henon_start(rng);
    return gen_henon(n, x0.value_or(start[0]), y0.value_or(start[1]), a.value_or(1.4), b.value_or(0.3),
                     transient.value_or(0));
  }
  FlowSpec spec = system == "lorenz" ? FlowSpec::lorenz(n) : FlowSpec::energy(n);
  spec.init = init.empty() ? seeded_flow_init(spec.system, rng) : parse_state(init);
  if (!params.empty()) spec.params = parse_params(params);
  if (transient) spec.transient = *transient;
  spec.dt = dt;
  spec.stride = stride;
  spec.component = component == "x" ? 0 : component == "y" ? 1 : 2;
  return gen_flow(spec);
}

namespace {

template <class T, class Cell>
std::string format_square(const SquareMatrix<T>& m, Cell cell) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) out += ',';
      out += cell(m(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace

std::string format_matrix(const SquareMatrix<double>& m) { return format_square(m, format_real); }

std::string format_matrix(const SquareMatrix<std::uint8_t>& m) {
  return format_square(m, [](std::uint8_t v) { return std::string(1, v ? '1' : '0'); });
}

void warn_if_short(std::size_t n) {
  if (n < kSoftMinLength) {
    std::cerr << "warning: series has " << n << " samples (< " << kSoftMinLength
              << "); degree statistics are unreliable at this length\n";
  }
}

}  // namespace lphvg::cli
