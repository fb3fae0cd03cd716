// lphvg: limited penetrable horizontal visibility graphs from the command line.
//
//   generate      write a generated series (CSV) and its flat key=value spec
//   build         edge list or adjacency matrix of one series
//   theory        closed-form degree / clustering / long-range tables
//   verify        i.i.d. ensemble checked against the closed forms
//   discriminate  chaos vs i.i.d. verdict for one series
//   evolve        sliding-window recurrence analysis
//   replay        rerun a manifest into a new directory
//
// Every run writes manifest.json next to its outputs. Exit codes: 0 ok,
// 1 invalid input, 2 numeric/runtime failure, 3 verify thresholds failed.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>

#include "cli_support.hpp"
#include "lphvg/error.hpp"
#include "lphvg/evolution.hpp"
#include "lphvg/generators.hpp"
#include "lphvg/graph.hpp"
#include "lphvg/metrics.hpp"
#include "lphvg/random.hpp"
#include "lphvg/theory.hpp"

namespace {

using namespace lphvg;
using namespace lphvg::cli;
namespace fs = std::filesystem;
using nlohmann::json;

std::string row(std::initializer_list<std::string> cells) {
  std::string out;
  for (const auto& c : cells) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out + '\n';
}

std::string num(double v) { return format_real(v); }
template <class I>
std::string num_i(I v) {
  return std::to_string(v);
}

// --- generate -------------------------------------------------------------

struct GenerateCmd {
  SourceOptions source;
  std::string outdir = ".";

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("generate", "write a generated series");
    source.add_generator_options(*sub);
    sub->add_option("--outdir", outdir, "output directory")->capture_default_str();
  }

  int run(const CLI::App& sub) {
    if (source.family.empty() && source.system.empty()) throw ValidationError("give --family or --system");
    const TimeSeries series = source.generate();
    Config config = collect_config(sub);
    std::string ini;
    for (const auto& [k, v] : config) ini += k + "=" + v + "\n";
    OutputSet out(outdir);
    out.add("series.csv", format_series_csv(series));
    out.add("spec.ini", ini);
    out.commit("generate", config);
    std::cout << "wrote " << series.size() << " samples to " << (out.dir() / "series.csv").string() << "\n";
    return 0;
  }
};

// --- build ----------------------------------------------------------------

struct BuildCmd {
  SourceOptions source;
  std::uint32_t rho = 0;
  std::string format = "edges";
  std::string outdir = ".";

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("build", "construct the graph of a series");
    source.add_file_options(*sub);
    sub->get_option("--input")->required();
    sub->add_option("--rho", rho, "penetrable distance")->required();
    sub->add_option("--format", format, "edges: 'i j' lines; matrix: 0/1 CSV (n <= 2000)")
        ->check(CLI::IsMember({"edges", "matrix"}))
        ->capture_default_str();
    sub->add_option("--outdir", outdir, "output directory")->capture_default_str();
  }

  int run(const CLI::App& sub) {
    const TimeSeries series = source.load();
    const VisibilityGraph graph = build_lphvg(series, Penetrability(rho));
    OutputSet out(outdir);
    if (format == "edges") {
      out.add("edges.txt", format_edge_list(graph));
    } else {
      out.add("adjacency.csv", format_adjacency_csv(graph));
    }
    out.commit("build", collect_config(sub));
    std::cout << graph.node_count() << " nodes, " << graph.edge_count() << " edges\n";
    return 0;
  }
};

// --- theory ---------------------------------------------------------------

struct TheoryCmd {
  std::uint32_t rho = 1;
  std::int64_t k_max = 40;
  std::int64_t max_sep = 30;
  std::string scope = "strict";
  std::string outdir = ".";

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("theory", "tabulate the closed-form predictions");
    sub->add_option("--rho", rho, "penetrable distance")->capture_default_str();
    sub->add_option("--k-max", k_max, "largest degree tabulated")->capture_default_str();
    sub->add_option("--max-sep", max_sep, "largest separation tabulated")->capture_default_str();
    sub->add_option("--scope", scope, "unvalidated allows clustering bounds for rho > 2")
        ->check(CLI::IsMember({"strict", "unvalidated"}))
        ->capture_default_str();
    sub->add_option("--outdir", outdir, "output directory")->capture_default_str();
  }

  int run(const CLI::App& sub) {
    const Penetrability r(rho);
    const auto sc = scope == "strict" ? theory::Scope::kStrict : theory::Scope::kUnvalidated;
    if (k_max < theory::min_degree(r)) throw ValidationError("--k-max is below the minimum degree");
    if (max_sep < 1) throw ValidationError("--max-sep must be >= 1");
    std::string degree = row({"k", "pmf", "c_min", "c_max", "c_max_extrapolated"});
    for (std::int64_t k = theory::min_degree(r); k <= k_max; ++k) {
      const auto lo = theory::clustering_min(r, k, sc);
      const auto hi = theory::clustering_max(r, k, sc);
      degree += row({num_i(k), num(theory::degree_pmf(r, k)), num(lo.value), num(hi.value), hi.extrapolated ? "1" : "0"});
    }
    std::string longr = row({"sep", "probability", "rank_probability"});
    for (std::int64_t s = 1; s <= max_sep; ++s) {
      longr += row({num_i(s), num(theory::long_visibility_prob(r, s)), num(theory::long_visibility_prob_exact(r, s))});
    }
    OutputSet out(outdir);
    out.add("degree.csv", degree);
    out.add("long_range.csv", longr);
    out.commit("theory", collect_config(sub));
    std::cout << "rho=" << rho << ": mean degree " << theory::mean_degree(r) << ", decay rate "
              << theory::decay_rate(r) << "\n";
    return 0;
  }
};

// --- verify ---------------------------------------------------------------

struct VerifyCmd {
  std::uint32_t rho = 1;
  std::size_t n = 3000;
  std::size_t seeds = 10;
  std::uint64_t seed = 0;
  std::string family = "uniform";
  double error_max = 0.15;
  double min_expected = 50.0;
  double coverage_min = 0.99;
  std::size_t max_sep = 30;
  double sigma = 3.0;
  std::string long_range_law = "printed";
  std::string outdir = ".";

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("verify", "check an i.i.d. ensemble against the closed forms");
    sub->add_option("--rho", rho, "penetrable distance")->capture_default_str();
    sub->add_option("--n", n, "samples per series")->capture_default_str();
    sub->add_option("--seeds", seeds, "ensemble size")->capture_default_str();
    sub->add_option("--seed", seed, "base seed; member s uses stream s")->capture_default_str();
    sub->add_option("--family", family, "i.i.d. family")
        ->check(CLI::IsMember({"uniform", "gaussian", "powerlaw"}))
        ->capture_default_str();
    sub->add_option("--error-max", error_max, "largest relative pmf error allowed")->capture_default_str();
    sub->add_option("--min-expected", min_expected, "pmf bins checked: expected count per series >= this")
        ->capture_default_str();
    sub->add_option("--coverage-min", coverage_min, "fraction of interior nodes inside the clustering bounds")
        ->capture_default_str();
    sub->add_option("--max-sep", max_sep, "largest separation checked")->capture_default_str();
    sub->add_option("--sigma", sigma, "long-range tolerance in standard errors")->capture_default_str();
    sub->add_option("--long-range-law", long_range_law, "printed closed form or rank-counting value")
        ->check(CLI::IsMember({"printed", "rank"}))
        ->capture_default_str();
    sub->add_option("--outdir", outdir, "output directory")->capture_default_str();
  }

  int run(const CLI::App& sub) {
    if (seeds < 2) throw ValidationError("--seeds must be >= 2 (the long-range error is estimated across series)");
    if (max_sep < 1) throw ValidationError("--max-sep must be >= 1");
    warn_if_short(n);
    const Penetrability r(rho);
    const auto fam = family == "uniform" ? IidFamily::kUniform
                     : family == "gaussian" ? IidFamily::kGaussian
                                            : IidFamily::kPowerLaw;

    struct Member {
      DegreeDistribution dist;
      FiniteSizeReport report;
      ClusteringCoverage coverage;
      std::vector<double> freq;  // by separation 1..max_sep
    };
    std::vector<Member> members(seeds);
    for (std::size_t s = 0; s < seeds; ++s) {
      IidSpec spec;
      spec.family = fam;
      spec.n = n;
      spec.rng = derive_stream({seed, 0}, s);
      const VisibilityGraph g = build_lphvg(gen_iid(spec), r);
      Member& m = members[s];
      m.dist = degree_distribution(g);
      m.report = finite_size_report(m.dist, r);
      m.coverage = clustering_coverage(g);
      for (std::size_t sep = 1; sep <= max_sep; ++sep) m.freq.push_back(link_frequency(g, sep).frequency());
    }

    json checks = json::object();
    bool all_pass = true;
    auto record = [&](const std::string& name, bool pass, json detail) {
      detail["pass"] = pass;
      checks[name] = std::move(detail);
      all_pass = all_pass && pass;
    };

    // Degree law on the pooled ensemble.
    DegreeDistribution pooled;
    for (const auto& m : members) pooled.merge(m.dist);
    const FiniteSizeReport pooled_report = finite_size_report(pooled, r);
    std::string pmf = row({"k", "count", "pmf", "theory_pmf", "error", "checked"});
    double worst = 0.0;
    std::size_t checked = 0;
    for (const auto& bin : pooled_report.per_k) {
      const bool in_scope = static_cast<double>(n) * bin.theory_pmf >= min_expected;
      if (in_scope) {
        worst = std::max(worst, bin.error);
        ++checked;
      }
      pmf += row({num_i(bin.k), num_i(bin.count), num(bin.pmf), num(bin.theory_pmf), num(bin.error), in_scope ? "1" : "0"});
    }
    record("degree_pmf", checked > 0 && worst < error_max,
           {{"bins_checked", checked}, {"max_error", worst}, {"limit", error_max}});

    std::string finite = row({"seed", "me_mean", "me_sum", "k0"});
    for (std::size_t s = 0; s < seeds; ++s) {
      const auto& rep = members[s].report;
      finite += row({num_i(s), num(rep.me_mean), num(rep.me_sum), num_i(rep.k0)});
    }

    ClusteringCoverage total;
    std::string coverage = row({"seed", "interior", "inside", "below_min", "above_max", "fraction"});
    for (std::size_t s = 0; s < seeds; ++s) {
      const auto& c = members[s].coverage;
      coverage += row({num_i(s), num_i(c.interior), num_i(c.inside), num_i(c.below_min), num_i(c.above_max),
                       num(c.fraction())});
      total.interior += c.interior;
      total.inside += c.inside;
      total.below_min += c.below_min;
      total.above_max += c.above_max;
    }
    record("clustering_coverage", total.fraction() >= coverage_min,
           {{"fraction", total.fraction()}, {"below_min", total.below_min}, {"above_max", total.above_max},
            {"limit", coverage_min}});

    std::string longr = row({"sep", "mean_frequency", "std_error", "predicted", "z", "pass"});
    bool long_pass = true;
    double worst_z = 0.0;
    for (std::size_t sep = 1; sep <= max_sep; ++sep) {
      double mean = 0.0;
      for (const auto& m : members) mean += m.freq[sep - 1];
      mean /= static_cast<double>(seeds);
      double var = 0.0;
      for (const auto& m : members) var += (m.freq[sep - 1] - mean) * (m.freq[sep - 1] - mean);
      const double se = std::sqrt(var / static_cast<double>(seeds - 1) / static_cast<double>(seeds));
      const auto s = static_cast<std::int64_t>(sep);
      const double predicted = long_range_law == "printed" ? theory::long_visibility_prob(r, s)
                                                           : theory::long_visibility_prob_exact(r, s);
      bool pass;
      double z = 0.0;
      if (sep <= rho + 1) {
        pass = mean == 1.0;
      } else {
        z = se > 0.0 ? std::abs(mean - predicted) / se : (mean == predicted ? 0.0 : INFINITY);
        pass = z <= sigma;
        worst_z = std::max(worst_z, z);
      }
      long_pass = long_pass && pass;
      longr += row({num_i(sep), num(mean), num(se), num(predicted), num(z), pass ? "1" : "0"});
    }
    record("long_range", long_pass, {{"max_z", worst_z}, {"sigma", sigma}, {"law", long_range_law}});

    const Config config = collect_config(sub);
    json summary = {{"rho", rho}, {"n", n}, {"seeds", seeds}, {"family", family}, {"checks", checks}, {"pass", all_pass}};
    OutputSet out(outdir);
    out.add("pmf.csv", pmf);
    out.add("finite_size.csv", finite);
    out.add("coverage.csv", coverage);
    out.add("long_range.csv", longr);
    out.add("summary.json", summary.dump(2) + "\n");
    out.commit("verify", config);

    for (const auto& [name, c] : checks.items()) {
      std::cout << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << name << " " << c.dump() << "\n";
    }
    return all_pass ? 0 : kExitChecksFailed;
  }
};

// --- discriminate ---------------------------------------------------------

struct DiscriminateCmd {
  SourceOptions source;
  std::uint32_t rho = 1;
  double sigma = 3.0;
  double gof_alpha = 1e-3;
  std::optional<double> coverage_min;
  std::string outdir = ".";

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("discriminate", "chaos vs i.i.d. verdict for one series");
    source.add_file_options(*sub);
    source.add_generator_options(*sub);
    sub->add_option("--rho", rho, "penetrable distance")->capture_default_str();
    sub->add_option("--sigma", sigma, "decay-rate tolerance in standard errors")->capture_default_str();
    sub->add_option("--gof-alpha", gof_alpha, "chi-square p-value below which the law is rejected")
        ->capture_default_str();
    sub->add_option("--coverage-min", coverage_min, "also require this clustering-bound coverage");
    sub->add_option("--outdir", outdir, "output directory")->capture_default_str();
  }

  int run(const CLI::App& sub) {
    const TimeSeries series = source.make();
    warn_if_short(series.size());
    DiscriminationConfig dc;
    dc.sigma = sigma;
    dc.gof_alpha = gof_alpha;
    dc.coverage_min = coverage_min;
    dc.soft_min_length = kSoftMinLength;
    const Verdict v = discriminate(series, Penetrability(rho), dc);
    const Config config = collect_config(sub);

    json tail = nullptr;
    if (v.tail) {
      tail = {{"lambda_hat", v.tail->lambda_hat}, {"std_error", v.tail->std_error},
              {"sampling_error", v.tail->sampling_error}, {"k_lo", v.tail->k_lo}, {"k_hi", v.tail->k_hi},
              {"r2", v.tail->r2}, {"bins", v.tail->bins}};
    }
    json record = {
        {"verdict", v.label},
        {"rho", rho},
        {"length", v.length},
        {"below_soft_floor", v.below_soft_floor},
        {"mean_degree", v.mean_degree},
        {"lambda_theory", v.lambda_theory},
        {"tail_fit", tail},
        {"lambda_z", v.tail ? json(v.lambda_z) : json(nullptr)},
        {"lambda_consistent", v.lambda_consistent},
        {"goodness_of_fit", {{"chi2", v.gof.chi2}, {"dof", v.gof.dof}, {"p_value", v.gof.p_value}, {"bins", v.gof.bins}}},
        {"gof_consistent", v.gof_consistent},
        {"coverage",
         {{"interior", v.coverage.interior}, {"inside", v.coverage.inside}, {"below_min", v.coverage.below_min},
          {"above_max", v.coverage.above_max}, {"fraction", v.coverage.fraction()}}},
        {"finite_size", {{"me_mean", v.finite_size.me_mean}, {"me_sum", v.finite_size.me_sum}, {"k0", v.finite_size.k0}}},
        {"config", config},
    };
    if (!v.tail_note.empty()) record["tail_note"] = v.tail_note;

    std::string degree = row({"k", "count", "pmf", "theory_pmf", "error"});
    for (const auto& bin : v.finite_size.per_k) {
      degree += row({num_i(bin.k), num_i(bin.count), num(bin.pmf), num(bin.theory_pmf), num(bin.error)});
    }
    OutputSet out(outdir);
    out.add("verdict.json", record.dump(2) + "\n");
    out.add("degree.csv", degree);
    out.commit("discriminate", config);

    std::cout << v.label;
    if (v.tail) std::cout << " (decay-rate z=" << v.lambda_z << ", chi-square p=" << v.gof.p_value << ")";
    else std::cout << " (" << v.tail_note << ")";
    std::cout << "\n";
    return 0;
  }
};

// --- evolve ---------------------------------------------------------------

struct EvolveCmd {
  SourceOptions source;
  std::uint32_t rho = 1;
  std::size_t window_len = 500;
  std::size_t step = 100;
  std::uint64_t seed = 0;
  std::size_t ensemble = kDefaultThresholdEnsemble;
  std::string outdir = ".";

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("evolve", "sliding-window distance, correlation and recurrence matrices");
    source.add_file_options(*sub);
    sub->get_option("--input")->required();
    sub->add_option("--rho", rho, "penetrable distance")->capture_default_str();
    sub->add_option("--window-len", window_len, "window length L in samples")->capture_default_str();
    sub->add_option("--step", step, "window step l in samples")->capture_default_str();
    sub->add_option("--seed", seed, "seed of the random reference ensemble and path sampling")->capture_default_str();
    sub->add_option("--ensemble", ensemble, "random series in the threshold reference")->capture_default_str();
    sub->add_option("--outdir", outdir, "output directory")->capture_default_str();
  }

  int run(const CLI::App& sub) {
    const TimeSeries series = source.load();
    const EvolutionResult r = evolve(series, Penetrability(rho), {window_len, step}, {seed, 0}, ensemble);

    const bool labels = series.has_labels();
    std::string metrics = labels ? row({"window", "begin", "end", "begin_label", "end_label", "mean_degree",
                                        "mean_clustering", "mean_path_length"})
                                 : row({"window", "begin", "end", "mean_degree", "mean_clustering", "mean_path_length"});
    for (std::size_t w = 0; w < r.window_count; ++w) {
      const auto& m = r.per_window[w];
      if (labels) {
        metrics += row({num_i(w), num_i(m.range.begin), num_i(m.range.end), series.labels()[m.range.begin],
                        series.labels()[m.range.end - 1], num(m.mean_degree), num(m.mean_clustering),
                        num(m.mean_path_length)});
      } else {
        metrics += row({num_i(w), num_i(m.range.begin), num_i(m.range.end), num(m.mean_degree),
                        num(m.mean_clustering), num(m.mean_path_length)});
      }
    }
    std::size_t recurrent = 0;
    for (std::size_t i = 0; i < r.window_count; ++i)
      for (std::size_t j = 0; j < r.window_count; ++j) recurrent += (i != j && r.recurrence(i, j)) ? 1 : 0;
    const std::size_t off = r.window_count * (r.window_count - 1);
    const double density = off ? static_cast<double>(recurrent) / static_cast<double>(off) : 0.0;
    json summary = {{"window_count", r.window_count}, {"theta", r.theta}, {"recurrence_density", density}};

    OutputSet out(outdir);
    out.add("distances.csv", format_matrix(r.distances));
    out.add("gamma.csv", format_matrix(r.gamma));
    out.add("recurrence.csv", format_matrix(r.recurrence));
    out.add("window_metrics.csv", metrics);
    out.add("evolution.json", summary.dump(2) + "\n");
    out.commit("evolve", collect_config(sub));
    std::cout << r.window_count << " windows, theta=" << r.theta << ", off-diagonal recurrence density " << density
              << "\n";
    return 0;
  }
};

// --- driver ---------------------------------------------------------------

int run(std::vector<std::string> args);

struct ReplayCmd {
  std::string manifest;
  std::string outdir;

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("replay", "rerun the configuration stored in a manifest");
    sub->add_option("--manifest", manifest, "manifest.json of an earlier run")->required();
    sub->add_option("--outdir", outdir, "directory for the replayed outputs")->required();
  }

  int run_replay() {
    std::ifstream in(manifest);
    if (!in) throw ValidationError("cannot open manifest " + manifest);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ValidationError("manifest " + manifest + " is not valid JSON: " + e.what());
    }
    const Manifest m = Manifest::from_json(j);
    if (m.subcommand == "replay") throw ValidationError("a manifest cannot replay itself");
    return run(config_to_args(m.subcommand, m.config, outdir));
  }
};

int run(std::vector<std::string> args) {
  CLI::App app{"Limited penetrable horizontal visibility graphs"};
  app.name("lphvg");
  app.set_version_flag("--version", LPHVG_VERSION);
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  GenerateCmd generate;
  BuildCmd build;
  TheoryCmd theory_cmd;
  VerifyCmd verify;
  DiscriminateCmd disc;
  EvolveCmd evolve_cmd;
  ReplayCmd replay;
  generate.attach(app);
  build.attach(app);
  theory_cmd.attach(app);
  verify.attach(app);
  disc.attach(app);
  evolve_cmd.attach(app);
  replay.attach(app);
  for (auto* sub : app.get_subcommands({})) {
    if (sub->get_name() != "replay") sub->add_option("--config", "flat key=value file of option values");
  }

  args = expand_config_file(args);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string& name = sub->get_name();
  if (name == "generate") return generate.run(*sub);
  if (name == "build") return build.run(*sub);
  if (name == "theory") return theory_cmd.run(*sub);
  if (name == "verify") return verify.run(*sub);
  if (name == "discriminate") return disc.run(*sub);
  if (name == "evolve") return evolve_cmd.run(*sub);
  return replay.run_replay();
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(std::vector<std::string>(argv + 1, argv + argc));
  } catch (const lphvg::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const lphvg::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 2;
  }
}
