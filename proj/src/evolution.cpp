#include "lphvg/evolution.hpp"

#include <cmath>
#include <limits>

#include "lphvg/error.hpp"
#include "lphvg/generators.hpp"
#include "lphvg/metrics.hpp"
#include "lphvg/parallel.hpp"
#include "lphvg/random.hpp"
#include "lphvg/simd/kernels.hpp"

namespace lphvg {
namespace {

// Sub-stream family reserved for path-length pair sampling.
constexpr std::uint64_t kPathSamplingStream = ~std::uint64_t{0};

void require_theta(double theta) {
  if (!(theta > 0.0)) throw ValidationError("threshold theta must be > 0");
}

SquareMatrix<double> distances_from_bits(const std::vector<AdjacencyBits>& bits) {
  const std::size_t t = bits.size();
  SquareMatrix<double> d(t, 0.0);
  for (std::size_t m = 1; m < t; ++m) {
    if (bits[m].node_count() != bits[0].node_count()) {
      throw ValidationError("graph distance needs equal node counts");
    }
  }
  // Row m holds pairs (m, n > m); rows are independent.
  parallel_for(t, [&](std::size_t m) {
    for (std::size_t n = m + 1; n < t; ++n) {
      const auto diff = simd::xor_popcount(bits[m].words(), bits[n].words());
      d(m, n) = std::sqrt(static_cast<double>(diff));
    }
  });
  for (std::size_t m = 0; m < t; ++m) {
    for (std::size_t n = m + 1; n < t; ++n) d(n, m) = d(m, n);
  }
  return d;
}

}  // namespace

std::vector<WindowRange> make_windows(std::size_t n, const WindowConfig& cfg) {
  if (!(cfg.step > 0 && cfg.step < cfg.window_len)) {
    throw ValidationError("window config needs 0 < step < window_len (step=" + std::to_string(cfg.step) +
                          ", window_len=" + std::to_string(cfg.window_len) + ")");
  }
  if (n < cfg.window_len) {
    throw ValidationError("series length " + std::to_string(n) + " is shorter than the window length " +
                          std::to_string(cfg.window_len));
  }
  const std::size_t count = (n - cfg.window_len) / cfg.step + 1;
  std::vector<WindowRange> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = {i * cfg.step, i * cfg.step + cfg.window_len};
  return out;
}

double graph_distance(const VisibilityGraph& a, const VisibilityGraph& b) {
  if (a.node_count() != b.node_count()) {
    throw ValidationError("graph distance needs equal node counts (" + std::to_string(a.node_count()) + " vs " +
                          std::to_string(b.node_count()) + ")");
  }
  const AdjacencyBits ba(a);
  const AdjacencyBits bb(b);
  return std::sqrt(static_cast<double>(simd::xor_popcount(ba.words(), bb.words())));
}

SquareMatrix<double> distance_matrix(std::span<const VisibilityGraph> graphs) {
  std::vector<AdjacencyBits> bits;
  bits.reserve(graphs.size());
  for (const auto& g : graphs) bits.emplace_back(g);
  return distances_from_bits(bits);
}

std::vector<VisibilityGraph> window_graphs(const TimeSeries& series, const std::vector<WindowRange>& windows,
                                           Penetrability rho) {
  std::vector<VisibilityGraph> graphs(windows.size());
  parallel_for(windows.size(), [&](std::size_t w) {
    graphs[w] = build_lphvg(series.slice(windows[w].begin, windows[w].end), rho);
  });
  return graphs;
}

double threshold_from_random(const WindowConfig& cfg, std::size_t series_len, Penetrability rho,
                             const RngConfig& rng, std::size_t ensemble) {
  if (ensemble < 1) throw ValidationError("threshold ensemble must be >= 1");
  const auto windows = make_windows(series_len, cfg);
  if (windows.size() < 2) {
    throw ValidationError("threshold needs at least two windows per reference series");
  }
  double theta = std::numeric_limits<double>::infinity();
  for (std::size_t e = 0; e < ensemble; ++e) {
    IidSpec spec;
    spec.family = IidFamily::kUniform;
    spec.n = series_len;
    spec.rng = derive_stream(rng, e);
    const auto graphs = window_graphs(gen_iid(spec), windows, rho);
    const auto d = distance_matrix(graphs);
    for (std::size_t m = 0; m < d.size(); ++m) {
      for (std::size_t n = m + 1; n < d.size(); ++n) theta = std::min(theta, d(m, n));
    }
  }
  if (!(theta > 0.0)) throw NumericError("reference ensemble produced identical windows; theta is 0");
  return theta;
}

SquareMatrix<double> correlation_index(const SquareMatrix<double>& distances, double theta) {
  require_theta(theta);
  SquareMatrix<double> gamma(distances.size(), 0.0);
  for (std::size_t m = 0; m < distances.size(); ++m) {
    for (std::size_t n = 0; n < distances.size(); ++n) {
      const double d = distances(m, n);
      gamma(m, n) = d < theta ? 1.0 - d / theta : 0.0;
    }
  }
  return gamma;
}

SquareMatrix<std::uint8_t> recurrence_matrix(const SquareMatrix<double>& distances, double theta) {
  require_theta(theta);
  SquareMatrix<std::uint8_t> r(distances.size(), 0);
  for (std::size_t m = 0; m < distances.size(); ++m) {
    for (std::size_t n = 0; n < distances.size(); ++n) r(m, n) = theta - distances(m, n) > 0.0 ? 1 : 0;
  }
  return r;
}

EvolutionResult evolve(const TimeSeries& series, Penetrability rho, const WindowConfig& cfg, const RngConfig& rng,
                       std::size_t ensemble) {
  const auto windows = make_windows(series.size(), cfg);
  const auto graphs = window_graphs(series, windows, rho);

  EvolutionResult result;
  result.window_count = windows.size();
  result.per_window.resize(windows.size());
  parallel_for(windows.size(), [&](std::size_t w) {
    auto& m = result.per_window[w];
    m.range = windows[w];
    m.mean_degree = mean_degree_empirical(graphs[w]);
    m.mean_clustering = mean_clustering(graphs[w]);
    m.mean_path_length = mean_path_length(graphs[w], std::nullopt, derive_stream(derive_stream(rng, kPathSamplingStream), w));
  });
  result.distances = distance_matrix(graphs);
  result.theta = threshold_from_random(cfg, series.size(), rho, rng, ensemble);
  result.gamma = correlation_index(result.distances, result.theta);
  result.recurrence = recurrence_matrix(result.distances, result.theta);
  return result;
}

}  // namespace lphvg
