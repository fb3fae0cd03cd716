#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lphvg/graph.hpp"
#include "lphvg/series.hpp"

namespace lphvg {

struct WindowConfig {
  std::size_t window_len = 0;  // L, samples
  std::size_t step = 0;        // l, samples; 0 < l < L
};

struct WindowRange {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive
  friend bool operator==(const WindowRange&, const WindowRange&) = default;
};

template <class T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<const T> row(std::size_t i) const { return std::span<const T>(data_).subspan(i * n_, n_); }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

// T = floor((n - L)/l) + 1 windows [i*l, i*l + L).
std::vector<WindowRange> make_windows(std::size_t n, const WindowConfig& cfg);

// sqrt of the number of ordered pairs (i, j) whose adjacency entries differ.
double graph_distance(const VisibilityGraph& a, const VisibilityGraph& b);

// Pairwise graph_distance; symmetric with a zero diagonal.
SquareMatrix<double> distance_matrix(std::span<const VisibilityGraph> graphs);

std::vector<VisibilityGraph> window_graphs(const TimeSeries& series, const std::vector<WindowRange>& windows,
                                           Penetrability rho);

inline constexpr std::size_t kDefaultThresholdEnsemble = 10;

// Minimum off-diagonal distance over the window pipelines of `ensemble`
// uniform i.i.d. series of length series_len. Member e draws from
// derive_stream(rng, e), so a larger ensemble extends a smaller one.
double threshold_from_random(const WindowConfig& cfg, std::size_t series_len, Penetrability rho,
                             const RngConfig& rng, std::size_t ensemble = kDefaultThresholdEnsemble);

// 1 - d/theta where d < theta, else 0.
SquareMatrix<double> correlation_index(const SquareMatrix<double>& distances, double theta);

// 1 where d < theta, else 0.
SquareMatrix<std::uint8_t> recurrence_matrix(const SquareMatrix<double>& distances, double theta);

struct WindowMetrics {
  WindowRange range;
  double mean_degree = 0.0;
  double mean_clustering = 0.0;
  double mean_path_length = 0.0;
};

struct EvolutionResult {
  std::size_t window_count = 0;
  std::vector<WindowMetrics> per_window;
  SquareMatrix<double> distances;
  double theta = 0.0;
  SquareMatrix<double> gamma;
  SquareMatrix<std::uint8_t> recurrence;
};

EvolutionResult evolve(const TimeSeries& series, Penetrability rho, const WindowConfig& cfg, const RngConfig& rng,
                       std::size_t ensemble = kDefaultThresholdEnsemble);

}  // namespace lphvg
