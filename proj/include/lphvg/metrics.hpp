#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lphvg/graph.hpp"
#include "lphvg/series.hpp"

namespace lphvg {

// Degree histogram. Pooling several graphs of the same size gives the
// ensemble-averaged distribution.
struct DegreeDistribution {
  std::map<std::int64_t, std::uint64_t> counts;
  std::uint64_t n = 0;

  std::uint64_t count(std::int64_t k) const;
  double pmf(std::int64_t k) const;
  double mean() const;
  std::int64_t max_degree() const;
  void merge(const DegreeDistribution& other);
};

DegreeDistribution degree_distribution(const VisibilityGraph& graph);

// Triangles through `node` over C(k,2); 0 when degree < 2.
double local_clustering(const VisibilityGraph& graph, NodeId node);

double mean_degree_empirical(const VisibilityGraph& graph);
double mean_clustering(const VisibilityGraph& graph);

inline constexpr std::size_t kExactPathLengthMaxNodes = 2000;
inline constexpr std::uint64_t kDefaultPathSamplePairs = 20000;

// Average shortest-path length over ordered pairs. Exact for graphs up to
// kExactPathLengthMaxNodes nodes; larger graphs use `sample_pairs` random
// pairs drawn from `rng`.
double mean_path_length(const VisibilityGraph& graph, std::optional<std::uint64_t> sample_pairs = std::nullopt,
                        const RngConfig& rng = {});

struct FiniteSizeBin {
  std::int64_t k = 0;
  std::uint64_t count = 0;
  double pmf = 0.0;
  double theory_pmf = 0.0;
  double error = 0.0;  // |pmf - theory| / theory
};

struct FiniteSizeReport {
  std::vector<FiniteSizeBin> per_k;  // k = 2(rho+1) .. max observed degree
  double me_mean = 0.0;              // mean of E(k) over per_k
  double me_sum = 0.0;               // sum of E(k) over per_k
  std::int64_t k0 = 0;               // first k with count 0 or E(k) > threshold
};

inline constexpr double kDefaultCutoffThreshold = 1.0;

FiniteSizeReport finite_size_report(const DegreeDistribution& dist, Penetrability rho,
                                    double e_threshold = kDefaultCutoffThreshold);

// Mean E(k) over bins with k < k_end. Comparing sizes needs a common range:
// the full-support mean keeps adding noisy tail bins as N grows.
double mean_error_below(const FiniteSizeReport& report, std::int64_t k_end);

struct TailFit {
  double lambda_hat = 0.0;
  double std_error = 0.0;       // from the fit residuals
  double sampling_error = 0.0;  // from counting noise alone: var ln pmf(k) ~ 1/count(k)
  std::int64_t k_lo = 0;
  std::int64_t k_hi = 0;
  double r2 = 0.0;
  std::size_t bins = 0;
};

inline constexpr std::uint64_t kMinTailBinCount = 5;

// Least squares of ln pmf(k) on k over bins in [2(rho+1), k_hi] holding at
// least kMinTailBinCount nodes. k_hi defaults to k0 - 1: the bin at k0 is
// empty or already off by more than 100%. Needs 4 such bins; otherwise
// ValidationError.
TailFit fit_tail(const DegreeDistribution& dist, Penetrability rho, std::optional<std::int64_t> k_hi = std::nullopt);

struct LinkFrequency {
  std::size_t pairs = 0;
  std::size_t linked = 0;
  double frequency() const { return pairs == 0 ? 0.0 : static_cast<double>(linked) / static_cast<double>(pairs); }
};

// Fraction of index pairs (i, i+sep) that are linked.
LinkFrequency link_frequency(const VisibilityGraph& graph, std::size_t sep);

struct ClusteringCoverage {
  std::size_t interior = 0;
  std::size_t inside = 0;
  std::size_t below_min = 0;
  std::size_t above_max = 0;
  double fraction() const { return interior ? static_cast<double>(inside) / static_cast<double>(interior) : 0.0; }
};

// Interior nodes (index in [rho+1, n-rho-2]) whose clustering lies in
// [C_min(k), C_max(k)] up to 1e-12, using the clamped max below its domain.
ClusteringCoverage clustering_coverage(const VisibilityGraph& graph);

struct GoodnessOfFit {
  double chi2 = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
  std::size_t bins = 0;
};

inline constexpr double kMinExpectedPerBin = 5.0;

// Pearson chi-square of the degree histogram against the geometric law.
// Bins run upward from 2(rho+1) while the expected count is at least
// kMinExpectedPerBin; lower degrees pool into the first bin and the rest
// into a final tail bin.
GoodnessOfFit degree_goodness_of_fit(const DegreeDistribution& dist, Penetrability rho);

struct DiscriminationConfig {
  double sigma = 3.0;          // allowed |lambda_hat - lambda| in standard errors
  double gof_alpha = 1e-3;     // minimum chi-square p-value
  // When set, also require this clustering-bound coverage fraction.
  std::optional<double> coverage_min;
  std::size_t soft_min_length = 500;
};

inline constexpr const char* kVerdictIid = "consistent-with-iid";
inline constexpr const char* kVerdictDeviating = "deviating";

struct Verdict {
  std::string label;
  Penetrability rho;
  std::size_t length = 0;
  bool below_soft_floor = false;
  double lambda_theory = 0.0;
  std::optional<TailFit> tail;   // absent when no usable exponential range
  std::string tail_note;
  double lambda_z = 0.0;         // |lambda_hat - lambda| / sampling_error
  bool lambda_consistent = false;
  GoodnessOfFit gof;
  bool gof_consistent = false;
  ClusteringCoverage coverage;
  FiniteSizeReport finite_size;
  double mean_degree = 0.0;
  DiscriminationConfig config;
};

Verdict discriminate(const TimeSeries& series, Penetrability rho, const DiscriminationConfig& config = {});

}  // namespace lphvg
