#include "lphvg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <limits>

#include <boost/math/special_functions/gamma.hpp>

#include "lphvg/error.hpp"
#include "lphvg/random.hpp"
#include "lphvg/theory.hpp"

namespace lphvg {

std::uint64_t DegreeDistribution::count(std::int64_t k) const {
  const auto it = counts.find(k);
  return it == counts.end() ? 0 : it->second;
}

double DegreeDistribution::pmf(std::int64_t k) const {
  return n ? static_cast<double>(count(k)) / static_cast<double>(n) : 0.0;
}

double DegreeDistribution::mean() const {
  if (!n) return 0.0;
  double total = 0.0;
  for (const auto& [k, c] : counts) total += static_cast<double>(k) * static_cast<double>(c);
  return total / static_cast<double>(n);
}

std::int64_t DegreeDistribution::max_degree() const { return counts.empty() ? 0 : counts.rbegin()->first; }

void DegreeDistribution::merge(const DegreeDistribution& other) {
  for (const auto& [k, c] : other.counts) counts[k] += c;
  n += other.n;
}

DegreeDistribution degree_distribution(const VisibilityGraph& graph) {
  DegreeDistribution dist;
  for (NodeId i = 0; i < graph.node_count(); ++i) ++dist.counts[static_cast<std::int64_t>(graph.degree(i))];
  dist.n = graph.node_count();
  return dist;
}

namespace {

std::size_t sorted_intersection_size(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

// Hop distances from `source`; every graph built here is connected.
void bfs(const VisibilityGraph& graph, NodeId source, std::vector<std::uint32_t>& dist,
         std::vector<NodeId>& queue) {
  constexpr auto kUnseen = std::numeric_limits<std::uint32_t>::max();
  std::fill(dist.begin(), dist.end(), kUnseen);
  queue.clear();
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    for (NodeId v : graph.neighbors(u)) {
      if (dist[v] == kUnseen) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
}

}  // namespace

double local_clustering(const VisibilityGraph& graph, NodeId node) {
  const auto& nb = graph.neighbors(node);
  const std::size_t k = nb.size();
  if (k < 2) return 0.0;
  std::size_t twice_triangles = 0;
  for (NodeId j : nb) twice_triangles += sorted_intersection_size(nb, graph.neighbors(j));
  return static_cast<double>(twice_triangles) / static_cast<double>(k * (k - 1));
}

double mean_degree_empirical(const VisibilityGraph& graph) {
  return 2.0 * static_cast<double>(graph.edge_count()) / static_cast<double>(graph.node_count());
}

double mean_clustering(const VisibilityGraph& graph) {
  double total = 0.0;
  for (NodeId i = 0; i < graph.node_count(); ++i) total += local_clustering(graph, i);
  return total / static_cast<double>(graph.node_count());
}

double mean_path_length(const VisibilityGraph& graph, std::optional<std::uint64_t> sample_pairs,
                        const RngConfig& rng) {
  if (sample_pairs && *sample_pairs == 0) throw ValidationError("sample_pairs must be positive");
  const std::size_t n = graph.node_count();
  if (n < 2) throw ValidationError("mean path length needs at least 2 nodes");
  std::vector<std::uint32_t> dist(n);
  std::vector<NodeId> queue;
  queue.reserve(n);

  if (n <= kExactPathLengthMaxNodes) {
    std::uint64_t total = 0;
    for (NodeId s = 0; s < n; ++s) {
      bfs(graph, s, dist, queue);
      for (auto d : dist) total += d;
    }
    return static_cast<double>(total) / (static_cast<double>(n) * static_cast<double>(n - 1));
  }

  // Sampled ordered pairs, grouped by source so each BFS serves several pairs.
  Rng gen(rng);
  const std::uint64_t pairs = sample_pairs.value_or(kDefaultPathSamplePairs);
  std::vector<std::pair<NodeId, NodeId>> picks;
  picks.reserve(pairs);
  for (std::uint64_t p = 0; p < pairs; ++p) {
    const auto s = static_cast<NodeId>(gen.below(n));
    auto t = static_cast<NodeId>(gen.below(n - 1));
    if (t >= s) ++t;
    picks.emplace_back(s, t);
  }
  std::sort(picks.begin(), picks.end());
  std::uint64_t total = 0;
  NodeId current = picks.front().first;
  bfs(graph, current, dist, queue);
  for (const auto& [s, t] : picks) {
    if (s != current) {
      current = s;
      bfs(graph, current, dist, queue);
    }
    total += dist[t];
  }
  return static_cast<double>(total) / static_cast<double>(pairs);
}

FiniteSizeReport finite_size_report(const DegreeDistribution& dist, Penetrability rho, double e_threshold) {
  FiniteSizeReport report;
  const std::int64_t k_min = theory::min_degree(rho);
  const std::int64_t k_max = std::max(dist.max_degree(), k_min);
  std::optional<std::int64_t> k0;
  for (std::int64_t k = k_min; k <= k_max; ++k) {
    FiniteSizeBin bin;
    bin.k = k;
    bin.count = dist.count(k);
    bin.pmf = dist.pmf(k);
    bin.theory_pmf = theory::degree_pmf(rho, k);
    bin.error = std::abs(bin.pmf - bin.theory_pmf) / bin.theory_pmf;
    if (!k0 && (bin.count == 0 || bin.error > e_threshold)) k0 = k;
    report.me_sum += bin.error;
    report.per_k.push_back(bin);
  }
  report.me_mean = report.me_sum / static_cast<double>(report.per_k.size());
  report.k0 = k0.value_or(k_max + 1);
  return report;
}

double mean_error_below(const FiniteSizeReport& report, std::int64_t k_end) {
  double sum = 0.0;
  std::size_t bins = 0;
  for (const auto& bin : report.per_k) {
    if (bin.k >= k_end) break;
    sum += bin.error;
    ++bins;
  }
  if (bins == 0) throw ValidationError("no finite-size bins below k = " + std::to_string(k_end));
  return sum / static_cast<double>(bins);
}

LinkFrequency link_frequency(const VisibilityGraph& graph, std::size_t sep) {
  if (sep < 1) throw ValidationError("separation must be >= 1");
  LinkFrequency f;
  const std::size_t n = graph.node_count();
  for (std::size_t i = 0; i + sep < n; ++i) {
    ++f.pairs;
    f.linked += graph.has_edge(static_cast<NodeId>(i), static_cast<NodeId>(i + sep)) ? 1 : 0;
  }
  return f;
}

TailFit fit_tail(const DegreeDistribution& dist, Penetrability rho, std::optional<std::int64_t> k_hi) {
  const std::int64_t k_lo = theory::min_degree(rho);
  const std::int64_t hi = k_hi.value_or(finite_size_report(dist, rho).k0 - 1);
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> counts;
  for (std::int64_t k = k_lo; k <= hi; ++k) {
    const auto c = dist.count(k);
    if (c < kMinTailBinCount) continue;
    counts.push_back(static_cast<double>(c));
    xs.push_back(static_cast<double>(k));
    ys.push_back(std::log(dist.pmf(k)));
  }
  if (xs.size() < 4) {
    throw ValidationError("tail fit needs at least 4 degree bins with >= " + std::to_string(kMinTailBinCount) +
                          " nodes in [" + std::to_string(k_lo) + ", " + std::to_string(hi) + "], found " +
                          std::to_string(xs.size()));
  }
  const double m = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / m;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double sse = 0.0;
  double sampling_var = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (intercept + slope * xs[i]);
    sse += r * r;
    const double w = (xs[i] - mx) / sxx;
    sampling_var += w * w / counts[i];
  }
  TailFit fit;
  fit.lambda_hat = -slope;
  fit.std_error = std::sqrt(sse / (m - 2.0) / sxx);
  fit.sampling_error = std::sqrt(sampling_var);
  fit.k_lo = static_cast<std::int64_t>(xs.front());
  fit.k_hi = static_cast<std::int64_t>(xs.back());
  fit.r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  fit.bins = xs.size();
  return fit;
}

ClusteringCoverage clustering_coverage(const VisibilityGraph& graph) {
  constexpr double kSlack = 1e-12;
  const Penetrability rho = graph.rho();
  const auto scope = rho.rho <= 2 ? theory::Scope::kStrict : theory::Scope::kUnvalidated;
  const std::size_t n = graph.node_count();
  const std::size_t first = rho.rho + 1;
  ClusteringCoverage cov;
  if (n < 2 * first + 1) return cov;
  const std::size_t last = n - rho.rho - 2;
  for (std::size_t i = first; i <= last; ++i) {
    const auto node = static_cast<NodeId>(i);
    const auto k = static_cast<std::int64_t>(graph.degree(node));
    const double c = local_clustering(graph, node);
    ++cov.interior;
    const double lo = theory::clustering_min(rho, k, scope).value;
    const double hi = theory::clustering_max(rho, k, scope).value;
    if (c < lo - kSlack) {
      ++cov.below_min;
    } else if (c > hi + kSlack) {
      ++cov.above_max;
    } else {
      ++cov.inside;
    }
  }
  return cov;
}

GoodnessOfFit degree_goodness_of_fit(const DegreeDistribution& dist, Penetrability rho) {
  const double n = static_cast<double>(dist.n);
  const std::int64_t k_min = theory::min_degree(rho);
  std::vector<double> observed;
  std::vector<double> expected;
  double below = 0.0;
  for (const auto& [k, c] : dist.counts) {
    if (k < k_min) below += static_cast<double>(c);
  }
  double expected_so_far = 0.0;
  double observed_so_far = 0.0;
  for (std::int64_t k = k_min;; ++k) {
    const double e = n * theory::degree_pmf(rho, k);
    if (e < kMinExpectedPerBin) break;
    double o = static_cast<double>(dist.count(k));
    if (k == k_min) o += below;
    observed.push_back(o);
    expected.push_back(e);
    expected_so_far += e;
    observed_so_far += o;
  }
  observed.push_back(n - observed_so_far);
  expected.push_back(n - expected_so_far);

  GoodnessOfFit gof;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double d = observed[i] - expected[i];
    gof.chi2 += d * d / expected[i];
  }
  gof.bins = observed.size();
  gof.dof = gof.bins - 1;
  if (gof.dof == 0) throw ValidationError("goodness of fit needs a longer series (only one usable bin)");
  gof.p_value = boost::math::gamma_q(static_cast<double>(gof.dof) / 2.0, gof.chi2 / 2.0);
  return gof;
}

Verdict discriminate(const TimeSeries& series, Penetrability rho, const DiscriminationConfig& config) {
  Verdict v;
  v.rho = rho;
  v.config = config;
  v.length = series.size();
  v.below_soft_floor = series.size() < config.soft_min_length;
  v.lambda_theory = theory::decay_rate(rho);

  const VisibilityGraph graph = build_lphvg(series, rho);
  const DegreeDistribution dist = degree_distribution(graph);
  v.mean_degree = mean_degree_empirical(graph);
  v.finite_size = finite_size_report(dist, rho);
  try {
    v.tail = fit_tail(dist, rho);
    // Residual scatter understates the noise of sparse tail bins; test
    // against the counting noise instead.
    v.lambda_z = std::abs(v.tail->lambda_hat - v.lambda_theory) / v.tail->sampling_error;
    v.lambda_consistent = v.lambda_z <= config.sigma;
  } catch (const ValidationError& e) {
    // No exponential range before the finite-size cutoff: the law fails outright.
    v.tail_note = e.what();
    v.lambda_consistent = false;
  }
  v.gof = degree_goodness_of_fit(dist, rho);
  v.gof_consistent = v.gof.p_value >= config.gof_alpha;
  v.coverage = clustering_coverage(graph);

  bool iid = v.lambda_consistent && v.gof_consistent;
  if (config.coverage_min) iid = iid && v.coverage.fraction() >= *config.coverage_min;
  v.label = iid ? kVerdictIid : kVerdictDeviating;
  return v;
}

}  // namespace lphvg
