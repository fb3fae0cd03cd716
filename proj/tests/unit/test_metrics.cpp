#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "lphvg/error.hpp"
#include "lphvg/generators.hpp"
#include "lphvg/metrics.hpp"
#include "lphvg/theory.hpp"

namespace lphvg {
namespace {

VisibilityGraph path_graph(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i);
  return build_lphvg(TimeSeries(v), Penetrability(0));
}

VisibilityGraph k4() { return build_lphvg(TimeSeries({3, 1, 2, 4}), Penetrability(1)); }

TimeSeries uniform(std::size_t n, std::uint64_t seed) {
  IidSpec spec;
  spec.n = n;
  spec.rng = {seed, 0};
  return gen_iid(spec);
}

TEST(DegreeDistribution, SmallGraphs) {
  const auto p = degree_distribution(path_graph(5));
  EXPECT_EQ(p.counts, (std::map<std::int64_t, std::uint64_t>{{1, 2}, {2, 3}}));
  EXPECT_EQ(p.n, 5u);
  const auto k = degree_distribution(k4());
  EXPECT_EQ(k.counts, (std::map<std::int64_t, std::uint64_t>{{3, 4}}));
  EXPECT_DOUBLE_EQ(k.pmf(3), 1.0);
}

TEST(DegreeDistribution, MassAndMeanOnIidInput) {
  const auto g = build_lphvg(uniform(3000, 1), Penetrability(1));
  auto d = degree_distribution(g);
  double mass = 0.0;
  for (const auto& [k, c] : d.counts) mass += d.pmf(k);
  EXPECT_NEAR(mass, 1.0, 1e-12);
  EXPECT_NEAR(d.mean(), 8.0, 0.2);
  EXPECT_DOUBLE_EQ(d.mean(), mean_degree_empirical(g));
  const auto before = d.n;
  d.merge(degree_distribution(g));
  EXPECT_EQ(d.n, 2 * before);
}

TEST(Clustering, SmallGraphs) {
  const auto k = k4();
  for (NodeId i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(local_clustering(k, i), 1.0);
  const auto p = path_graph(5);
  EXPECT_DOUBLE_EQ(local_clustering(p, 2), 0.0);
  EXPECT_DOUBLE_EQ(local_clustering(p, 0), 0.0);
  EXPECT_DOUBLE_EQ(mean_clustering(k), 1.0);
}

TEST(Clustering, CounterexampleAboveMaxBound) {
  // Degree-4 node whose four neighbors are pairwise linked.
  const auto g = build_lphvg(TimeSeries({0.9, 0.5, 0.1, 0.6, 0.9}), Penetrability(1));
  EXPECT_EQ(g.degree(2), 4u);
  EXPECT_DOUBLE_EQ(local_clustering(g, 2), 1.0);
  EXPECT_GT(local_clustering(g, 2), theory::clustering_max(Penetrability(1), 4).value);
}

TEST(PathLength, SmallGraphs) {
  const auto p = path_graph(5);
  EXPECT_DOUBLE_EQ(mean_degree_empirical(p), 1.6);
  EXPECT_DOUBLE_EQ(mean_path_length(p), 2.0);
  EXPECT_DOUBLE_EQ(mean_path_length(k4()), 1.0);
  EXPECT_THROW(mean_path_length(p, 0), ValidationError);
}

TEST(PathLength, SampledOnLargePath) {
  const std::size_t n = 3000;
  const auto p = path_graph(n);
  const double exact = (static_cast<double>(n) + 1.0) / 3.0;
  const double a = mean_path_length(p, 20000, {3, 0});
  EXPECT_NEAR(a, exact, 0.02 * exact);
  EXPECT_EQ(a, mean_path_length(p, 20000, {3, 0}));
}

TEST(MeanDegree, IidRhoTwoNearTwelve) {
  const double m = mean_degree_empirical(build_lphvg(uniform(500, 4), Penetrability(2)));
  EXPECT_LT(m, 12.0);
  EXPECT_GT(m, 12.0 * 0.95);
}

// Counts proportional to the geometric law: count(k) = 4^(k-4) 5^(20-k) for
// k = 4..20, and n = 5^17, so pmf(k) equals P(k) for rho = 1.
DegreeDistribution exact_rho_one_counts() {
  DegreeDistribution d;
  std::uint64_t n = 1;
  for (int i = 0; i < 17; ++i) n *= 5;
  std::uint64_t used = 0;
  for (std::int64_t k = 4; k <= 20; ++k) {
    std::uint64_t c = 1;
    for (std::int64_t i = 0; i < k - 4; ++i) c *= 4;
    for (std::int64_t i = 0; i < 20 - k; ++i) c *= 5;
    d.counts[k] = c;
    used += c;
  }
  d.counts[40] = n - used;
  d.n = n;
  return d;
}

TEST(FiniteSize, ExactLawHasZeroError) {
  const auto report = finite_size_report(exact_rho_one_counts(), Penetrability(1));
  for (const auto& bin : report.per_k) {
    if (bin.k <= 20) EXPECT_NEAR(bin.error, 0.0, 1e-12) << bin.k;
  }
  EXPECT_EQ(report.k0, 21);
  EXPECT_EQ(report.per_k.front().k, 4);
  EXPECT_EQ(report.per_k.back().k, 40);
}

TEST(FiniteSize, RelativeErrorArithmetic) {
  DegreeDistribution d;
  d.counts = {{4, 25}, {5, 75}};
  d.n = 100;
  const auto report = finite_size_report(d, Penetrability(1));
  ASSERT_EQ(report.per_k.front().k, 4);
  EXPECT_NEAR(report.per_k.front().error, 0.25, 1e-12);
  EXPECT_NEAR(report.per_k[1].error, (0.75 - 0.16) / 0.16, 1e-12);
  EXPECT_EQ(report.k0, 5);
  EXPECT_NEAR(report.me_sum, 0.25 + (0.75 - 0.16) / 0.16, 1e-12);
  EXPECT_NEAR(report.me_mean, report.me_sum / 2.0, 1e-12);
}

TEST(TailFit, RecoversExactGeometric) {
  for (std::uint32_t r = 0; r <= 3; ++r) {
    const Penetrability rho(r);
    DegreeDistribution d;
    const double scale = 1e15;
    for (std::int64_t k = theory::min_degree(rho); k <= 60; ++k) {
      d.counts[k] = static_cast<std::uint64_t>(std::llround(scale * theory::degree_pmf(rho, k)));
      d.n += d.counts[k];
    }
    const auto fit = fit_tail(d, rho, theory::min_degree(rho) + 30);
    EXPECT_NEAR(fit.lambda_hat, theory::decay_rate(rho), 1e-9) << r;
    EXPECT_LT(fit.std_error, 1e-9);
    EXPECT_NEAR(fit.r2, 1.0, 1e-12);
    EXPECT_EQ(fit.k_lo, theory::min_degree(rho));
  }
}

TEST(TailFit, InsufficientBins) {
  DegreeDistribution d;
  d.counts = {{4, 100}, {5, 80}, {6, 3}, {7, 60}};
  d.n = 243;
  EXPECT_THROW(fit_tail(d, Penetrability(1), 7), ValidationError);
}

TEST(TailFit, IidSlopeWithinThreeStandardErrors) {
  const auto g = build_lphvg(uniform(3000, 11), Penetrability(1));
  const auto fit = fit_tail(degree_distribution(g), Penetrability(1));
  EXPECT_LT(std::abs(fit.lambda_hat - std::log(1.25)), 3.0 * fit.std_error);
  EXPECT_GE(fit.bins, 4u);
  EXPECT_GT(fit.k_hi, fit.k_lo + 2);
}

TEST(TailFit, LogisticSlopeBiasedLow) {
  double sum = 0.0;
  for (int s = 0; s < 20; ++s) {
    const auto g = build_lphvg(gen_logistic(3000, 0.1 + 0.037 * s), Penetrability(1));
    sum += fit_tail(degree_distribution(g), Penetrability(1)).lambda_hat;
  }
  EXPECT_LT(sum / 20.0, std::log(1.25) - 0.005);
}

TEST(FiniteSize, MeanErrorBelow) {
  const auto report = finite_size_report(exact_rho_one_counts(), Penetrability(1));
  EXPECT_NEAR(mean_error_below(report, 21), 0.0, 1e-12);
  DegreeDistribution d;
  d.counts = {{4, 25}, {5, 75}};
  d.n = 100;
  const auto r = finite_size_report(d, Penetrability(1));
  EXPECT_NEAR(mean_error_below(r, 5), 0.25, 1e-12);
  EXPECT_THROW(mean_error_below(r, 4), ValidationError);
}

TEST(FiniteSize, CommonRangeErrorShrinksWithSize) {
  const std::vector<std::size_t> sizes{500, 1000, 2000, 4000, 8000};
  std::vector<std::vector<FiniteSizeReport>> reports;
  double k_end = INFINITY;
  for (std::size_t n : sizes) {
    auto& row = reports.emplace_back();
    double k0 = 0.0;
    for (std::uint64_t s = 0; s < 10; ++s) {
      row.push_back(finite_size_report(degree_distribution(build_lphvg(uniform(n, 300 + s), Penetrability(1))),
                                       Penetrability(1)));
      k0 += static_cast<double>(row.back().k0) / 10.0;
    }
    k_end = std::min(k_end, k0);
  }
  double previous = INFINITY;
  for (const auto& row : reports) {
    double me = 0.0;
    for (const auto& r : row) me += mean_error_below(r, static_cast<std::int64_t>(k_end)) / 10.0;
    EXPECT_LT(me, previous);
    previous = me;
  }
}

TEST(GoodnessOfFit, RoundedExpectationsFitPerfectly) {
  // Counts equal to the rounded expectations, remainder in the tail.
  for (std::uint32_t r = 0; r <= 3; ++r) {
    const Penetrability rho(r);
    DegreeDistribution d;
    d.n = 1000000;
    std::uint64_t used = 0;
    std::int64_t k = theory::min_degree(rho);
    for (;; ++k) {
      const double e = 1e6 * theory::degree_pmf(rho, k);
      if (e < 5.0) break;
      d.counts[k] = static_cast<std::uint64_t>(std::llround(e));
      used += d.counts[k];
    }
    d.counts[k + 3] = d.n - used;
    const auto gof = degree_goodness_of_fit(d, rho);
    EXPECT_EQ(gof.bins, static_cast<std::size_t>(k - theory::min_degree(rho)) + 1) << r;
    EXPECT_GT(gof.p_value, 0.99) << r;
  }
}

TEST(GoodnessOfFit, ShiftedLawRejected) {
  DegreeDistribution d;
  d.n = 10000;
  std::uint64_t used = 0;
  for (std::int64_t k = 5; k < 40; ++k) {
    d.counts[k] = static_cast<std::uint64_t>(std::llround(1e4 * theory::degree_pmf(Penetrability(1), k - 1)));
    used += d.counts[k];
  }
  d.counts[40] = d.n - used;
  EXPECT_LT(degree_goodness_of_fit(d, Penetrability(1)).p_value, 1e-10);
}

TEST(LinkFrequency, SmallGraphs) {
  const auto k4 = build_lphvg(TimeSeries({3, 1, 2, 4}), Penetrability(1));
  EXPECT_EQ(link_frequency(k4, 3).pairs, 1u);
  EXPECT_EQ(link_frequency(k4, 3).frequency(), 1.0);
  const auto path = build_lphvg(TimeSeries({1, 2, 3, 4, 5}), Penetrability(0));
  EXPECT_EQ(link_frequency(path, 1).frequency(), 1.0);
  EXPECT_EQ(link_frequency(path, 2).linked, 0u);
  EXPECT_EQ(link_frequency(path, 9).pairs, 0u);
  EXPECT_THROW(link_frequency(path, 0), ValidationError);
}

TEST(Coverage, CountsInteriorNodes) {
  const auto g = build_lphvg(uniform(400, 12), Penetrability(2));
  const auto cov = clustering_coverage(g);
  EXPECT_EQ(cov.interior, 400u - 2u * 3u);
  EXPECT_EQ(cov.inside + cov.below_min + cov.above_max, cov.interior);
}

TEST(Discriminate, UniformIsConsistent) {
  const auto v = discriminate(uniform(3000, 21), Penetrability(1));
  EXPECT_EQ(v.label, kVerdictIid);
  ASSERT_TRUE(v.tail.has_value());
  EXPECT_TRUE(v.lambda_consistent);
  EXPECT_TRUE(v.gof_consistent);
  EXPECT_FALSE(v.below_soft_floor);
}

TEST(Discriminate, ChaoticMapsDeviate) {
  EXPECT_EQ(discriminate(gen_logistic(3000, 0.3), Penetrability(1)).label, kVerdictDeviating);
  EXPECT_EQ(discriminate(gen_henon(3000), Penetrability(2)).label, kVerdictDeviating);
  EXPECT_EQ(discriminate(gen_flow(FlowSpec::lorenz(3000)), Penetrability(1)).label, kVerdictDeviating);
}

TEST(Discriminate, CoverageGateReproducesStrictRule) {
  DiscriminationConfig strict;
  strict.coverage_min = 0.99;
  const auto v = discriminate(uniform(3000, 21), Penetrability(1), strict);
  EXPECT_LT(v.coverage.fraction(), 0.99);
  EXPECT_EQ(v.label, kVerdictDeviating);
}

TEST(Discriminate, ShortSeriesFlagged) {
  const auto v = discriminate(uniform(400, 5), Penetrability(1));
  EXPECT_TRUE(v.below_soft_floor);
}

}  // namespace
}  // namespace lphvg
