#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "lphvg/error.hpp"
#include "lphvg/graph.hpp"
#include "test_support.hpp"

namespace lphvg {
namespace {

using EdgeSet = std::vector<Edge>;

EdgeSet complete_edges(NodeId n) {
  EdgeSet out;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) out.emplace_back(i, j);
  return out;
}

// Textbook horizontal visibility: every intermediate strictly below both ends.
EdgeSet textbook_hvg(const TimeSeries& s) {
  EdgeSet out;
  const auto x = s.values();
  for (NodeId i = 0; i < x.size(); ++i) {
    for (NodeId j = i + 1; j < x.size(); ++j) {
      const bool visible = std::all_of(x.begin() + i + 1, x.begin() + j,
                                       [&](double q) { return q < x[i] && q < x[j]; });
      if (visible) out.emplace_back(i, j);
    }
  }
  return out;
}

std::size_t components(const VisibilityGraph& g) {
  std::vector<int> seen(g.node_count(), 0);
  std::size_t count = 0;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (seen[s]) continue;
    ++count;
    std::vector<NodeId> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (NodeId v : g.neighbors(u)) {
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
  }
  return count;
}

TEST(PenetrableVisible, HandExamples) {
  const TimeSeries s({3, 1, 2, 4});
  EXPECT_FALSE(penetrable_visible(s, 1, 3, Penetrability(0)));
  EXPECT_TRUE(penetrable_visible(s, 1, 3, Penetrability(1)));
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    EXPECT_TRUE(penetrable_visible(s, i, i + 1, Penetrability(0)));
  }
}

TEST(PenetrableVisible, EqualValuesBlock) {
  const TimeSeries s({2, 2, 2});
  EXPECT_FALSE(penetrable_visible(s, 0, 2, Penetrability(0)));
  EXPECT_TRUE(penetrable_visible(s, 0, 2, Penetrability(1)));
}

TEST(PenetrableVisible, RejectsBadIndices) {
  const TimeSeries s({1, 2, 3});
  EXPECT_THROW(penetrable_visible(s, 1, 1, Penetrability(0)), ValidationError);
  EXPECT_THROW(penetrable_visible(s, 2, 1, Penetrability(0)), ValidationError);
  EXPECT_THROW(penetrable_visible(s, 0, 3, Penetrability(0)), ValidationError);
}

TEST(BuildLphvg, Examples) {
  const auto path = build_lphvg(TimeSeries({1, 2, 3, 4, 5}), Penetrability(0));
  EXPECT_EQ(path.edges(), (EdgeSet{{0, 1}, {1, 2}, {2, 3}, {3, 4}}));
  EXPECT_EQ(path.edge_count(), 4u);

  const auto k4 = build_lphvg(TimeSeries({3, 1, 2, 4}), Penetrability(1));
  EXPECT_EQ(k4.edges(), complete_edges(4));
  for (NodeId i = 0; i < 4; ++i) EXPECT_EQ(k4.degree(i), 3u);

  std::vector<double> inc(12);
  for (std::size_t i = 0; i < inc.size(); ++i) inc[i] = static_cast<double>(i);
  const auto band = build_lphvg(TimeSeries(inc), Penetrability(1));
  for (const auto& [i, j] : band.edges()) EXPECT_LE(j - i, 2u);
  EXPECT_EQ(band.edge_count(), 11u + 10u);
}

TEST(BuildLphvg, NaiveReproducesExamples) {
  EXPECT_EQ(build_lphvg_naive(TimeSeries({1, 2, 3, 4, 5}), Penetrability(0)).edges(),
            (EdgeSet{{0, 1}, {1, 2}, {2, 3}, {3, 4}}));
  EXPECT_EQ(build_lphvg_naive(TimeSeries({3, 1, 2, 4}), Penetrability(1)).edges(), complete_edges(4));
}

TEST(BuildLphvg, ConstantSeriesIsBand) {
  for (std::uint32_t rho = 0; rho < 4; ++rho) {
    const TimeSeries s(std::vector<double>(15, 0.7));
    for (const auto& g : {build_lphvg(s, Penetrability(rho)), build_lphvg_naive(s, Penetrability(rho))}) {
      EdgeSet expected;
      for (NodeId i = 0; i < 15; ++i)
        for (NodeId j = i + 1; j < 15 && j - i <= rho + 1; ++j) expected.emplace_back(i, j);
      EXPECT_EQ(g.edges(), expected) << "rho=" << rho;
    }
  }
}

TEST(BuildLphvg, RejectsShortSeries) {
  EXPECT_THROW(build_lphvg(TimeSeries({1.0}), Penetrability(0)), ValidationError);
  EXPECT_THROW(build_lphvg_naive(TimeSeries(), Penetrability(0)), ValidationError);
}

TEST(BuildLphvg, OracleEquivalenceSweep) {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + gen() % 99;
    const Penetrability rho(static_cast<std::uint32_t>(gen() % 5));
    const auto s = testing::random_series(gen, n, trial % 4 == 0);
    ASSERT_EQ(build_lphvg(s, rho), build_lphvg_naive(s, rho)) << "trial " << trial;
  }
}

TEST(BuildLphvg, EdgeDecisionsMatchPairPredicate) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = testing::random_series(gen, 40, trial % 2 == 0);
    const Penetrability rho(static_cast<std::uint32_t>(trial % 4));
    const auto g = build_lphvg(s, rho);
    for (NodeId i = 0; i < 40; ++i)
      for (NodeId j = i + 1; j < 40; ++j) ASSERT_EQ(g.has_edge(i, j), penetrable_visible(s, i, j, rho));
  }
}

// Structural properties over random instances.
TEST(BuildLphvg, StructuralInvariants) {
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + gen() % 150;
    const Penetrability rho(static_cast<std::uint32_t>(gen() % 5));
    const auto s = testing::random_series(gen, n, trial % 5 == 0);
    const auto g = build_lphvg(s, rho);

    std::size_t degree_sum = 0;
    for (NodeId i = 0; i < n; ++i) {
      const auto& nb = g.neighbors(i);
      ASSERT_TRUE(std::is_sorted(nb.begin(), nb.end()));
      ASSERT_EQ(std::adjacent_find(nb.begin(), nb.end()), nb.end());
      degree_sum += nb.size();
      for (NodeId j : nb) {
        ASSERT_NE(i, j);
        ASSERT_TRUE(g.has_edge(j, i));
      }
      // Near band: every index within rho+1 is linked.
      for (NodeId j = i + 1; j < n && j - i <= rho.rho + 1; ++j) ASSERT_TRUE(g.has_edge(i, j));
      if (i >= rho.rho + 1 && i + rho.rho + 1 < n) ASSERT_GE(nb.size(), 2u * (rho.rho + 1));
    }
    ASSERT_EQ(degree_sum, 2 * g.edge_count());
    ASSERT_EQ(components(g), 1u);

    const auto wider = build_lphvg(s, Penetrability(rho.rho + 1));
    for (const auto& [i, j] : g.edges()) ASSERT_TRUE(wider.has_edge(i, j));

    std::uniform_real_distribution<double> scale(0.01, 100.0), shift(-50.0, 50.0);
    ASSERT_EQ(build_lphvg(affine_transform(s, scale(gen), shift(gen)), rho).edges(), g.edges());
  }
}

TEST(BuildLphvg, RhoZeroIsTextbookHvg) {
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 500; ++trial) {
    const auto s = testing::random_series(gen, 2 + gen() % 80);
    ASSERT_EQ(build_lphvg(s, Penetrability(0)).edges(), textbook_hvg(s));
  }
}

TEST(Exports, EdgeListAndMatrix) {
  const auto g = build_lphvg(TimeSeries({1, 2, 3}), Penetrability(0));
  EXPECT_EQ(format_edge_list(g), "0 1\n1 2\n");
  EXPECT_EQ(format_adjacency_csv(g), "0,1,0\n1,0,1\n0,1,0\n");
  std::vector<double> big(kMaxMatrixExportNodes + 1);
  for (std::size_t i = 0; i < big.size(); ++i) big[i] = static_cast<double>(i);
  EXPECT_THROW(format_adjacency_csv(build_lphvg(TimeSeries(big), Penetrability(0))), ValidationError);
}

}  // namespace
}  // namespace lphvg
