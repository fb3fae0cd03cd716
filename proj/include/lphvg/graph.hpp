#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lphvg/series.hpp"

namespace lphvg {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;  // always first < second

// Undirected simple graph over series indices. Neighbor lists are sorted.
class VisibilityGraph {
 public:
  VisibilityGraph() = default;
  VisibilityGraph(Penetrability rho, std::vector<std::vector<NodeId>> neighbors);

  std::size_t node_count() const noexcept { return neighbors_.size(); }
  Penetrability rho() const noexcept { return rho_; }
  const std::vector<NodeId>& neighbors(NodeId i) const { return neighbors_.at(i); }
  std::size_t degree(NodeId i) const { return neighbors_.at(i).size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  bool has_edge(NodeId i, NodeId j) const;

  // Edges with i < j in lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const VisibilityGraph&, const VisibilityGraph&) = default;

 private:
  Penetrability rho_;
  std::vector<std::vector<NodeId>> neighbors_;
  std::size_t edge_count_ = 0;
};

// Row-packed 0/1 adjacency matrix, one bit per ordered pair.
class AdjacencyBits {
 public:
  explicit AdjacencyBits(const VisibilityGraph& graph);

  std::size_t node_count() const noexcept { return n_; }
  std::size_t words_per_row() const noexcept { return words_; }
  std::span<const std::uint64_t> words() const noexcept { return bits_; }
  bool test(std::size_t i, std::size_t j) const {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u;
  }

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// True iff at most rho of the values strictly between i and j are >= min(x_i, x_j).
// Requires i < j < n.
bool penetrable_visible(const TimeSeries& series, std::size_t i, std::size_t j, Penetrability rho);

// Builds the limited penetrable horizontal visibility graph with a rightward
// scan per node that stops once rho+1 values >= x_i have been passed.
VisibilityGraph build_lphvg(const TimeSeries& series, Penetrability rho);

// Reference construction: every pair tested by a direct count. Quadratic.
VisibilityGraph build_lphvg_naive(const TimeSeries& series, Penetrability rho);

// "i j" per line, i < j, zero-based, lexicographic.
std::string format_edge_list(const VisibilityGraph& graph);

inline constexpr std::size_t kMaxMatrixExportNodes = 2000;

// CSV of 0/1 entries. Refuses graphs above kMaxMatrixExportNodes nodes.
std::string format_adjacency_csv(const VisibilityGraph& graph);

}  // namespace lphvg
