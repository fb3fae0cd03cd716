#include "lphvg/graph.hpp"

#include <algorithm>
#include <limits>

#include "lphvg/error.hpp"
#include "lphvg/simd/kernels.hpp"

namespace lphvg {
namespace {

void require_buildable(const TimeSeries& series) {
  if (series.size() < 2) {
    throw ValidationError("graph construction needs at least 2 samples, got " +
                          std::to_string(series.size()));
  }
  if (series.size() > std::numeric_limits<NodeId>::max()) {
    throw ValidationError("series too long for 32-bit node ids");
  }
}

}  // namespace

VisibilityGraph::VisibilityGraph(Penetrability rho, std::vector<std::vector<NodeId>> neighbors)
    : rho_(rho), neighbors_(std::move(neighbors)) {
  std::size_t total = 0;
  for (const auto& list : neighbors_) total += list.size();
  edge_count_ = total / 2;
}

bool VisibilityGraph::has_edge(NodeId i, NodeId j) const {
  const auto& list = neighbors_.at(i);
  return std::binary_search(list.begin(), list.end(), j);
}

std::vector<Edge> VisibilityGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId i = 0; i < neighbors_.size(); ++i) {
    for (NodeId j : neighbors_[i]) {
      if (j > i) out.emplace_back(i, j);
    }
  }
  return out;
}

AdjacencyBits::AdjacencyBits(const VisibilityGraph& graph)
    : n_(graph.node_count()), words_((graph.node_count() + 63) / 64), bits_(n_ * words_, 0) {
  for (NodeId i = 0; i < n_; ++i) {
    for (NodeId j : graph.neighbors(i)) bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
  }
}

bool penetrable_visible(const TimeSeries& series, std::size_t i, std::size_t j, Penetrability rho) {
  if (!(i < j && j < series.size())) {
    throw ValidationError("penetrable_visible requires i < j < n (got i=" + std::to_string(i) +
                          ", j=" + std::to_string(j) + ", n=" + std::to_string(series.size()) + ")");
  }
  const auto x = series.values();
  const double floor = std::min(x[i], x[j]);
  return simd::count_at_least(x.subspan(i + 1, j - i - 1), floor) <= rho.rho;
}

VisibilityGraph build_lphvg(const TimeSeries& series, Penetrability rho) {
  require_buildable(series);
  const auto x = series.values();
  const std::size_t n = x.size();
  const std::size_t keep = static_cast<std::size_t>(rho.rho) + 1;
  std::vector<std::vector<NodeId>> adj(n);

  // top[0..filled) holds the largest `keep` intermediates seen so far, in
  // descending order. A candidate j links to i iff fewer than keep
  // intermediates are >= min(x_i, x_j), i.e. iff the keep-th largest
  // intermediate is strictly below that minimum.
  std::vector<double> top(keep);
  std::size_t filled = 0;
  auto push_intermediate = [&](double v) {
    std::size_t pos;
    if (filled < keep) {
      pos = filled++;
    } else if (v > top[keep - 1]) {
      pos = keep - 1;
    } else {
      return;
    }
    while (pos > 0 && top[pos - 1] < v) {
      top[pos] = top[pos - 1];
      --pos;
    }
    top[pos] = v;
  };

  for (std::size_t i = 0; i + 1 < n; ++i) {
    filled = 0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double floor = std::min(x[i], x[j]);
      if (filled < keep || top[keep - 1] < floor) {
        adj[i].push_back(static_cast<NodeId>(j));
        adj[j].push_back(static_cast<NodeId>(i));
      }
      push_intermediate(x[j]);
      // Once keep intermediates are >= x_i, every later candidate is blocked.
      if (filled == keep && top[keep - 1] >= x[i]) break;
    }
  }
  // Left neighbors were appended in increasing i, right neighbors in
  // increasing j, and every left neighbor precedes every right one.
  return VisibilityGraph(rho, std::move(adj));
}

VisibilityGraph build_lphvg_naive(const TimeSeries& series, Penetrability rho) {
  require_buildable(series);
  const auto x = series.values();
  const std::size_t n = x.size();
  std::vector<std::vector<NodeId>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double floor = x[i] < x[j] ? x[i] : x[j];
      std::size_t blockers = 0;
      for (std::size_t q = i + 1; q < j; ++q) {
        if (x[q] >= floor) ++blockers;
      }
      if (blockers <= rho.rho) {
        adj[i].push_back(static_cast<NodeId>(j));
        adj[j].push_back(static_cast<NodeId>(i));
      }
    }
  }
  return VisibilityGraph(rho, std::move(adj));
}

std::string format_edge_list(const VisibilityGraph& graph) {
  std::string out;
  for (const auto& [i, j] : graph.edges()) {
    out += std::to_string(i);
    out += ' ';
    out += std::to_string(j);
    out += '\n';
  }
  return out;
}

std::string format_adjacency_csv(const VisibilityGraph& graph) {
  const std::size_t n = graph.node_count();
  if (n > kMaxMatrixExportNodes) {
    throw ValidationError("refusing adjacency-matrix export for " + std::to_string(n) +
                          " nodes (limit " + std::to_string(kMaxMatrixExportNodes) +
                          "); use the edge-list format");
  }
  const AdjacencyBits bits(graph);
  std::string out;
  out.reserve(n * n * 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j) out += ',';
      out += bits.test(i, j) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

}  // namespace lphvg
