#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sparse_tsp/common.hpp"
#include "sparse_tsp/instance.hpp"

namespace sparse_tsp {

struct WeightedEdge {
  Vertex u = 0;  // u < v
  Vertex v = 0;
  Length weight = 0;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

struct Neighbor {
  Vertex vertex = 0;
  Length weight = 0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Undirected weighted graph with per-vertex neighbor lists sorted by index.
/// Immutable once built.
class SparseGraph {
 public:
  SparseGraph() = default;

  /// Throws ContractError on self-loops, duplicates or out-of-range endpoints.
  SparseGraph(int dimension, std::span<const WeightedEdge> edges);

  int dimension() const noexcept { return static_cast<int>(adjacency_.size()); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  std::span<const Neighbor> neighbors(Vertex v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  int degree(Vertex v) const { return static_cast<int>(adjacency_[static_cast<std::size_t>(v)].size()); }

  bool has_edge(Vertex a, Vertex b) const { return weight(a, b).has_value(); }
  std::optional<Length> weight(Vertex a, Vertex b) const;

  /// All edges with u < v, sorted by (u, v).
  std::vector<WeightedEdge> edges() const;
  Length max_weight() const noexcept { return max_weight_; }

  bool is_connected() const;
  int min_degree() const;

  friend bool operator==(const SparseGraph& a, const SparseGraph& b) { return a.adjacency_ == b.adjacency_; }

 private:
  std::vector<std::vector<Neighbor>> adjacency_;
  std::size_t edge_count_ = 0;
  Length max_weight_ = 0;
};

/// Edge (i, j) is kept iff j is among i's k nearest neighbors or i among j's,
/// ties broken by lower index. Requires 1 <= k <= dimension - 1.
SparseGraph build_knn_candidates(const EuclideanInstance& instance, int k);

/// Adds cheapest metric edges until the graph has minimum degree 2 and is
/// connected. Returns a superset of the input edges.
SparseGraph repair_min_degree(const SparseGraph& graph, const EuclideanInstance& instance);

/// Complete graph under the metric (k = n - 1).
SparseGraph complete_graph(const EuclideanInstance& instance);

/// A sparse graph whose missing edges are reinstated at weight M, with
/// M = n * max_real_weight + 1, so any tour using a penalty edge is longer
/// than every penalty-free tour.
class PenaltyCompletion {
 public:
  explicit PenaltyCompletion(SparseGraph base);

  const SparseGraph& base() const noexcept { return base_; }
  Length penalty() const noexcept { return penalty_; }
  int dimension() const noexcept { return base_.dimension(); }

  Length weight(Vertex a, Vertex b) const { return base_.weight(a, b).value_or(penalty_); }
  bool is_penalty_edge(Vertex a, Vertex b) const { return !base_.has_edge(a, b); }

 private:
  SparseGraph base_;
  Length penalty_ = 0;
};

PenaltyCompletion complete_with_penalty(const SparseGraph& graph);

struct SparsificationStats {
  std::size_t edge_count = 0;
  int min_degree = 0;
  double avg_degree = 0.0;
  int max_degree = 0;
  double retained_fraction = 0.0;  // edge_count / (n(n-1)/2)
};

SparsificationStats sparsification_stats(const SparseGraph& graph);

/// Text edge list: header "n m", then "i j w" per edge with 1-based i < j.
std::string write_edge_list(const SparseGraph& graph);
SparseGraph parse_edge_list(std::string_view text);

}  // namespace sparse_tsp
