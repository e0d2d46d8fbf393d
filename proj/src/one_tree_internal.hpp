#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sparse_tsp/exact.hpp"

namespace sparse_tsp::detail {

enum class EdgeState : std::uint8_t { Free = 0, Included = 1, Excluded = 2 };

/// Edge-indexed view of the working graph shared by the bound and the search.
class CostModel {
 public:
  static CostModel from(const SparseGraph& graph);
  static CostModel from(const PenaltyCompletion& graph);

  int dimension() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const WeightedEdge& edge(std::size_t id) const { return edges_[id]; }

  struct Incidence {
    Vertex neighbor;
    int edge;
  };
  const std::vector<Incidence>& incident(Vertex v) const { return incident_[static_cast<std::size_t>(v)]; }
  std::optional<int> edge_id(Vertex a, Vertex b) const;

 private:
  void index();

  int n_ = 0;
  std::vector<WeightedEdge> edges_;
  std::vector<std::vector<Incidence>> incident_;  // sorted by neighbor
};

struct OneTree {
  bool feasible = false;
  double weight = 0.0;  // penalized
  std::vector<int> edges;
  std::vector<int> degrees;
};

/// Minimum 1-tree under penalized weights. Included edges precede all others;
/// ties break on (weight, smaller endpoint, larger endpoint).
OneTree minimum_one_tree(const CostModel& model, const std::vector<EdgeState>& state,
                         const std::vector<double>& penalties);

struct AscentResult {
  bool feasible = false;
  double lb = 0.0;
  OneTree tree;  // attains lb
  std::vector<double> penalties;
  double final_scale = 2.0;
  bool is_tour = false;
};

/// Subgradient ascent starting from `penalties`. Stops early when the bound
/// reaches `prune_at` (ceil(lb) >= prune_at) or the 1-tree is a tour.
AscentResult ascend(const CostModel& model, const std::vector<EdgeState>& state, std::vector<double> penalties,
                    int iterations, double scale, int halving_patience, Length prune_at);

/// True when an integral objective with lower bound `lb` cannot beat `upper`.
bool bound_prunes(double lb, Length upper);

}  // namespace sparse_tsp::detail
