#pragma once

#include <cstdint>
#include <limits>

#include "sparse_tsp/instance.hpp"
#include "sparse_tsp/sparse_graph.hpp"

namespace sparse_tsp {

struct ImprovementResult {
  Tour tour;
  Length initial_length = 0;
  Length final_length = 0;
  std::uint64_t moves_applied = 0;
  bool local_optimum = false;  // a full sweep found no improving move
};

inline constexpr std::uint64_t kUnlimitedMoves = std::numeric_limits<std::uint64_t>::max();

// All passes take a tour whose order is valid on the graph (every tour edge is
// a graph edge; always true for a penalty completion) and only create edges of
// that graph. The returned length is over the graph's weights. Invalid input
// throws ContractError.

/// First-improvement 2-opt with candidate neighbors from adjacency lists.
ImprovementResult two_opt_pass(const Tour& tour, const SparseGraph& graph,
                               std::uint64_t move_budget = kUnlimitedMoves);
ImprovementResult two_opt_pass(const Tour& tour, const PenaltyCompletion& graph,
                               std::uint64_t move_budget = kUnlimitedMoves);

/// Relocates segments of 1..max_segment vertices (1 <= max_segment <= 3),
/// either orientation.
ImprovementResult or_opt_pass(const Tour& tour, const SparseGraph& graph, int max_segment,
                              std::uint64_t move_budget = kUnlimitedMoves);
ImprovementResult or_opt_pass(const Tour& tour, const PenaltyCompletion& graph, int max_segment,
                              std::uint64_t move_budget = kUnlimitedMoves);

/// Alternates 2-opt and Or-opt (segments up to 3) until neither improves or
/// the move budget runs out.
ImprovementResult improve_until_stable(const Tour& tour, const SparseGraph& graph,
                                       std::uint64_t move_budget = kUnlimitedMoves);
ImprovementResult improve_until_stable(const Tour& tour, const PenaltyCompletion& graph,
                                       std::uint64_t move_budget = kUnlimitedMoves);

/// Re-evaluates `order` under the graph's weights; throws ContractError if a
/// tour edge is missing from the graph.
Tour tour_on_graph(std::vector<Vertex> order, const SparseGraph& graph);
Tour tour_on_graph(std::vector<Vertex> order, const PenaltyCompletion& graph);

/// Greedy nearest-neighbor construction from vertex 0 on the complete metric,
/// ties to the lower index.
Tour nearest_neighbor_tour(const EuclideanInstance& instance);
/// Same construction under penalized weights (missing edges cost M).
Tour nearest_neighbor_tour(const PenaltyCompletion& graph);

}  // namespace sparse_tsp
