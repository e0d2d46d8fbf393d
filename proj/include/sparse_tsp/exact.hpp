#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "sparse_tsp/instance.hpp"
#include "sparse_tsp/sparse_graph.hpp"

namespace sparse_tsp {

using EdgePair = std::pair<Vertex, Vertex>;  // first < second

inline EdgePair make_edge(Vertex a, Vertex b) { return a < b ? EdgePair{a, b} : EdgePair{b, a}; }

/// A branch-and-bound subproblem: tours containing every included edge and no
/// excluded edge.
struct BnbNode {
  std::set<EdgePair> included;
  std::set<EdgePair> excluded;
  std::vector<double> penalties;  // per-vertex multipliers; empty means all zero
  double local_lb = 0.0;
};

struct OneTreeBound {
  bool feasible = false;  // false: constraints leave no spanning 1-tree
  double lb = 0.0;        // best bound seen over the ascent
  std::vector<EdgePair> one_tree;  // the 1-tree attaining lb
  std::vector<int> degrees;
  std::vector<double> penalties;   // multipliers attaining lb
  bool is_tour = false;            // the 1-tree is a Hamiltonian cycle
};

struct AscentSchedule {
  double initial_scale = 2.0;
  int halving_patience = 20;  // non-improving rounds before the scale halves
};

/// Held-Karp 1-tree bound over vertex 0 (spanning tree on the remaining
/// vertices plus the two cheapest feasible edges at vertex 0) under penalized
/// weights w(i,j) + pi(i) + pi(j), improved by `ascent_iters` rounds of
/// subgradient ascent. The result bounds every tour honoring the node.
OneTreeBound one_tree_bound(const SparseGraph& graph, const BnbNode& node, int ascent_iters,
                            const AscentSchedule& schedule = {});
OneTreeBound one_tree_bound(const PenaltyCompletion& graph, const BnbNode& node, int ascent_iters,
                            const AscentSchedule& schedule = {});

struct BoundState {
  double lower = 0.0;
  Length upper = kInfiniteLength;
  std::optional<Tour> incumbent;
};

enum class ExactStatus { Optimal, Infeasible, BudgetExceeded };

const char* to_string(ExactStatus status);

struct OptimalResult {
  ExactStatus status = ExactStatus::Infeasible;
  std::optional<Length> value;
  std::optional<Tour> tour;
  std::uint64_t nodes_expanded = 0;
  double root_lb = 0.0;
  BoundState bounds;
  bool timed_out = false;  // BudgetExceeded because of the deadline
  double wall_ms = 0.0;
};

/// Snapshot handed to the trace hook after each node evaluation.
struct NodeTrace {
  std::uint64_t index = 0;
  std::vector<EdgePair> included;
  std::vector<EdgePair> excluded;
  bool feasible = false;
  double lb = 0.0;
  double global_lower = 0.0;
  Length upper = kInfiniteLength;
};

struct BnbOptions {
  std::uint64_t node_budget = 1'000'000;
  int root_ascent = 60;
  int child_ascent = 15;
  AscentSchedule schedule;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  /// Called whenever the incumbent improves; may return a better tour, which
  /// is adopted when valid and strictly shorter.
  std::function<std::optional<Tour>(const Tour&)> on_incumbent;
  std::function<void(const NodeTrace&)> trace;
};

/// Best-first branch-and-bound with 1-tree bounds. `warm`, when present, must
/// be a valid tour on the graph (ContractError otherwise) and seeds the upper
/// bound.
OptimalResult branch_and_bound(const SparseGraph& graph, const std::optional<Tour>& warm,
                               const BnbOptions& options = {});
OptimalResult branch_and_bound(const PenaltyCompletion& graph, const std::optional<Tour>& warm,
                               const BnbOptions& options = {});

struct DpResult {
  std::optional<Length> value;  // nullopt: no tour exists
  std::vector<Vertex> tour;
};

inline constexpr int kDpMaxVertices = 18;

/// Exact optimum by dynamic programming over vertex subsets (n <= 18).
DpResult dp_oracle(const EuclideanInstance& instance);
/// Missing edges are unusable.
DpResult dp_oracle(const SparseGraph& graph);

}  // namespace sparse_tsp
