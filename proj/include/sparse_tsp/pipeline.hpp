#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "sparse_tsp/exact.hpp"
#include "sparse_tsp/instance.hpp"
#include "sparse_tsp/sparse_graph.hpp"

namespace sparse_tsp {

/// The three solver configurations compared by the benchmark:
///  CompleteBaseline: exact search on the complete graph, heuristic warm start;
///  SparseNoWarm:     candidate graph completed with penalty edges, warm start
///                    from a construction over penalized weights;
///  Hybrid:           candidate graph, warm start from a Hamiltonian cycle.
enum class Mode { Hybrid, SparseNoWarm, CompleteBaseline };

/// Crash is reserved for comparisons against external solvers and is never
/// produced by this library.
enum class SolveStatus { Optimal, Timeout, Infeasible, NoTourFound, Crash };

enum class Certification { GlobalOptimum, OptimumWithinCandidateSet };

const char* to_string(Mode mode);
const char* to_string(SolveStatus status);
const char* to_string(Certification certification);
/// Accepts "hybrid", "sparse", "complete" and the enum names; throws
/// ContractError otherwise.
Mode parse_mode(const std::string& text);

struct PipelineConfig {
  int k = 10;
  std::uint64_t hcp_budget = 1'000'000;
  int hcp_restarts = 4;
  std::uint64_t improve_budget = 1'000'000;
  std::uint64_t node_budget = 1'000'000;
  double time_limit = 300.0;  // seconds
  std::uint64_t seed = 1;
  Mode mode = Mode::Hybrid;

  /// Throws ContractError unless every budget is positive.
  void validate() const;
};

struct StageTimings {
  double sparsify_ms = 0.0;
  double hcp_ms = 0.0;
  double improve_ms = 0.0;
  double exact_ms = 0.0;
  double total_ms = 0.0;
};

struct SolveReport {
  std::string instance_name;
  int dimension = 0;
  Mode mode = Mode::Hybrid;
  SolveStatus status = SolveStatus::NoTourFound;
  std::optional<Length> value;
  Certification certification = Certification::OptimumWithinCandidateSet;
  StageTimings timings;
  std::uint64_t nodes_expanded = 0;
  std::uint64_t hcp_effort = 0;
  SparsificationStats edge_stats;

  int k_used = 0;
  int escalations = 0;
  double root_lb = 0.0;
  double lower_bound = 0.0;
  std::optional<Length> upper_bound;    // best tour found, metric length
  std::optional<Length> initial_upper;  // warm-start bound handed to the search (working weights)
  Length penalty = 0;                   // M of the candidate graph's penalty completion
  bool warm_has_penalty_edge = false;   // SparseNoWarm only
  int hcp_reinvocations = 0;
  std::optional<Tour> tour;             // lengths are over the instance metric
};

SolveReport solve_hybrid(const EuclideanInstance& instance, const PipelineConfig& config);
SolveReport solve_baseline(const EuclideanInstance& instance, const PipelineConfig& config);
SolveReport solve_sparse_nowarm(const EuclideanInstance& instance, const PipelineConfig& config);

/// Dispatches on config.mode.
SolveReport solve(const EuclideanInstance& instance, const PipelineConfig& config);

}  // namespace sparse_tsp
