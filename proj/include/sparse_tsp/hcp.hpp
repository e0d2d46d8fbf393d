#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sparse_tsp/sparse_graph.hpp"

namespace sparse_tsp {

/// One step of forced-edge propagation, replayable against the raw graph.
///  Force:  `witness` has exactly two live edges, so edge (u, v) is forced.
///  Remove: `witness` already has two forced edges, so its other edge (u, v)
///          cannot be in any Hamiltonian cycle.
struct PruneStep {
  enum class Kind { Force, Remove };
  Kind kind = Kind::Force;
  Vertex witness = 0;
  Vertex u = 0;
  Vertex v = 0;
};

/// Proof that a graph has no Hamiltonian cycle. The derivation replays from
/// the raw graph to the final claim:
///  DegreeDeficient: `vertex` has fewer than two live edges;
///  ForcedSubcycle:  forced edges close `cycle`, which misses some vertex.
struct InfeasibilityCertificate {
  enum class Kind { DegreeDeficient, ForcedSubcycle };
  Kind kind = Kind::DegreeDeficient;
  Vertex vertex = -1;
  std::vector<Vertex> cycle;
  std::vector<PruneStep> derivation;

  std::string describe() const;
};

struct ForcedEdgeAnalysis {
  std::vector<std::pair<Vertex, Vertex>> forced;
  std::vector<std::pair<Vertex, Vertex>> removed;
  std::optional<InfeasibilityCertificate> certificate;

  /// Input graph minus the removed edges (weights preserved).
  SparseGraph reduced;
};

/// Marks both edges at every degree-2 vertex as forced and drops the other
/// edges of any vertex holding two forced edges, to fixpoint.
ForcedEdgeAnalysis prune_forced_edges(const SparseGraph& graph);

enum class HcpStatus { Found, NotFound, Infeasible };

const char* to_string(HcpStatus status);

struct HcpOutcome {
  HcpStatus status = HcpStatus::NotFound;
  std::vector<Vertex> tour;  // nonempty iff Found
  std::optional<InfeasibilityCertificate> certificate;  // iff Infeasible
  std::uint64_t effort = 0;  // extension + rotation moves consumed
};

struct HcpOptions {
  std::uint64_t budget = 1'000'000;
  std::uint64_t seed = 1;
  /// Moves without path growth before restarting; 0 means 50 * n.
  std::uint64_t stagnation_limit = 0;
};

/// Pósa-style rotation-extension search with restarts. Requires a connected
/// graph with minimum degree 2 (ContractError otherwise). Deterministic in
/// (graph, options).
HcpOutcome find_hamiltonian_cycle(const SparseGraph& graph, const HcpOptions& options);

inline HcpOutcome find_hamiltonian_cycle(const SparseGraph& graph, std::uint64_t budget, std::uint64_t seed) {
  return find_hamiltonian_cycle(graph, HcpOptions{budget, seed, 0});
}

/// Random n-cycle plus `extra_edges` distinct random chords, unit weights.
SparseGraph plant_hamiltonian_graph(int n, long long extra_edges, std::uint64_t seed);

}  // namespace sparse_tsp
