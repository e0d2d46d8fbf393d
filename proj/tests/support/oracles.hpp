#pragma once

// Independent reference implementations used only by tests. None of these
// call into the solver internals they check.

#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "sparse_tsp/hcp.hpp"
#include "sparse_tsp/instance.hpp"
#include "sparse_tsp/sparse_graph.hpp"

namespace oracle {

using sparse_tsp::Length;
using sparse_tsp::Vertex;
using Edge = std::pair<Vertex, Vertex>;  // first < second

/// Returns nullopt for a missing edge.
using WeightFn = std::function<std::optional<Length>(Vertex, Vertex)>;

WeightFn metric_weights(const sparse_tsp::EuclideanInstance& instance);
WeightFn graph_weights(const sparse_tsp::SparseGraph& graph);

/// Shortest tour by depth-first enumeration of every tour through vertex 0,
/// restricted to tours that use all of `included` and none of `excluded`.
std::optional<Length> brute_force_optimum(int n, const WeightFn& weight, const std::set<Edge>& included = {},
                                          const std::set<Edge>& excluded = {});

/// Exhaustive Hamiltonicity check by backtracking.
bool is_hamiltonian(const sparse_tsp::SparseGraph& graph);

/// True when `order` is a permutation of 0..n-1 whose consecutive pairs,
/// including the wrap, are all graph edges.
bool is_hamiltonian_cycle(const sparse_tsp::SparseGraph& graph, const std::vector<Vertex>& order);

/// Replays a certificate's derivation against the raw graph and checks its
/// final claim.
bool certificate_holds(const sparse_tsp::SparseGraph& graph, const sparse_tsp::InfeasibilityCertificate& certificate);

/// Weight of the minimum 1-tree (Kruskal on vertices 1..n-1, plus the two
/// cheapest edges at vertex 0) under w(i,j) + pi(i) + pi(j), minus 2 * sum(pi).
std::optional<double> kruskal_one_tree_bound(const sparse_tsp::SparseGraph& graph, const std::vector<double>& pi);

/// k-nearest-neighbor edge set by full sorting per vertex, then symmetric
/// closure.
std::set<Edge> knn_edges(const sparse_tsp::EuclideanInstance& instance, int k);

sparse_tsp::SparseGraph petersen_graph();
sparse_tsp::SparseGraph cycle_graph(int n, Length weight = 1);
/// Builds a graph from 0-based unit-weight edges.
sparse_tsp::SparseGraph graph_from(int n, const std::vector<Edge>& edges, Length weight = 1);

/// Recomputed metric length of a closed tour.
Length metric_length(const sparse_tsp::EuclideanInstance& instance, const std::vector<Vertex>& order);

/// A random n-vertex uniform instance on a small grid, for tests that need
/// many quick instances; independent of the library generator.
sparse_tsp::EuclideanInstance random_instance(int n, unsigned seed, int box = 1000);

/// Twelve points in two clusters whose 3-nearest-neighbor graph has exactly
/// two edges between the clusters.
sparse_tsp::EuclideanInstance two_cluster_instance();

}  // namespace oracle
