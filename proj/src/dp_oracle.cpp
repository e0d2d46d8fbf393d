#include <algorithm>
#include <cstdint>

#include "sparse_tsp/exact.hpp"

namespace sparse_tsp {

namespace {

// Held-Karp subset recursion anchored at vertex 0; `weight` returns
// kInfiniteLength for unusable pairs.
template <class WeightFn>
DpResult solve_subsets(int n, WeightFn&& weight) {
  if (n < 3) throw ContractError("dp oracle needs at least 3 vertices");
  if (n > kDpMaxVertices) {
    throw ContractError("dp oracle limited to " + std::to_string(kDpMaxVertices) + " vertices, got " + std::to_string(n));
  }
  const int m = n - 1;  // vertices 1..n-1 map to bits 0..m-1
  const std::size_t subsets = std::size_t{1} << m;
  std::vector<Length> cost(subsets * static_cast<std::size_t>(m), kInfiniteLength);
  std::vector<std::int8_t> parent(subsets * static_cast<std::size_t>(m), -1);
  auto at = [m](std::size_t mask, int j) { return mask * static_cast<std::size_t>(m) + static_cast<std::size_t>(j); };

  for (int j = 0; j < m; ++j) cost[at(std::size_t{1} << j, j)] = weight(0, j + 1);
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    for (int j = 0; j < m; ++j) {
      if (!(mask >> j & 1U)) continue;
      const Length here = cost[at(mask, j)];
      if (here == kInfiniteLength) continue;
      for (int k = 0; k < m; ++k) {
        if (mask >> k & 1U) continue;
        const Length w = weight(j + 1, k + 1);
        if (w == kInfiniteLength) continue;
        const std::size_t next = mask | (std::size_t{1} << k);
        if (here + w < cost[at(next, k)]) {
          cost[at(next, k)] = here + w;
          parent[at(next, k)] = static_cast<std::int8_t>(j);
        }
      }
    }
  }

  const std::size_t full = subsets - 1;
  Length best = kInfiniteLength;
  int last = -1;
  for (int j = 0; j < m; ++j) {
    const Length w = weight(j + 1, 0);
    if (cost[at(full, j)] == kInfiniteLength || w == kInfiniteLength) continue;
    if (cost[at(full, j)] + w < best) {
      best = cost[at(full, j)] + w;
      last = j;
    }
  }
  DpResult out;
  if (last < 0) return out;
  out.value = best;
  std::size_t mask = full;
  int j = last;
  std::vector<Vertex> reversed;
  while (j >= 0) {
    reversed.push_back(j + 1);
    const int p = parent[at(mask, j)];
    mask &= ~(std::size_t{1} << j);
    j = p;
  }
  out.tour.push_back(0);
  out.tour.insert(out.tour.end(), reversed.rbegin(), reversed.rend());
  return out;
}

}  // namespace

DpResult dp_oracle(const EuclideanInstance& instance) {
  return solve_subsets(instance.dimension(), [&](Vertex a, Vertex b) { return instance.distance(a, b); });
}

DpResult dp_oracle(const SparseGraph& graph) {
  return solve_subsets(graph.dimension(),
                       [&](Vertex a, Vertex b) { return graph.weight(a, b).value_or(kInfiniteLength); });
}

}  // namespace sparse_tsp
