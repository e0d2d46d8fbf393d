#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace oracle {

using namespace sparse_tsp;

namespace {

Edge key(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

struct TourSearch {
  int n;
  const WeightFn& weight;
  const std::set<Edge>& included;
  const std::set<Edge>& excluded;
  std::vector<Vertex> path;
  std::vector<char> used;
  std::optional<Length> best;

  std::optional<Length> step(Vertex a, Vertex b) const {
    if (excluded.count(key(a, b))) return std::nullopt;
    return weight(a, b);
  }

  void finish(Length length) {
    const auto closing = step(path.back(), path.front());
    if (!closing) return;
    std::set<Edge> on_tour;
    for (std::size_t i = 0; i < path.size(); ++i) on_tour.insert(key(path[i], path[(i + 1) % path.size()]));
    for (const auto& e : included) {
      if (!on_tour.count(e)) return;
    }
    const Length total = length + *closing;
    if (!best || total < *best) best = total;
  }

  void extend(Length length) {
    if (static_cast<int>(path.size()) == n) {
      finish(length);
      return;
    }
    for (Vertex v = 1; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      const auto w = step(path.back(), v);
      if (!w) continue;
      used[static_cast<std::size_t>(v)] = 1;
      path.push_back(v);
      extend(length + *w);
      path.pop_back();
      used[static_cast<std::size_t>(v)] = 0;
    }
  }
};

}  // namespace

WeightFn metric_weights(const EuclideanInstance& instance) {
  return [&instance](Vertex a, Vertex b) -> std::optional<Length> {
    return euc2d_distance(instance.point(a), instance.point(b));
  };
}

WeightFn graph_weights(const SparseGraph& graph) {
  return [&graph](Vertex a, Vertex b) -> std::optional<Length> {
    for (const auto& nb : graph.neighbors(a)) {
      if (nb.vertex == b) return nb.weight;
    }
    return std::nullopt;
  };
}

std::optional<Length> brute_force_optimum(int n, const WeightFn& weight, const std::set<Edge>& included,
                                          const std::set<Edge>& excluded) {
  TourSearch search{n, weight, included, excluded, {0}, std::vector<char>(static_cast<std::size_t>(n), 0), {}};
  search.used[0] = 1;
  search.extend(0);
  return search.best;
}

bool is_hamiltonian(const SparseGraph& graph) {
  const int n = graph.dimension();
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  used[0] = 1;
  std::function<bool(Vertex, int)> dfs = [&](Vertex at, int count) {
    if (count == n) {
      for (const auto& nb : graph.neighbors(at)) {
        if (nb.vertex == 0) return true;
      }
      return false;
    }
    for (const auto& nb : graph.neighbors(at)) {
      if (used[static_cast<std::size_t>(nb.vertex)]) continue;
      used[static_cast<std::size_t>(nb.vertex)] = 1;
      if (dfs(nb.vertex, count + 1)) return true;
      used[static_cast<std::size_t>(nb.vertex)] = 0;
    }
    return false;
  };
  return n >= 3 && dfs(0, 1);
}

bool is_hamiltonian_cycle(const SparseGraph& graph, const std::vector<Vertex>& order) {
  const int n = graph.dimension();
  if (static_cast<int>(order.size()) != n) return false;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (Vertex v : order) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  const auto weight = graph_weights(graph);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!weight(order[i], order[(i + 1) % order.size()])) return false;
  }
  return true;
}

bool certificate_holds(const SparseGraph& graph, const InfeasibilityCertificate& certificate) {
  const int n = graph.dimension();
  std::set<Edge> live;
  for (const auto& e : graph.edges()) live.insert({e.u, e.v});
  std::set<Edge> forced;
  auto live_degree = [&](Vertex v) {
    return std::count_if(live.begin(), live.end(), [v](const Edge& e) { return e.first == v || e.second == v; });
  };
  auto forced_degree = [&](Vertex v) {
    return std::count_if(forced.begin(), forced.end(), [v](const Edge& e) { return e.first == v || e.second == v; });
  };

  for (const auto& step : certificate.derivation) {
    const Edge e = key(step.u, step.v);
    if (!live.count(e)) return false;
    if (e.first != step.witness && e.second != step.witness) return false;
    if (step.kind == PruneStep::Kind::Force) {
      if (live_degree(step.witness) != 2) return false;
      forced.insert(e);
    } else {
      if (forced.count(e) || forced_degree(step.witness) != 2) return false;
      live.erase(e);
    }
  }

  if (certificate.kind == InfeasibilityCertificate::Kind::DegreeDeficient) {
    return certificate.vertex >= 0 && certificate.vertex < n && live_degree(certificate.vertex) < 2;
  }
  const auto& cycle = certificate.cycle;
  if (cycle.size() < 3 || static_cast<int>(cycle.size()) >= n) return false;
  if (std::set<Vertex>(cycle.begin(), cycle.end()).size() != cycle.size()) return false;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (!forced.count(key(cycle[i], cycle[(i + 1) % cycle.size()]))) return false;
  }
  return true;
}

std::optional<double> kruskal_one_tree_bound(const SparseGraph& graph, const std::vector<double>& pi) {
  const int n = graph.dimension();
  struct Candidate {
    double w;
    Vertex u, v;
  };
  std::vector<Candidate> rest;
  std::vector<double> root;
  for (const auto& e : graph.edges()) {
    const double w = static_cast<double>(e.weight) + pi[static_cast<std::size_t>(e.u)] + pi[static_cast<std::size_t>(e.v)];
    if (e.u == 0) {
      root.push_back(w);
    } else {
      rest.push_back({w, e.u, e.v});
    }
  }
  if (root.size() < 2) return std::nullopt;
  std::sort(rest.begin(), rest.end(), [](const Candidate& a, const Candidate& b) { return a.w < b.w; });
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]);
  };
  double total = 0.0;
  int joined = 0;
  for (const auto& c : rest) {
    const int a = find(c.u);
    const int b = find(c.v);
    if (a == b) continue;
    parent[static_cast<std::size_t>(a)] = b;
    total += c.w;
    ++joined;
  }
  if (joined != n - 2) return std::nullopt;
  std::sort(root.begin(), root.end());
  total += root[0] + root[1];
  for (double p : pi) total -= 2.0 * p;
  return total;
}

std::set<Edge> knn_edges(const EuclideanInstance& instance, int k) {
  const int n = instance.dimension();
  std::set<Edge> out;
  for (Vertex i = 0; i < n; ++i) {
    std::vector<std::pair<Length, Vertex>> all;
    for (Vertex j = 0; j < n; ++j) {
      if (j != i) all.push_back({euc2d_distance(instance.point(i), instance.point(j)), j});
    }
    std::sort(all.begin(), all.end());
    for (int t = 0; t < k; ++t) out.insert(key(i, all[static_cast<std::size_t>(t)].second));
  }
  return out;
}

SparseGraph graph_from(int n, const std::vector<Edge>& edges, Length weight) {
  std::vector<WeightedEdge> list;
  for (const auto& [a, b] : edges) list.push_back({std::min(a, b), std::max(a, b), weight});
  return SparseGraph(n, list);
}

SparseGraph petersen_graph() {
  std::vector<Edge> edges;
  for (int i = 0; i < 5; ++i) {
    edges.push_back({i, (i + 1) % 5});      // outer 5-cycle
    edges.push_back({i, i + 5});            // spokes
    edges.push_back({5 + i, 5 + (i + 2) % 5});  // inner pentagram
  }
  return graph_from(10, edges);
}

SparseGraph cycle_graph(int n, Length weight) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return graph_from(n, edges, weight);
}

Length metric_length(const EuclideanInstance& instance, const std::vector<Vertex>& order) {
  Length total = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    total += euc2d_distance(instance.point(order[i]), instance.point(order[(i + 1) % order.size()]));
  }
  return total;
}

EuclideanInstance random_instance(int n, unsigned seed, int box) {
  std::minstd_rand rng(seed);
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) {
    pts.push_back({static_cast<double>(rng() % static_cast<unsigned>(box)), static_cast<double>(rng() % static_cast<unsigned>(box))});
  }
  return EuclideanInstance("rand" + std::to_string(n) + "_" + std::to_string(seed), std::move(pts));
}

EuclideanInstance two_cluster_instance() {
  // Two 2x3 grids 40 apart. Only the corner pairs (30,0)-(70,0) and
  // (30,60)-(70,60) are mutual 3-nearest neighbors across the gap.
  return EuclideanInstance("two_clusters", {{0, 0}, {0, 30}, {0, 60}, {30, 0}, {30, 30}, {30, 60},
                                            {70, 0}, {70, 30}, {70, 60}, {100, 0}, {100, 30}, {100, 60}});
}

}  // namespace oracle
