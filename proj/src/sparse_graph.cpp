#include "sparse_tsp/sparse_graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <tuple>

namespace sparse_tsp {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      auto& p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }

 private:
  std::vector<int> parent_;
};

// Mutable edge set used while building graphs.
class EdgeSetBuilder {
 public:
  explicit EdgeSetBuilder(int n) : adj_(static_cast<std::size_t>(n)) {}

  bool contains(Vertex a, Vertex b) const {
    const auto& list = adj_[static_cast<std::size_t>(a)];
    return std::binary_search(list.begin(), list.end(), b);
  }
  bool add(Vertex a, Vertex b) {
    if (a == b || contains(a, b)) return false;
    insert_sorted(adj_[static_cast<std::size_t>(a)], b);
    insert_sorted(adj_[static_cast<std::size_t>(b)], a);
    return true;
  }
  int degree(Vertex v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }

  std::vector<WeightedEdge> edges(const EuclideanInstance& instance) const {
    std::vector<WeightedEdge> out;
    for (Vertex u = 0; u < static_cast<Vertex>(adj_.size()); ++u) {
      for (Vertex v : adj_[static_cast<std::size_t>(u)]) {
        if (u < v) out.push_back({u, v, instance.distance(u, v)});
      }
    }
    return out;
  }

 private:
  static void insert_sorted(std::vector<Vertex>& list, Vertex v) {
    list.insert(std::upper_bound(list.begin(), list.end(), v), v);
  }
  std::vector<std::vector<Vertex>> adj_;
};

}  // namespace

SparseGraph::SparseGraph(int dimension, std::span<const WeightedEdge> edges)
    : adjacency_(static_cast<std::size_t>(dimension)) {
  if (dimension < 0) throw ContractError("negative graph dimension");
  for (const WeightedEdge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= dimension || e.v >= dimension) {
      throw ContractError("edge endpoint out of range");
    }
    if (e.u == e.v) throw ContractError("self-loop at vertex " + std::to_string(e.u + 1));
    if (e.weight < 0) throw ContractError("negative edge weight");
    adjacency_[static_cast<std::size_t>(e.u)].push_back({e.v, e.weight});
    adjacency_[static_cast<std::size_t>(e.v)].push_back({e.u, e.weight});
    max_weight_ = std::max(max_weight_, e.weight);
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
    const auto dup = std::adjacent_find(list.begin(), list.end(),
                                        [](const Neighbor& a, const Neighbor& b) { return a.vertex == b.vertex; });
    if (dup != list.end()) throw ContractError("duplicate edge at vertex " + std::to_string(dup->vertex + 1));
  }
  edge_count_ = edges.size();
}

std::optional<Length> SparseGraph::weight(Vertex a, Vertex b) const {
  const auto& list = adjacency_[static_cast<std::size_t>(a)];
  const auto it = std::lower_bound(list.begin(), list.end(), b,
                                   [](const Neighbor& n, Vertex v) { return n.vertex < v; });
  if (it == list.end() || it->vertex != b) return std::nullopt;
  return it->weight;
}

std::vector<WeightedEdge> SparseGraph::edges() const {
  std::vector<WeightedEdge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < dimension(); ++u) {
    for (const Neighbor& n : neighbors(u)) {
      if (u < n.vertex) out.push_back({u, n.vertex, n.weight});
    }
  }
  return out;
}

bool SparseGraph::is_connected() const {
  const int n = dimension();
  if (n == 0) return true;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int visited = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (const Neighbor& nb : neighbors(v)) {
      if (!seen[static_cast<std::size_t>(nb.vertex)]) {
        seen[static_cast<std::size_t>(nb.vertex)] = 1;
        ++visited;
        stack.push_back(nb.vertex);
      }
    }
  }
  return visited == n;
}

int SparseGraph::min_degree() const {
  int best = std::numeric_limits<int>::max();
  for (const auto& list : adjacency_) best = std::min(best, static_cast<int>(list.size()));
  return adjacency_.empty() ? 0 : best;
}

SparseGraph build_knn_candidates(const EuclideanInstance& instance, int k) {
  const int n = instance.dimension();
  if (k < 1 || k > n - 1) {
    throw ContractError("k must lie in [1, " + std::to_string(n - 1) + "], got " + std::to_string(k));
  }
  EdgeSetBuilder builder(n);
  std::vector<std::pair<Length, Vertex>> ranked;
  ranked.reserve(static_cast<std::size_t>(n - 1));
  for (Vertex i = 0; i < n; ++i) {
    ranked.clear();
    for (Vertex j = 0; j < n; ++j) {
      if (j != i) ranked.emplace_back(instance.distance(i, j), j);
    }
    const auto kth = ranked.begin() + k;
    std::partial_sort(ranked.begin(), kth, ranked.end());
    for (auto it = ranked.begin(); it != kth; ++it) builder.add(i, it->second);
  }
  const auto edges = builder.edges(instance);
  return SparseGraph(n, edges);
}

SparseGraph complete_graph(const EuclideanInstance& instance) {
  const int n = instance.dimension();
  std::vector<WeightedEdge> edges;
  edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v, instance.distance(u, v)});
  }
  return SparseGraph(n, edges);
}

SparseGraph repair_min_degree(const SparseGraph& graph, const EuclideanInstance& instance) {
  const int n = graph.dimension();
  if (n != instance.dimension()) throw ContractError("graph and instance dimensions differ");
  EdgeSetBuilder builder(n);
  for (const WeightedEdge& e : graph.edges()) builder.add(e.u, e.v);

  for (Vertex v = 0; v < n; ++v) {
    while (builder.degree(v) < 2) {
      Vertex best = -1;
      Length best_w = kInfiniteLength;
      for (Vertex u = 0; u < n; ++u) {
        if (u == v || builder.contains(v, u)) continue;
        const Length w = instance.distance(v, u);
        if (w < best_w) {
          best_w = w;
          best = u;
        }
      }
      builder.add(v, best);
    }
  }

  DisjointSets components(n);
  int count = n;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : builder.neighbors(u)) {
      if (components.unite(u, v)) --count;
    }
  }
  if (count > 1) {
    // Repeatedly taking the globally cheapest edge that joins two distinct
    // components is Kruskal over the cross-component pairs.
    std::vector<std::tuple<Length, Vertex, Vertex>> cross;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        if (components.find(u) != components.find(v)) cross.emplace_back(instance.distance(u, v), u, v);
      }
    }
    std::sort(cross.begin(), cross.end());
    for (const auto& [w, u, v] : cross) {
      if (count == 1) break;
      if (components.unite(u, v)) {
        builder.add(u, v);
        --count;
      }
    }
  }
  const auto edges = builder.edges(instance);
  return SparseGraph(n, edges);
}

PenaltyCompletion::PenaltyCompletion(SparseGraph base) : base_(std::move(base)) {
  penalty_ = static_cast<Length>(base_.dimension()) * base_.max_weight() + 1;
}

PenaltyCompletion complete_with_penalty(const SparseGraph& graph) { return PenaltyCompletion(graph); }

SparsificationStats sparsification_stats(const SparseGraph& graph) {
  SparsificationStats s;
  const int n = graph.dimension();
  s.edge_count = graph.edge_count();
  if (n == 0) return s;
  s.min_degree = graph.min_degree();
  for (Vertex v = 0; v < n; ++v) s.max_degree = std::max(s.max_degree, graph.degree(v));
  s.avg_degree = 2.0 * static_cast<double>(s.edge_count) / n;
  const double complete = static_cast<double>(n) * (n - 1) / 2.0;
  s.retained_fraction = complete > 0 ? static_cast<double>(s.edge_count) / complete : 0.0;
  return s;
}

std::string write_edge_list(const SparseGraph& graph) {
  std::ostringstream out;
  out << graph.dimension() << ' ' << graph.edge_count() << '\n';
  for (const WeightedEdge& e : graph.edges()) out << (e.u + 1) << ' ' << (e.v + 1) << ' ' << e.weight << '\n';
  return out.str();
}

SparseGraph parse_edge_list(std::string_view text) {
  using K = ParseError::Kind;
  std::vector<long long> numbers;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) break;
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data() + start, text.data() + i, value);
    if (ec != std::errc{} || ptr != text.data() + i) {
      throw ParseError(K::BadEdgeList, "non-integer token '" + std::string(text.substr(start, i - start)) + "'");
    }
    numbers.push_back(value);
  }
  if (numbers.size() < 2) throw ParseError(K::BadEdgeList, "missing 'n m' header");
  const long long n = numbers[0];
  const long long m = numbers[1];
  if (n < 0 || m < 0 || n > std::numeric_limits<int>::max()) throw ParseError(K::BadEdgeList, "bad 'n m' header");
  if (static_cast<long long>(numbers.size()) != 2 + 3 * m) {
    throw ParseError(K::DimensionMismatch, "header declares " + std::to_string(m) + " edges but body has " +
                                               std::to_string((numbers.size() - 2) / 3) + " complete entries");
  }
  std::vector<WeightedEdge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long e = 0; e < m; ++e) {
    const long long a = numbers[static_cast<std::size_t>(2 + 3 * e)];
    const long long b = numbers[static_cast<std::size_t>(3 + 3 * e)];
    const long long w = numbers[static_cast<std::size_t>(4 + 3 * e)];
    if (a < 1 || b < 1 || a > n || b > n) throw ParseError(K::BadEdgeList, "edge endpoint out of range");
    if (a >= b) throw ParseError(K::BadEdgeList, "edge list requires i < j on every line");
    if (w < 0) throw ParseError(K::BadEdgeList, "negative edge weight");
    edges.push_back({static_cast<Vertex>(a - 1), static_cast<Vertex>(b - 1), w});
  }
  try {
    return SparseGraph(static_cast<int>(n), edges);
  } catch (const ContractError& e) {
    throw ParseError(K::BadEdgeList, e.what());
  }
}

}  // namespace sparse_tsp
