#include "sparse_tsp/hcp.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace sparse_tsp {

const char* to_string(HcpStatus status) {
  switch (status) {
    case HcpStatus::Found: return "Found";
    case HcpStatus::NotFound: return "NotFound";
    case HcpStatus::Infeasible: return "Infeasible";
  }
  return "?";
}

std::string InfeasibilityCertificate::describe() const {
  std::ostringstream out;
  if (kind == Kind::DegreeDeficient) {
    out << "vertex " << (vertex + 1) << " has fewer than two usable edges";
  } else {
    out << "forced edges close a " << cycle.size() << "-cycle:";
    for (Vertex v : cycle) out << ' ' << (v + 1);
  }
  out << " (" << derivation.size() << " propagation steps)";
  return out.str();
}

// ---------------------------------------------------------------------------
// Forced-edge propagation

namespace {

class ForcedEdgePropagator {
 public:
  explicit ForcedEdgePropagator(const SparseGraph& graph)
      : n_(graph.dimension()), edges_(graph.edges()) {
    incident_.resize(static_cast<std::size_t>(n_));
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      incident_[static_cast<std::size_t>(edges_[e].u)].push_back(e);
      incident_[static_cast<std::size_t>(edges_[e].v)].push_back(e);
    }
    alive_.assign(edges_.size(), 1);
    forced_.assign(edges_.size(), 0);
    alive_degree_.resize(static_cast<std::size_t>(n_));
    forced_degree_.assign(static_cast<std::size_t>(n_), 0);
    for (Vertex v = 0; v < n_; ++v) alive_degree_[static_cast<std::size_t>(v)] = graph.degree(v);
    component_.resize(static_cast<std::size_t>(n_));
    std::iota(component_.begin(), component_.end(), 0);
  }

  ForcedEdgeAnalysis run() {
    for (Vertex v = 0; v < n_; ++v) queue_.push_back(v);
    while (!queue_.empty() && !certificate_) {
      const Vertex v = queue_.front();
      queue_.pop_front();
      examine(v);
    }

    ForcedEdgeAnalysis out;
    std::vector<WeightedEdge> kept;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const auto pair = std::make_pair(edges_[e].u, edges_[e].v);
      if (forced_[e]) out.forced.push_back(pair);
      if (alive_[e]) {
        kept.push_back(edges_[e]);
      } else {
        out.removed.push_back(pair);
      }
    }
    out.reduced = SparseGraph(n_, kept);
    if (certificate_) {
      certificate_->derivation = std::move(steps_);
      out.certificate = std::move(certificate_);
    }
    return out;
  }

 private:
  Vertex other(std::size_t e, Vertex v) const { return edges_[e].u == v ? edges_[e].v : edges_[e].u; }

  void examine(Vertex v) {
    const auto vi = static_cast<std::size_t>(v);
    if (alive_degree_[vi] < 2) {
      fail_degree(v);
      return;
    }
    if (alive_degree_[vi] == 2 && forced_degree_[vi] < 2) {
      for (std::size_t e : incident_[vi]) {
        if (certificate_) return;
        if (alive_[e] && !forced_[e]) force(e, v);
      }
    }
  }

  void fail_degree(Vertex v) {
    InfeasibilityCertificate cert;
    cert.kind = InfeasibilityCertificate::Kind::DegreeDeficient;
    cert.vertex = v;
    certificate_ = std::move(cert);
  }

  int find(int x) {
    while (component_[static_cast<std::size_t>(x)] != x) {
      auto& p = component_[static_cast<std::size_t>(x)];
      p = component_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }

  void force(std::size_t e, Vertex witness) {
    const Vertex a = edges_[e].u;
    const Vertex b = edges_[e].v;
    steps_.push_back({PruneStep::Kind::Force, witness, a, b});
    forced_[e] = 1;
    ++forced_degree_[static_cast<std::size_t>(a)];
    ++forced_degree_[static_cast<std::size_t>(b)];

    const int ra = find(a);
    const int rb = find(b);
    if (ra == rb) {
      auto cycle = forced_path(a, b);
      if (static_cast<int>(cycle.size()) < n_) {
        InfeasibilityCertificate cert;
        cert.kind = InfeasibilityCertificate::Kind::ForcedSubcycle;
        cert.cycle = std::move(cycle);
        certificate_ = std::move(cert);
        return;
      }
    } else {
      component_[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
    }
    // Saturate immediately so no vertex can pick up a third forced edge.
    for (Vertex x : {a, b}) {
      if (certificate_) return;
      if (forced_degree_[static_cast<std::size_t>(x)] == 2) saturate(x);
    }
    queue_.push_back(a);
    queue_.push_back(b);
  }

  void saturate(Vertex v) {
    for (std::size_t e : incident_[static_cast<std::size_t>(v)]) {
      if (!alive_[e] || forced_[e]) continue;
      const Vertex u = other(e, v);
      steps_.push_back({PruneStep::Kind::Remove, v, edges_[e].u, edges_[e].v});
      alive_[e] = 0;
      --alive_degree_[static_cast<std::size_t>(v)];
      --alive_degree_[static_cast<std::size_t>(u)];
      if (alive_degree_[static_cast<std::size_t>(u)] < 2) {
        fail_degree(u);
        return;
      }
      queue_.push_back(u);
    }
  }

  // Vertices of the forced path from `from` to `to` (the closing edge makes it
  // a cycle).
  std::vector<Vertex> forced_path(Vertex from, Vertex to) const {
    std::vector<Vertex> parent(static_cast<std::size_t>(n_), -1);
    std::deque<Vertex> bfs{from};
    parent[static_cast<std::size_t>(from)] = from;
    std::size_t closing = edges_.size();
    for (std::size_t e : incident_[static_cast<std::size_t>(from)]) {
      if (other(e, from) == to && forced_[e]) closing = e;  // the edge just forced
    }
    while (!bfs.empty()) {
      const Vertex x = bfs.front();
      bfs.pop_front();
      if (x == to) break;
      for (std::size_t e : incident_[static_cast<std::size_t>(x)]) {
        if (!forced_[e] || e == closing) continue;
        const Vertex y = other(e, x);
        if (parent[static_cast<std::size_t>(y)] == -1) {
          parent[static_cast<std::size_t>(y)] = x;
          bfs.push_back(y);
        }
      }
    }
    std::vector<Vertex> path;
    for (Vertex x = to; x != from; x = parent[static_cast<std::size_t>(x)]) path.push_back(x);
    path.push_back(from);
    std::reverse(path.begin(), path.end());
    return path;
  }

  int n_;
  std::vector<WeightedEdge> edges_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<char> alive_;
  std::vector<char> forced_;
  std::vector<int> alive_degree_;
  std::vector<int> forced_degree_;
  std::vector<int> component_;
  std::deque<Vertex> queue_;
  std::vector<PruneStep> steps_;
  std::optional<InfeasibilityCertificate> certificate_;
};

}  // namespace

ForcedEdgeAnalysis prune_forced_edges(const SparseGraph& graph) { return ForcedEdgePropagator(graph).run(); }

// ---------------------------------------------------------------------------
// Rotation-extension search

namespace {

class RotationExtensionSearch {
 public:
  RotationExtensionSearch(const SparseGraph& graph, const HcpOptions& options)
      : n_(graph.dimension()),
        rng_(options.seed),
        budget_(options.budget),
        stagnation_limit_(options.stagnation_limit > 0 ? options.stagnation_limit
                                                       : 50ULL * static_cast<std::uint64_t>(n_)) {
    adjacency_.resize(static_cast<std::size_t>(n_));
    for (Vertex v = 0; v < n_; ++v) {
      for (const Neighbor& nb : graph.neighbors(v)) adjacency_[static_cast<std::size_t>(v)].push_back(nb.vertex);
    }
    slots_.assign(2 * static_cast<std::size_t>(n_) + 1, -1);
    pos_.assign(static_cast<std::size_t>(n_), -1);
    off_path_degree_.resize(static_cast<std::size_t>(n_));
  }

  HcpOutcome run() {
    HcpOutcome out;
    restart();
    std::uint64_t best_length = 1;
    std::uint64_t since_growth = 0;
    int turn = 0;  // 0: tail end, 1: head end

    while (effort_ < budget_) {
      if (length() == n_ && adjacent(slots_[head_], slots_[tail_])) {
        out.status = HcpStatus::Found;
        out.tour.assign(slots_.begin() + head_, slots_.begin() + tail_ + 1);
        out.effort = effort_;
        return out;
      }

      ++effort_;
      if (extend(turn) || extend(1 - turn)) {
        if (static_cast<std::uint64_t>(length()) > best_length) {
          best_length = static_cast<std::uint64_t>(length());
          since_growth = 0;
        } else {
          ++since_growth;
        }
      } else {
        rotate(turn);
        turn = 1 - turn;
        ++since_growth;
      }

      if (since_growth >= stagnation_limit_) {
        restart();
        best_length = 1;
        since_growth = 0;
      }
    }
    out.status = HcpStatus::NotFound;
    out.effort = effort_;
    return out;
  }

 private:
  int length() const { return static_cast<int>(tail_ - head_ + 1); }

  bool adjacent(Vertex a, Vertex b) const {
    const auto& list = adjacency_[static_cast<std::size_t>(a)];
    return std::binary_search(list.begin(), list.end(), b);
  }

  bool on_path(Vertex v) const { return pos_[static_cast<std::size_t>(v)] >= 0; }

  void restart() {
    for (std::size_t i = head_; i <= tail_ && i < slots_.size(); ++i) {
      if (slots_[i] >= 0) pos_[static_cast<std::size_t>(slots_[i])] = -1;
      slots_[i] = -1;
    }
    for (Vertex v = 0; v < n_; ++v) {
      off_path_degree_[static_cast<std::size_t>(v)] = static_cast<int>(adjacency_[static_cast<std::size_t>(v)].size());
    }
    head_ = tail_ = static_cast<std::size_t>(n_);
    place(static_cast<Vertex>(uniform_below(rng_, static_cast<std::uint64_t>(n_))), head_);
  }

  void place(Vertex v, std::size_t slot) {
    slots_[slot] = v;
    pos_[static_cast<std::size_t>(v)] = static_cast<long>(slot);
    for (Vertex w : adjacency_[static_cast<std::size_t>(v)]) --off_path_degree_[static_cast<std::size_t>(w)];
  }

  Vertex endpoint(int end) const { return end == 0 ? slots_[tail_] : slots_[head_]; }

  // Greedy extension: the off-path neighbor with the fewest off-path
  // neighbors of its own, ties drawn uniformly.
  bool extend(int end) {
    const Vertex e = endpoint(end);
    candidates_.clear();
    int best = std::numeric_limits<int>::max();
    for (Vertex w : adjacency_[static_cast<std::size_t>(e)]) {
      if (on_path(w)) continue;
      const int d = off_path_degree_[static_cast<std::size_t>(w)];
      if (d < best) {
        best = d;
        candidates_.clear();
      }
      if (d == best) candidates_.push_back(w);
    }
    if (candidates_.empty()) return false;
    const Vertex pick = candidates_[uniform_below(rng_, candidates_.size())];
    if (end == 0) {
      place(pick, ++tail_);
    } else {
      place(pick, --head_);
    }
    return true;
  }

  // Pósa rotation at one end: for path p_h..p_t and edge (p_t, p_i), reverse
  // p_{i+1}..p_t so p_{i+1} becomes the new endpoint (mirrored at the head).
  void rotate(int end) {
    const Vertex e = endpoint(end);
    const std::size_t e_slot = end == 0 ? tail_ : head_;
    candidates_.clear();
    for (Vertex w : adjacency_[static_cast<std::size_t>(e)]) {
      if (!on_path(w)) continue;
      const auto slot = static_cast<std::size_t>(pos_[static_cast<std::size_t>(w)]);
      const bool path_neighbor = (end == 0) ? slot + 1 == e_slot : slot == e_slot + 1;
      if (!path_neighbor) candidates_.push_back(w);
    }
    if (candidates_.empty()) return;  // every neighbor is the path neighbor: length-2 path stuck, wait for restart
    const Vertex pivot = candidates_[uniform_below(rng_, candidates_.size())];
    const auto pivot_slot = static_cast<std::size_t>(pos_[static_cast<std::size_t>(pivot)]);
    if (end == 0) {
      reverse_slots(pivot_slot + 1, tail_);
    } else {
      reverse_slots(head_, pivot_slot - 1);
    }
  }

  void reverse_slots(std::size_t lo, std::size_t hi) {
    while (lo < hi) {
      std::swap(slots_[lo], slots_[hi]);
      pos_[static_cast<std::size_t>(slots_[lo])] = static_cast<long>(lo);
      pos_[static_cast<std::size_t>(slots_[hi])] = static_cast<long>(hi);
      ++lo;
      --hi;
    }
  }

  int n_;
  Rng rng_;
  std::uint64_t budget_;
  std::uint64_t stagnation_limit_;
  std::uint64_t effort_ = 0;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<Vertex> slots_;
  std::vector<long> pos_;
  std::vector<int> off_path_degree_;
  std::vector<Vertex> candidates_;
  std::size_t head_ = 0;
  std::size_t tail_ = 0;
};

}  // namespace

HcpOutcome find_hamiltonian_cycle(const SparseGraph& graph, const HcpOptions& options) {
  if (options.budget == 0) throw ContractError("HCP budget must be positive");
  if (graph.dimension() < 3) throw ContractError("HCP needs at least 3 vertices");
  if (graph.min_degree() < 2) throw ContractError("HCP input has a vertex of degree < 2; repair the graph first");
  if (!graph.is_connected()) throw ContractError("HCP input graph is disconnected; repair the graph first");

  ForcedEdgeAnalysis pruned = prune_forced_edges(graph);
  if (pruned.certificate) {
    HcpOutcome out;
    out.status = HcpStatus::Infeasible;
    out.certificate = std::move(pruned.certificate);
    return out;
  }
  return RotationExtensionSearch(pruned.reduced, options).run();
}

SparseGraph plant_hamiltonian_graph(int n, long long extra_edges, std::uint64_t seed) {
  if (n < 3) throw ContractError("planted graph needs n >= 3");
  const long long chords_available = static_cast<long long>(n) * (n - 3) / 2;
  if (extra_edges < 0 || extra_edges > chords_available) {
    throw ContractError("extra_edges must lie in [0, n(n-3)/2] = [0, " + std::to_string(chords_available) + "]");
  }
  Rng rng(seed);
  std::vector<Vertex> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = perm.size() - 1; i > 0; --i) {
    std::swap(perm[i], perm[uniform_below(rng, i + 1)]);
  }

  auto key = [n](Vertex a, Vertex b) {
    if (a > b) std::swap(a, b);
    return static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(b);
  };
  std::unordered_set<std::uint64_t> present;
  std::vector<WeightedEdge> edges;
  for (int i = 0; i < n; ++i) {
    const Vertex a = perm[static_cast<std::size_t>(i)];
    const Vertex b = perm[static_cast<std::size_t>((i + 1) % n)];
    present.insert(key(a, b));
    edges.push_back({std::min(a, b), std::max(a, b), 1});
  }

  if (2 * extra_edges > chords_available) {
    std::vector<std::pair<Vertex, Vertex>> pool;
    for (Vertex a = 0; a < n; ++a) {
      for (Vertex b = a + 1; b < n; ++b) {
        if (!present.count(key(a, b))) pool.emplace_back(a, b);
      }
    }
    for (long long i = 0; i < extra_edges; ++i) {
      const auto j = static_cast<std::size_t>(i) + uniform_below(rng, pool.size() - static_cast<std::size_t>(i));
      std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
      edges.push_back({pool[static_cast<std::size_t>(i)].first, pool[static_cast<std::size_t>(i)].second, 1});
    }
  } else {
    long long added = 0;
    while (added < extra_edges) {
      const auto a = static_cast<Vertex>(uniform_below(rng, static_cast<std::uint64_t>(n)));
      const auto b = static_cast<Vertex>(uniform_below(rng, static_cast<std::uint64_t>(n)));
      if (a == b || !present.insert(key(a, b)).second) continue;
      edges.push_back({std::min(a, b), std::max(a, b), 1});
      ++added;
    }
  }
  return SparseGraph(n, edges);
}

}  // namespace sparse_tsp
