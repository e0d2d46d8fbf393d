#include <algorithm>
#include <cmath>

#include "one_tree_internal.hpp"

namespace sparse_tsp {

namespace detail {

CostModel CostModel::from(const SparseGraph& graph) {
  CostModel m;
  m.n_ = graph.dimension();
  m.edges_ = graph.edges();
  m.index();
  return m;
}

CostModel CostModel::from(const PenaltyCompletion& graph) {
  CostModel m;
  m.n_ = graph.dimension();
  for (Vertex u = 0; u < m.n_; ++u) {
    for (Vertex v = u + 1; v < m.n_; ++v) m.edges_.push_back({u, v, graph.weight(u, v)});
  }
  m.index();
  return m;
}

void CostModel::index() {
  incident_.assign(static_cast<std::size_t>(n_), {});
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    const auto& e = edges_[id];
    incident_[static_cast<std::size_t>(e.u)].push_back({e.v, static_cast<int>(id)});
    incident_[static_cast<std::size_t>(e.v)].push_back({e.u, static_cast<int>(id)});
  }
  for (auto& list : incident_) {
    std::sort(list.begin(), list.end(), [](const Incidence& a, const Incidence& b) { return a.neighbor < b.neighbor; });
  }
}

std::optional<int> CostModel::edge_id(Vertex a, Vertex b) const {
  const auto& list = incident_[static_cast<std::size_t>(a)];
  const auto it = std::lower_bound(list.begin(), list.end(), b,
                                   [](const Incidence& inc, Vertex v) { return inc.neighbor < v; });
  if (it == list.end() || it->neighbor != b) return std::nullopt;
  return it->edge;
}

namespace {

struct EdgeOrder {
  const CostModel& model;
  const std::vector<EdgeState>& state;
  const std::vector<double>& pi;

  double penalized(int id) const {
    const auto& e = model.edge(static_cast<std::size_t>(id));
    return static_cast<double>(e.weight) + pi[static_cast<std::size_t>(e.u)] + pi[static_cast<std::size_t>(e.v)];
  }

  bool operator()(int a, int b) const {
    const bool ia = state[static_cast<std::size_t>(a)] == EdgeState::Included;
    const bool ib = state[static_cast<std::size_t>(b)] == EdgeState::Included;
    if (ia != ib) return ia;
    const double wa = penalized(a);
    const double wb = penalized(b);
    if (wa != wb) return wa < wb;
    const auto& ea = model.edge(static_cast<std::size_t>(a));
    const auto& eb = model.edge(static_cast<std::size_t>(b));
    if (ea.u != eb.u) return ea.u < eb.u;
    return ea.v < eb.v;
  }
};

}  // namespace

OneTree minimum_one_tree(const CostModel& model, const std::vector<EdgeState>& state,
                         const std::vector<double>& penalties) {
  const int n = model.dimension();
  const EdgeOrder order{model, state, penalties};
  OneTree tree;
  tree.degrees.assign(static_cast<std::size_t>(n), 0);

  auto take = [&](int id) {
    const auto& e = model.edge(static_cast<std::size_t>(id));
    tree.edges.push_back(id);
    tree.weight += order.penalized(id);
    ++tree.degrees[static_cast<std::size_t>(e.u)];
    ++tree.degrees[static_cast<std::size_t>(e.v)];
  };

  // Dense Prim over vertices 1..n-1.
  std::vector<char> in_tree(static_cast<std::size_t>(n), 0);
  std::vector<int> best(static_cast<std::size_t>(n), -1);
  auto relax = [&](Vertex v) {
    for (const auto& inc : model.incident(v)) {
      const Vertex w = inc.neighbor;
      if (w == 0 || in_tree[static_cast<std::size_t>(w)]) continue;
      if (state[static_cast<std::size_t>(inc.edge)] == EdgeState::Excluded) continue;
      int& slot = best[static_cast<std::size_t>(w)];
      if (slot < 0 || order(inc.edge, slot)) slot = inc.edge;
    }
  };
  in_tree[1] = 1;
  relax(1);
  for (int added = 1; added < n - 1; ++added) {
    Vertex pick = -1;
    for (Vertex v = 1; v < n; ++v) {
      if (in_tree[static_cast<std::size_t>(v)] || best[static_cast<std::size_t>(v)] < 0) continue;
      if (pick < 0 || order(best[static_cast<std::size_t>(v)], best[static_cast<std::size_t>(pick)])) pick = v;
    }
    if (pick < 0) return tree;  // infeasible: {1..n-1} disconnected
    in_tree[static_cast<std::size_t>(pick)] = 1;
    take(best[static_cast<std::size_t>(pick)]);
    relax(pick);
  }

  std::vector<int> at_root;
  for (const auto& inc : model.incident(0)) {
    if (state[static_cast<std::size_t>(inc.edge)] != EdgeState::Excluded) at_root.push_back(inc.edge);
  }
  if (at_root.size() < 2) return tree;
  std::partial_sort(at_root.begin(), at_root.begin() + 2, at_root.end(), order);
  if (at_root.size() > 2 && state[static_cast<std::size_t>(at_root[2])] == EdgeState::Included) return tree;
  take(at_root[0]);
  take(at_root[1]);
  tree.feasible = true;
  return tree;
}

bool bound_prunes(double lb, Length upper) {
  if (upper == kInfiniteLength) return false;
  const double slack = 1e-9 * std::max(1.0, std::abs(lb));
  return lb - slack > static_cast<double>(upper) - 1.0;
}

AscentResult ascend(const CostModel& model, const std::vector<EdgeState>& state, std::vector<double> penalties,
                    int iterations, double scale, int halving_patience, Length prune_at) {
  const int n = model.dimension();
  AscentResult result;
  result.final_scale = scale;
  if (penalties.size() != static_cast<std::size_t>(n)) penalties.assign(static_cast<std::size_t>(n), 0.0);

  double best = -std::numeric_limits<double>::infinity();
  int stale = 0;
  for (int it = 0; it < std::max(1, iterations); ++it) {
    OneTree tree = minimum_one_tree(model, state, penalties);
    if (!tree.feasible) {
      // Feasibility does not depend on the multipliers.
      result.feasible = false;
      return result;
    }
    double pi_sum = 0.0;
    for (double p : penalties) pi_sum += p;
    const double lb = tree.weight - 2.0 * pi_sum;

    double norm2 = 0.0;
    for (int d : tree.degrees) norm2 += static_cast<double>((d - 2) * (d - 2));
    const bool is_tour = norm2 == 0.0;

    if (lb > best || !result.feasible) {
      best = lb;
      stale = 0;
      result.feasible = true;
      result.lb = lb;
      result.tree = tree;
      result.penalties = penalties;
      result.is_tour = is_tour;
    } else if (++stale >= halving_patience) {
      scale /= 2.0;
      stale = 0;
    }
    if (is_tour || bound_prunes(best, prune_at)) break;

    // Polyak-style step toward a target a little above the best bound so far.
    const double target = best + std::max(1.0, 0.01 * std::abs(best));
    const double step = scale * (target - lb) / norm2;
    for (Vertex v = 0; v < n; ++v) {
      penalties[static_cast<std::size_t>(v)] += step * (tree.degrees[static_cast<std::size_t>(v)] - 2);
    }
  }
  result.final_scale = scale;
  return result;
}

}  // namespace detail

namespace {

template <class Graph>
OneTreeBound one_tree_bound_impl(const Graph& graph, const BnbNode& node, int ascent_iters,
                                 const AscentSchedule& schedule) {
  const auto model = detail::CostModel::from(graph);
  const int n = model.dimension();
  if (n < 3) throw ContractError("1-tree bound needs at least 3 vertices");
  std::vector<detail::EdgeState> state(model.edge_count(), detail::EdgeState::Free);
  auto mark = [&](const std::set<EdgePair>& edges, detail::EdgeState s) {
    for (const auto& [a, b] : edges) {
      const auto id = model.edge_id(a, b);
      if (!id) throw ContractError("constrained edge is not a graph edge");
      state[static_cast<std::size_t>(*id)] = s;
    }
  };
  mark(node.included, detail::EdgeState::Included);
  mark(node.excluded, detail::EdgeState::Excluded);
  for (const auto& e : node.included) {
    if (node.excluded.count(e)) throw ContractError("edge both included and excluded");
  }

  const auto ascent = detail::ascend(model, state, node.penalties, ascent_iters, schedule.initial_scale,
                                     schedule.halving_patience, kInfiniteLength);
  OneTreeBound out;
  out.feasible = ascent.feasible;
  if (!ascent.feasible) return out;
  out.lb = ascent.lb;
  out.degrees = ascent.tree.degrees;
  out.penalties = ascent.penalties;
  out.is_tour = ascent.is_tour;
  for (int id : ascent.tree.edges) {
    const auto& e = model.edge(static_cast<std::size_t>(id));
    out.one_tree.emplace_back(e.u, e.v);
  }
  return out;
}

}  // namespace

OneTreeBound one_tree_bound(const SparseGraph& graph, const BnbNode& node, int ascent_iters,
                            const AscentSchedule& schedule) {
  return one_tree_bound_impl(graph, node, ascent_iters, schedule);
}

OneTreeBound one_tree_bound(const PenaltyCompletion& graph, const BnbNode& node, int ascent_iters,
                            const AscentSchedule& schedule) {
  return one_tree_bound_impl(graph, node, ascent_iters, schedule);
}

}  // namespace sparse_tsp
