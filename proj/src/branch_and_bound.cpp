#include <algorithm>
#include <cmath>
#include <numeric>

#include "one_tree_internal.hpp"

namespace sparse_tsp {

const char* to_string(ExactStatus status) {
  switch (status) {
    case ExactStatus::Optimal: return "Optimal";
    case ExactStatus::Infeasible: return "Infeasible";
    case ExactStatus::BudgetExceeded: return "BudgetExceeded";
  }
  return "?";
}

namespace {

using detail::CostModel;
using detail::EdgeState;

using Fix = std::pair<int, EdgeState>;

struct SearchNode {
  std::vector<Fix> fixes;
  std::vector<double> penalties;
  double scale = 2.0;
  double key = 0.0;  // valid lower bound for the subproblem
  std::uint64_t seq = 0;
};

struct LaterFirst {
  bool operator()(const SearchNode& a, const SearchNode& b) const {
    if (a.key != b.key) return a.key > b.key;
    return a.seq > b.seq;
  }
};

class SubsetUnion {
 public:
  explicit SubsetUnion(int n) : parent_(static_cast<std::size_t>(n)), size_(static_cast<std::size_t>(n), 1) {
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
  // Returns the size of the merged set, or 0 when a and b were already joined.
  int unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return 0;
    if (size_[static_cast<std::size_t>(a)] < size_[static_cast<std::size_t>(b)]) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    size_[static_cast<std::size_t>(a)] += size_[static_cast<std::size_t>(b)];
    return size_[static_cast<std::size_t>(a)];
  }
  int size_of(int x) { return size_[static_cast<std::size_t>(find(x))]; }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

// Degree propagation to fixpoint: a vertex with two included edges loses its
// free edges; a vertex with exactly two usable edges keeps both. Returns false
// when the constraints admit no tour.
bool propagate(const CostModel& model, std::vector<EdgeState>& state, std::vector<Fix>& fixes) {
  const int n = model.dimension();
  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex v = 0; v < n; ++v) {
      int included = 0;
      int usable = 0;
      for (const auto& inc : model.incident(v)) {
        const EdgeState s = state[static_cast<std::size_t>(inc.edge)];
        if (s != EdgeState::Excluded) ++usable;
        if (s == EdgeState::Included) ++included;
      }
      if (included > 2 || usable < 2) return false;
      const EdgeState target = included == 2 && usable > 2   ? EdgeState::Excluded
                               : usable == 2 && included < 2 ? EdgeState::Included
                                                             : EdgeState::Free;
      if (target == EdgeState::Free) continue;
      for (const auto& inc : model.incident(v)) {
        auto& s = state[static_cast<std::size_t>(inc.edge)];
        if (s != EdgeState::Free) continue;
        s = target;
        fixes.emplace_back(inc.edge, target);
        changed = true;
      }
    }
  }

  SubsetUnion sets(n);
  for (std::size_t id = 0; id < state.size(); ++id) {
    if (state[id] != EdgeState::Included) continue;
    const auto& e = model.edge(id);
    if (sets.unite(e.u, e.v) == 0 && sets.size_of(e.u) < n) return false;  // proper subcycle
  }
  return true;
}

std::vector<Vertex> tour_from_edges(const CostModel& model, const std::vector<int>& edge_ids) {
  const int n = model.dimension();
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
  for (int id : edge_ids) {
    const auto& e = model.edge(static_cast<std::size_t>(id));
    adj[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  std::vector<Vertex> order{0};
  Vertex prev = -1;
  Vertex cur = 0;
  while (static_cast<int>(order.size()) < n) {
    const auto& nb = adj[static_cast<std::size_t>(cur)];
    const Vertex next = nb[0] != prev ? nb[0] : nb[1];
    order.push_back(next);
    prev = cur;
    cur = next;
  }
  return order;
}

class BranchAndBound {
 public:
  BranchAndBound(const CostModel& model, const BnbOptions& options) : model_(model), options_(options) {}

  OptimalResult run(const std::optional<std::vector<Vertex>>& warm) {
    const int n = model_.dimension();
    if (n < 3) throw ContractError("branch-and-bound needs at least 3 vertices");
    if (warm) adopt(*warm, /*notify=*/false, /*must_be_valid=*/true);

    std::vector<EdgeState> root_state(model_.edge_count(), EdgeState::Free);
    SearchNode root;
    root.scale = options_.schedule.initial_scale;
    root.key = 0.0;
    root.penalties.assign(static_cast<std::size_t>(n), 0.0);
    const bool root_ok = propagate(model_, root_state, root.fixes);
    result_.bounds.lower = 0.0;

    std::vector<SearchNode> heap;
    if (root_ok) {
      heap.push_back(std::move(root));
    } else {
      result_.nodes_expanded = 1;
      emit_trace(root_state, false, 0.0);
    }

    bool stopped = false;
    while (!heap.empty()) {
      std::pop_heap(heap.begin(), heap.end(), LaterFirst{});
      SearchNode node = std::move(heap.back());
      heap.pop_back();
      if (detail::bound_prunes(node.key, upper())) continue;

      if (result_.nodes_expanded >= options_.node_budget || deadline_passed()) {
        result_.timed_out = result_.nodes_expanded < options_.node_budget;
        result_.bounds.lower = std::max(result_.bounds.lower, std::min(node.key, upper_as_double()));
        stopped = true;
        break;
      }
      result_.bounds.lower = std::max(result_.bounds.lower, std::min(node.key, upper_as_double()));
      expand(std::move(node), heap);
    }

    if (stopped) {
      result_.status = ExactStatus::BudgetExceeded;
    } else if (result_.bounds.incumbent) {
      result_.status = ExactStatus::Optimal;
      result_.bounds.lower = static_cast<double>(upper());
      result_.value = upper();
      result_.tour = result_.bounds.incumbent;
    } else {
      result_.status = ExactStatus::Infeasible;
    }
    return result_;
  }

 private:
  Length upper() const { return result_.bounds.upper; }
  double upper_as_double() const {
    return upper() == kInfiniteLength ? std::numeric_limits<double>::infinity() : static_cast<double>(upper());
  }

  bool deadline_passed() const {
    return options_.deadline && std::chrono::steady_clock::now() >= *options_.deadline;
  }

  // Installs `order` as incumbent when valid and strictly shorter.
  bool adopt(const std::vector<Vertex>& order, bool notify, bool must_be_valid) {
    Tour tour;
    try {
      if (static_cast<int>(order.size()) != model_.dimension()) throw ContractError("tour size mismatch");
      tour = Tour::from_order(order, [&](Vertex a, Vertex b) {
        const auto id = model_.edge_id(a, b);
        if (!id) throw ContractError("tour edge (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ") is not a graph edge");
        return model_.edge(static_cast<std::size_t>(*id)).weight;
      });
    } catch (const ContractError&) {
      if (must_be_valid) throw;
      return false;
    }
    if (tour.length() >= upper()) return false;
    result_.bounds.upper = tour.length();
    result_.bounds.incumbent = tour;
    if (notify && options_.on_incumbent) {
      if (auto better = options_.on_incumbent(tour)) adopt(better->order_vector(), false, false);
    }
    return true;
  }

  void emit_trace(const std::vector<EdgeState>& state, bool feasible, double lb) {
    if (!options_.trace) return;
    NodeTrace t;
    t.index = result_.nodes_expanded;
    for (std::size_t id = 0; id < state.size(); ++id) {
      const auto& e = model_.edge(id);
      if (state[id] == EdgeState::Included) t.included.emplace_back(e.u, e.v);
      if (state[id] == EdgeState::Excluded) t.excluded.emplace_back(e.u, e.v);
    }
    t.feasible = feasible;
    t.lb = lb;
    t.global_lower = result_.bounds.lower;
    t.upper = upper();
    options_.trace(t);
  }

  void expand(SearchNode node, std::vector<SearchNode>& heap) {
    std::vector<EdgeState> state(model_.edge_count(), EdgeState::Free);
    for (const auto& [id, s] : node.fixes) state[static_cast<std::size_t>(id)] = s;

    const bool is_root = node.seq == 0;
    const int iterations = is_root ? options_.root_ascent : options_.child_ascent;
    auto ascent = detail::ascend(model_, state, std::move(node.penalties), iterations, node.scale,
                                 options_.schedule.halving_patience, upper());
    ++result_.nodes_expanded;
    const double lb = ascent.feasible ? std::max(node.key, ascent.lb) : node.key;
    if (is_root) result_.root_lb = ascent.feasible ? ascent.lb : 0.0;
    emit_trace(state, ascent.feasible, lb);
    if (!ascent.feasible) return;

    if (ascent.is_tour) {
      adopt(tour_from_edges(model_, ascent.tree.edges), /*notify=*/true, /*must_be_valid=*/false);
      return;
    }
    if (detail::bound_prunes(lb, upper())) return;

    const int branch_edge = choose_branch_edge(ascent, state);
    for (const EdgeState choice : {EdgeState::Excluded, EdgeState::Included}) {
      SearchNode child;
      child.fixes = node.fixes;
      std::vector<EdgeState> child_state = state;
      child_state[static_cast<std::size_t>(branch_edge)] = choice;
      child.fixes.emplace_back(branch_edge, choice);
      if (!propagate(model_, child_state, child.fixes)) continue;
      child.penalties = ascent.penalties;
      child.scale = ascent.final_scale;
      child.key = lb;
      child.seq = ++sequence_;
      heap.push_back(std::move(child));
      std::push_heap(heap.begin(), heap.end(), LaterFirst{});
    }
  }

  // Among free 1-tree edges at the highest-degree vertex, the one with the
  // largest penalized weight; ties go to the smaller endpoint pair.
  int choose_branch_edge(const detail::AscentResult& ascent, const std::vector<EdgeState>& state) const {
    const auto& degrees = ascent.tree.degrees;
    const auto hub = static_cast<Vertex>(std::max_element(degrees.begin(), degrees.end()) - degrees.begin());
    int pick = -1;
    double pick_w = 0.0;
    for (int id : ascent.tree.edges) {
      const auto& e = model_.edge(static_cast<std::size_t>(id));
      if ((e.u != hub && e.v != hub) || state[static_cast<std::size_t>(id)] != EdgeState::Free) continue;
      const double w = static_cast<double>(e.weight) + ascent.penalties[static_cast<std::size_t>(e.u)] +
                       ascent.penalties[static_cast<std::size_t>(e.v)];
      if (pick < 0 || w > pick_w) {
        pick = id;
        pick_w = w;
        continue;
      }
      const auto& p = model_.edge(static_cast<std::size_t>(pick));
      if (w == pick_w && std::make_pair(e.u, e.v) < std::make_pair(p.u, p.v)) pick = id;
    }
    return pick;
  }

  const CostModel& model_;
  const BnbOptions& options_;
  OptimalResult result_;
  std::uint64_t sequence_ = 0;
};

template <class Graph>
OptimalResult run_branch_and_bound(const Graph& graph, const std::optional<Tour>& warm, const BnbOptions& options) {
  const auto model = CostModel::from(graph);
  std::optional<std::vector<Vertex>> warm_order;
  if (warm) warm_order = warm->order_vector();
  const auto start = std::chrono::steady_clock::now();
  OptimalResult result = BranchAndBound(model, options).run(warm_order);
  result.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace

OptimalResult branch_and_bound(const SparseGraph& graph, const std::optional<Tour>& warm, const BnbOptions& options) {
  return run_branch_and_bound(graph, warm, options);
}

OptimalResult branch_and_bound(const PenaltyCompletion& graph, const std::optional<Tour>& warm,
                               const BnbOptions& options) {
  return run_branch_and_bound(graph, warm, options);
}

}  // namespace sparse_tsp
