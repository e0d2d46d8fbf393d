#include "sparse_tsp/improve.hpp"

#include <algorithm>
#include <cassert>
#include <optional>

namespace sparse_tsp {

namespace {

struct SparseView {
  const SparseGraph& graph;

  int dimension() const { return graph.dimension(); }
  std::optional<Length> weight(Vertex a, Vertex b) const { return graph.weight(a, b); }
  std::span<const Neighbor> candidates(Vertex v) const { return graph.neighbors(v); }
};

// Candidates come from the real edges; every pair has a (possibly penalty)
// weight.
struct PenaltyView {
  const PenaltyCompletion& graph;

  int dimension() const { return graph.dimension(); }
  std::optional<Length> weight(Vertex a, Vertex b) const { return graph.weight(a, b); }
  std::span<const Neighbor> candidates(Vertex v) const { return graph.base().neighbors(v); }
};

template <class View>
Tour evaluate(std::vector<Vertex> order, const View& view) {
  if (static_cast<int>(order.size()) != view.dimension()) {
    throw ContractError("tour size " + std::to_string(order.size()) + " does not match graph dimension " +
                        std::to_string(view.dimension()));
  }
  return Tour::from_order(std::move(order), [&](Vertex a, Vertex b) {
    const auto w = view.weight(a, b);
    if (!w) throw ContractError("tour edge (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ") is not a graph edge");
    return *w;
  });
}

// Array tour with position index; segment reversal flips the shorter side.
class TourArray {
 public:
  explicit TourArray(std::span<const Vertex> order) : order_(order.begin(), order.end()), pos_(order.size()) {
    for (std::size_t i = 0; i < order_.size(); ++i) pos_[static_cast<std::size_t>(order_[i])] = static_cast<int>(i);
  }

  int size() const { return static_cast<int>(order_.size()); }
  Vertex at(int i) const { return order_[static_cast<std::size_t>(wrap(i))]; }
  int pos(Vertex v) const { return pos_[static_cast<std::size_t>(v)]; }
  Vertex next(Vertex v) const { return at(pos(v) + 1); }
  Vertex prev(Vertex v) const { return at(pos(v) - 1); }
  const std::vector<Vertex>& order() const { return order_; }

  // Reverses the forward run of positions i..j (inclusive, cyclic).
  void reverse(int i, int j) {
    const int n = size();
    int len = wrap(j - i) + 1;
    if (2 * len > n) {
      const int ni = wrap(j + 1);
      const int nj = wrap(i - 1);
      i = ni;
      j = nj;
      len = n - len;
    }
    for (int k = 0; k < len / 2; ++k) {
      const int a = wrap(i + k);
      const int b = wrap(j - k);
      std::swap(order_[static_cast<std::size_t>(a)], order_[static_cast<std::size_t>(b)]);
      pos_[static_cast<std::size_t>(order_[static_cast<std::size_t>(a)])] = a;
      pos_[static_cast<std::size_t>(order_[static_cast<std::size_t>(b)])] = b;
    }
  }

  void assign(std::vector<Vertex> order) {
    order_ = std::move(order);
    for (std::size_t i = 0; i < order_.size(); ++i) pos_[static_cast<std::size_t>(order_[i])] = static_cast<int>(i);
  }

 private:
  int wrap(int i) const {
    const int n = size();
    i %= n;
    return i < 0 ? i + n : i;
  }

  std::vector<Vertex> order_;
  std::vector<int> pos_;
};

template <class View>
Length current_length(const TourArray& t, const View& view) {
  Length total = 0;
  for (int i = 0; i < t.size(); ++i) total += *view.weight(t.at(i), t.at(i + 1));
  return total;
}

template <class View>
void check_move(const TourArray& t, const View& view, Length& tracked, Length delta) {
  tracked += delta;
#ifndef NDEBUG
  assert(delta < 0);
  assert(current_length(t, view) == tracked);
#else
  (void)t;
  (void)view;
#endif
}

template <class View>
ImprovementResult run_two_opt(const Tour& tour, const View& view, std::uint64_t budget) {
  const Tour start = evaluate(tour.order_vector(), view);
  TourArray t(start.order());
  const int n = t.size();
  Length length = start.length();
  std::uint64_t moves = 0;
  bool local_optimum = false;

  auto try_vertex = [&](Vertex a) -> bool {
    for (int dir = 0; dir < 2; ++dir) {
      const Vertex b = dir == 0 ? t.next(a) : t.prev(a);
      const Length wab = *view.weight(a, b);
      for (const Neighbor& nb : view.candidates(a)) {
        const Vertex c = nb.vertex;
        if (c == b || nb.weight >= wab) continue;
        const Vertex d = dir == 0 ? t.next(c) : t.prev(c);
        if (d == a) continue;
        const auto wbd = view.weight(b, d);
        if (!wbd) continue;
        const Length delta = nb.weight + *wbd - wab - *view.weight(c, d);
        if (delta >= 0) continue;
        if (dir == 0) {
          t.reverse(t.pos(b), t.pos(c));  // a b ... c d  ->  a c ... b d
        } else {
          t.reverse(t.pos(a), t.pos(d));  // b a ... d c  ->  b d ... a c
        }
        check_move(t, view, length, delta);
        return true;
      }
    }
    return false;
  };

  if (n > 3) {
    bool improved = true;
    while (improved && moves < budget) {
      improved = false;
      for (int i = 0; i < n && moves < budget; ++i) {
        const Vertex a = t.at(i);
        while (moves < budget && try_vertex(a)) {
          ++moves;
          improved = true;
        }
      }
    }
    local_optimum = !improved;
  } else {
    local_optimum = true;
  }

  ImprovementResult out;
  out.initial_length = start.length();
  out.tour = evaluate(t.order(), view);
  out.final_length = out.tour.length();
  out.moves_applied = moves;
  out.local_optimum = local_optimum;
  assert(out.final_length == length);
  return out;
}

template <class View>
ImprovementResult run_or_opt(const Tour& tour, const View& view, int max_segment, std::uint64_t budget) {
  if (max_segment < 1 || max_segment > 3) {
    throw ContractError("or-opt max_segment must lie in [1, 3], got " + std::to_string(max_segment));
  }
  const Tour start = evaluate(tour.order_vector(), view);
  TourArray t(start.order());
  const int n = t.size();
  Length length = start.length();
  std::uint64_t moves = 0;

  // Moves the forward run starting at position i (s vertices) between c and d,
  // with `lead` adjacent to c.
  auto relocate = [&](int i, int s, Vertex c, Vertex d, Vertex lead) {
    std::vector<Vertex> segment;
    for (int k = 0; k < s; ++k) segment.push_back(t.at(i + k));
    if (lead != segment.front()) std::reverse(segment.begin(), segment.end());
    std::vector<Vertex> rebuilt;
    rebuilt.reserve(static_cast<std::size_t>(n));
    for (int k = s; k < n; ++k) {
      const Vertex v = t.at(i + k);
      rebuilt.push_back(v);
      const Vertex after = t.at(i + (k + 1 < n ? k + 1 : s));
      if (v == c && after == d) {
        rebuilt.insert(rebuilt.end(), segment.begin(), segment.end());
      } else if (v == d && after == c) {
        rebuilt.insert(rebuilt.end(), segment.rbegin(), segment.rend());
      }
    }
    t.assign(std::move(rebuilt));
  };

  auto try_position = [&](int i) -> bool {
    for (int s = 1; s <= max_segment; ++s) {
      if (n - s < 3) break;
      const Vertex first = t.at(i);
      const Vertex last = t.at(i + s - 1);
      const Vertex p = t.prev(first);
      const Vertex nx = t.next(last);
      const auto wpn = view.weight(p, nx);
      if (!wpn) continue;
      const Length removal_gain = *view.weight(p, first) + *view.weight(last, nx) - *wpn;
      if (removal_gain <= 0) continue;
      auto in_segment = [&](Vertex v) {
        int offset = t.pos(v) - i;
        if (offset < 0) offset += n;
        return offset < s;
      };
      for (const Vertex lead : {first, last}) {
        const Vertex trail = lead == first ? last : first;
        for (const Neighbor& nb : view.candidates(lead)) {
          const Vertex c = nb.vertex;
          if (in_segment(c) || nb.weight >= removal_gain) continue;
          for (const Vertex d : {t.next(c), t.prev(c)}) {
            if (in_segment(d)) continue;
            const auto wdt = view.weight(d, trail);
            if (!wdt) continue;
            const Length insertion = nb.weight + *wdt - *view.weight(c, d);
            if (insertion >= removal_gain) continue;
            relocate(i, s, c, d, lead);
            check_move(t, view, length, insertion - removal_gain);
            return true;
          }
        }
        if (first == last) break;
      }
    }
    return false;
  };

  bool improved = true;
  while (improved && moves < budget) {
    improved = false;
    for (int i = 0; i < n && moves < budget; ++i) {
      while (moves < budget && try_position(i)) {
        ++moves;
        improved = true;
      }
    }
  }

  ImprovementResult out;
  out.initial_length = start.length();
  out.tour = evaluate(t.order(), view);
  out.final_length = out.tour.length();
  out.moves_applied = moves;
  out.local_optimum = !improved;
  assert(out.final_length == length);
  return out;
}

template <class View>
ImprovementResult run_until_stable(const Tour& tour, const View& view, std::uint64_t budget) {
  const Tour start = evaluate(tour.order_vector(), view);
  ImprovementResult state;
  state.tour = start;
  state.initial_length = start.length();
  state.final_length = start.length();
  std::uint64_t used = 0;

  while (true) {
    const ImprovementResult two = run_two_opt(state.tour, view, budget - used);
    used += two.moves_applied;
    if (used >= budget) {
      state.tour = two.tour;
      state.local_optimum = false;
      break;
    }
    const ImprovementResult orr = run_or_opt(two.tour, view, 3, budget - used);
    used += orr.moves_applied;
    state.tour = orr.tour;
    if (orr.moves_applied == 0 && two.local_optimum && orr.local_optimum) {
      state.local_optimum = true;
      break;
    }
    if (used >= budget) {
      state.local_optimum = false;
      break;
    }
  }
  state.final_length = state.tour.length();
  state.moves_applied = used;
  return state;
}

template <class WeightFn>
Tour nearest_neighbor(int n, WeightFn&& weight) {
  std::vector<char> visited(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> order{0};
  visited[0] = 1;
  Vertex current = 0;
  for (int step = 1; step < n; ++step) {
    Vertex best = -1;
    Length best_w = kInfiniteLength;
    for (Vertex v = 0; v < n; ++v) {
      if (visited[static_cast<std::size_t>(v)]) continue;
      const Length w = weight(current, v);
      if (w < best_w) {
        best_w = w;
        best = v;
      }
    }
    visited[static_cast<std::size_t>(best)] = 1;
    order.push_back(best);
    current = best;
  }
  return Tour::from_order(std::move(order), weight);
}

}  // namespace

ImprovementResult two_opt_pass(const Tour& tour, const SparseGraph& graph, std::uint64_t move_budget) {
  return run_two_opt(tour, SparseView{graph}, move_budget);
}
ImprovementResult two_opt_pass(const Tour& tour, const PenaltyCompletion& graph, std::uint64_t move_budget) {
  return run_two_opt(tour, PenaltyView{graph}, move_budget);
}
ImprovementResult or_opt_pass(const Tour& tour, const SparseGraph& graph, int max_segment, std::uint64_t move_budget) {
  return run_or_opt(tour, SparseView{graph}, max_segment, move_budget);
}
ImprovementResult or_opt_pass(const Tour& tour, const PenaltyCompletion& graph, int max_segment,
                              std::uint64_t move_budget) {
  return run_or_opt(tour, PenaltyView{graph}, max_segment, move_budget);
}
ImprovementResult improve_until_stable(const Tour& tour, const SparseGraph& graph, std::uint64_t move_budget) {
  return run_until_stable(tour, SparseView{graph}, move_budget);
}
ImprovementResult improve_until_stable(const Tour& tour, const PenaltyCompletion& graph, std::uint64_t move_budget) {
  return run_until_stable(tour, PenaltyView{graph}, move_budget);
}

Tour tour_on_graph(std::vector<Vertex> order, const SparseGraph& graph) {
  return evaluate(std::move(order), SparseView{graph});
}
Tour tour_on_graph(std::vector<Vertex> order, const PenaltyCompletion& graph) {
  return evaluate(std::move(order), PenaltyView{graph});
}

Tour nearest_neighbor_tour(const EuclideanInstance& instance) {
  return nearest_neighbor(instance.dimension(), [&](Vertex a, Vertex b) { return instance.distance(a, b); });
}

Tour nearest_neighbor_tour(const PenaltyCompletion& graph) {
  return nearest_neighbor(graph.dimension(), [&](Vertex a, Vertex b) { return graph.weight(a, b); });
}

}  // namespace sparse_tsp
