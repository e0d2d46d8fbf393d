#include "sparse_tsp/pipeline.hpp"

#include <algorithm>
#include <chrono>

#include "sparse_tsp/hcp.hpp"
#include "sparse_tsp/improve.hpp"

namespace sparse_tsp {

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::Hybrid: return "Hybrid";
    case Mode::SparseNoWarm: return "SparseNoWarm";
    case Mode::CompleteBaseline: return "CompleteBaseline";
  }
  return "?";
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Timeout: return "Timeout";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::NoTourFound: return "NoTourFound";
    case SolveStatus::Crash: return "Crash";
  }
  return "?";
}

const char* to_string(Certification certification) {
  switch (certification) {
    case Certification::GlobalOptimum: return "GlobalOptimum";
    case Certification::OptimumWithinCandidateSet: return "OptimumWithinCandidateSet";
  }
  return "?";
}

Mode parse_mode(const std::string& text) {
  if (text == "hybrid" || text == "Hybrid") return Mode::Hybrid;
  if (text == "sparse" || text == "SparseNoWarm" || text == "sparse-nowarm") return Mode::SparseNoWarm;
  if (text == "complete" || text == "CompleteBaseline" || text == "baseline") return Mode::CompleteBaseline;
  throw ContractError("unknown mode '" + text + "' (expected hybrid, sparse or complete)");
}

void PipelineConfig::validate() const {
  if (k < 1) throw ContractError("k must be positive");
  if (hcp_budget == 0 || improve_budget == 0 || node_budget == 0) throw ContractError("budgets must be positive");
  if (hcp_restarts < 1) throw ContractError("hcp_restarts must be positive");
  if (!(time_limit > 0.0)) throw ContractError("time_limit must be positive");
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

Clock::time_point deadline_after(double seconds) {
  const auto budget = std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
  return Clock::now() + budget;
}

SparseGraph candidate_graph(const EuclideanInstance& instance, int k) {
  const int n = instance.dimension();
  if (k >= n - 1) return complete_graph(instance);
  return repair_min_degree(build_knn_candidates(instance, k), instance);
}

// Copies the exact search outcome into the report; tour lengths are re-derived
// from the instance metric.
void record_search(SolveReport& report, const EuclideanInstance& instance, const OptimalResult& result) {
  report.nodes_expanded = result.nodes_expanded;
  report.root_lb = result.root_lb;
  report.lower_bound = result.bounds.lower;
  if (result.bounds.incumbent) {
    Tour metric = Tour::on_instance(instance, result.bounds.incumbent->order_vector());
    report.upper_bound = metric.length();
    report.tour = std::move(metric);
  }
  switch (result.status) {
    case ExactStatus::Optimal:
      report.status = SolveStatus::Optimal;
      report.value = report.upper_bound;
      break;
    case ExactStatus::Infeasible:
      report.status = SolveStatus::Infeasible;
      break;
    case ExactStatus::BudgetExceeded:
      report.status = SolveStatus::Timeout;
      break;
  }
  if (report.upper_bound) report.lower_bound = std::min(report.lower_bound, static_cast<double>(*report.upper_bound));
}

Certification certification_for(int k_used, int n) {
  return k_used >= n - 1 ? Certification::GlobalOptimum : Certification::OptimumWithinCandidateSet;
}

void require_mode(const PipelineConfig& config, Mode expected) {
  config.validate();
  if (config.mode != expected) {
    throw ContractError(std::string("pipeline expects mode ") + to_string(expected) + ", got " + to_string(config.mode));
  }
}

}  // namespace

SolveReport solve_hybrid(const EuclideanInstance& instance, const PipelineConfig& config) {
  require_mode(config, Mode::Hybrid);
  const auto start = Clock::now();
  const auto deadline = deadline_after(config.time_limit);
  const int n = instance.dimension();

  SolveReport report;
  report.instance_name = instance.name();
  report.dimension = n;
  report.mode = Mode::Hybrid;

  // Escalation ladder: k, 2k, 4k, then the complete graph.
  std::vector<int> ladder;
  for (int k = std::min(config.k, n - 1), step = 0; step < 3; ++step, k = std::min(2 * k, n - 1)) {
    if (ladder.empty() || ladder.back() != k) ladder.push_back(k);
  }
  if (ladder.back() != n - 1) ladder.push_back(n - 1);

  std::uint64_t next_seed = config.seed;
  SparseGraph graph;
  std::optional<Tour> found;
  for (std::size_t level = 0; level < ladder.size() && !found; ++level) {
    auto t0 = Clock::now();
    graph = candidate_graph(instance, ladder[level]);
    report.timings.sparsify_ms += elapsed_ms(t0);
    report.k_used = ladder[level];
    report.escalations = static_cast<int>(level);

    t0 = Clock::now();
    for (int attempt = 0; attempt < config.hcp_restarts; ++attempt) {
      const HcpOutcome outcome = find_hamiltonian_cycle(graph, config.hcp_budget, next_seed++);
      report.hcp_effort += outcome.effort;
      if (outcome.status == HcpStatus::Infeasible) break;  // certificate holds for every seed
      if (outcome.status != HcpStatus::Found) continue;
      Tour tour = tour_on_graph(outcome.tour, graph);
      if (!found || tour.length() < found->length()) found = std::move(tour);
    }
    report.timings.hcp_ms += elapsed_ms(t0);
  }
  report.edge_stats = sparsification_stats(graph);
  report.penalty = complete_with_penalty(graph).penalty();
  report.certification = certification_for(report.k_used, n);

  if (!found) {
    report.status = SolveStatus::NoTourFound;
    report.timings.total_ms = elapsed_ms(start);
    return report;
  }

  auto t0 = Clock::now();
  const ImprovementResult improved = improve_until_stable(*found, graph, config.improve_budget);
  report.timings.improve_ms = elapsed_ms(t0);
  report.initial_upper = improved.final_length;

  BnbOptions options;
  options.node_budget = config.node_budget;
  options.deadline = deadline;
  options.on_incumbent = [&](const Tour& incumbent) -> std::optional<Tour> {
    if (Clock::now() >= deadline) return std::nullopt;
    Tour best = improve_until_stable(incumbent, graph, config.improve_budget).tour;
    const HcpOutcome fresh = find_hamiltonian_cycle(graph, config.hcp_budget, next_seed++);
    report.hcp_effort += fresh.effort;
    ++report.hcp_reinvocations;
    if (fresh.status == HcpStatus::Found) {
      Tour candidate = improve_until_stable(tour_on_graph(fresh.tour, graph), graph, config.improve_budget).tour;
      if (candidate.length() < best.length()) best = std::move(candidate);
    }
    if (best.length() < incumbent.length()) return best;
    return std::nullopt;
  };

  t0 = Clock::now();
  const OptimalResult result = branch_and_bound(graph, improved.tour, options);
  report.timings.exact_ms = elapsed_ms(t0);
  record_search(report, instance, result);
  report.timings.total_ms = elapsed_ms(start);
  return report;
}

SolveReport solve_baseline(const EuclideanInstance& instance, const PipelineConfig& config) {
  require_mode(config, Mode::CompleteBaseline);
  const auto start = Clock::now();
  const auto deadline = deadline_after(config.time_limit);
  const int n = instance.dimension();

  SolveReport report;
  report.instance_name = instance.name();
  report.dimension = n;
  report.mode = Mode::CompleteBaseline;
  report.certification = Certification::GlobalOptimum;
  report.k_used = n - 1;

  auto t0 = Clock::now();
  const SparseGraph graph = complete_graph(instance);
  report.timings.sparsify_ms = elapsed_ms(t0);
  report.edge_stats = sparsification_stats(graph);
  report.penalty = complete_with_penalty(graph).penalty();

  t0 = Clock::now();
  const ImprovementResult improved = improve_until_stable(nearest_neighbor_tour(instance), graph, config.improve_budget);
  report.timings.improve_ms = elapsed_ms(t0);
  report.initial_upper = improved.final_length;

  BnbOptions options;
  options.node_budget = config.node_budget;
  options.deadline = deadline;
  t0 = Clock::now();
  const OptimalResult result = branch_and_bound(graph, improved.tour, options);
  report.timings.exact_ms = elapsed_ms(t0);
  record_search(report, instance, result);
  report.timings.total_ms = elapsed_ms(start);
  return report;
}

SolveReport solve_sparse_nowarm(const EuclideanInstance& instance, const PipelineConfig& config) {
  require_mode(config, Mode::SparseNoWarm);
  const auto start = Clock::now();
  const auto deadline = deadline_after(config.time_limit);
  const int n = instance.dimension();

  SolveReport report;
  report.instance_name = instance.name();
  report.dimension = n;
  report.mode = Mode::SparseNoWarm;

  auto t0 = Clock::now();
  const int k = std::min(config.k, n - 1);
  const PenaltyCompletion completion = complete_with_penalty(candidate_graph(instance, k));
  report.timings.sparsify_ms = elapsed_ms(t0);
  report.k_used = k;
  report.certification = certification_for(k, n);
  report.edge_stats = sparsification_stats(completion.base());
  report.penalty = completion.penalty();

  t0 = Clock::now();
  const ImprovementResult improved =
      improve_until_stable(nearest_neighbor_tour(completion), completion, config.improve_budget);
  report.timings.improve_ms = elapsed_ms(t0);
  report.initial_upper = improved.final_length;
  const auto order = improved.tour.order();
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (completion.is_penalty_edge(order[i], order[(i + 1) % order.size()])) report.warm_has_penalty_edge = true;
  }

  BnbOptions options;
  options.node_budget = config.node_budget;
  options.deadline = deadline;
  t0 = Clock::now();
  const OptimalResult result = branch_and_bound(completion, improved.tour, options);
  report.timings.exact_ms = elapsed_ms(t0);
  record_search(report, instance, result);

  // An optimum that still needs a penalty edge means the candidate graph has
  // no tour at all.
  if (result.status == ExactStatus::Optimal && result.value && *result.value >= completion.penalty()) {
    report.status = SolveStatus::Infeasible;
    report.value.reset();
  }
  report.timings.total_ms = elapsed_ms(start);
  return report;
}

SolveReport solve(const EuclideanInstance& instance, const PipelineConfig& config) {
  switch (config.mode) {
    case Mode::Hybrid: return solve_hybrid(instance, config);
    case Mode::SparseNoWarm: return solve_sparse_nowarm(instance, config);
    case Mode::CompleteBaseline: return solve_baseline(instance, config);
  }
  throw ContractError("unknown mode");
}

}  // namespace sparse_tsp
