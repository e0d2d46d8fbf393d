#include "sparse_tsp/report_json.hpp"

#include <json.hpp>

namespace sparse_tsp {

namespace {

using nlohmann::json;

json one_based(std::span<const Vertex> order) {
  json out = json::array();
  for (Vertex v : order) out.push_back(v + 1);
  return out;
}

template <class T>
json optional_value(const std::optional<T>& value) {
  return value ? json(*value) : json(nullptr);
}

json stats_json(const SparsificationStats& s) {
  return {{"edge_count", s.edge_count},
          {"min_degree", s.min_degree},
          {"avg_degree", s.avg_degree},
          {"max_degree", s.max_degree},
          {"retained_fraction", s.retained_fraction}};
}

json certificate_json(const InfeasibilityCertificate& c) {
  json steps = json::array();
  for (const auto& step : c.derivation) {
    steps.push_back({{"kind", step.kind == PruneStep::Kind::Force ? "Force" : "Remove"},
                     {"witness", step.witness + 1},
                     {"edge", {step.u + 1, step.v + 1}}});
  }
  json out = {{"kind", c.kind == InfeasibilityCertificate::Kind::DegreeDeficient ? "DegreeDeficient" : "ForcedSubcycle"},
              {"derivation", steps},
              {"summary", c.describe()}};
  if (c.vertex >= 0) out["vertex"] = c.vertex + 1;
  if (!c.cycle.empty()) out["cycle"] = one_based(c.cycle);
  return out;
}

}  // namespace

std::string to_json(const SolveReport& r, int indent) {
  json j = {
      {"instance_name", r.instance_name},
      {"dimension", r.dimension},
      {"mode", to_string(r.mode)},
      {"status", to_string(r.status)},
      {"value", optional_value(r.value)},
      {"certification", to_string(r.certification)},
      {"timings",
       {{"sparsify_ms", r.timings.sparsify_ms},
        {"hcp_ms", r.timings.hcp_ms},
        {"improve_ms", r.timings.improve_ms},
        {"exact_ms", r.timings.exact_ms},
        {"total_ms", r.timings.total_ms}}},
      {"nodes_expanded", r.nodes_expanded},
      {"hcp_effort", r.hcp_effort},
      {"edge_stats", stats_json(r.edge_stats)},
      {"k_used", r.k_used},
      {"escalations", r.escalations},
      {"root_lb", r.root_lb},
      {"lower_bound", r.lower_bound},
      {"upper_bound", optional_value(r.upper_bound)},
      {"initial_upper", optional_value(r.initial_upper)},
      {"penalty", r.penalty},
      {"warm_has_penalty_edge", r.warm_has_penalty_edge},
      {"hcp_reinvocations", r.hcp_reinvocations},
      {"tour", r.tour ? one_based(r.tour->order()) : json(nullptr)},
  };
  return j.dump(indent);
}

std::string to_json(const SparsificationStats& stats, int indent) { return stats_json(stats).dump(indent); }

std::string to_json(const HcpOutcome& outcome, int indent) {
  json j = {{"status", to_string(outcome.status)},
            {"effort", outcome.effort},
            {"tour", outcome.tour.empty() ? json(nullptr) : one_based(outcome.tour)},
            {"certificate", outcome.certificate ? certificate_json(*outcome.certificate) : json(nullptr)}};
  return j.dump(indent);
}

std::string to_json(const ImprovementResult& result, int indent) {
  json j = {{"initial_length", result.initial_length},
            {"final_length", result.final_length},
            {"moves_applied", result.moves_applied},
            {"local_optimum", result.local_optimum},
            {"tour", one_based(result.tour.order())}};
  return j.dump(indent);
}

std::string to_json(const OptimalResult& result, int indent) {
  json j = {{"status", to_string(result.status)},
            {"value", optional_value(result.value)},
            {"nodes_expanded", result.nodes_expanded},
            {"root_lb", result.root_lb},
            {"lower_bound", result.bounds.lower},
            {"upper_bound", result.bounds.upper == kInfiniteLength ? json(nullptr) : json(result.bounds.upper)},
            {"timed_out", result.timed_out},
            {"wall_ms", result.wall_ms},
            {"tour", result.tour ? one_based(result.tour->order()) : json(nullptr)}};
  return j.dump(indent);
}

}  // namespace sparse_tsp
