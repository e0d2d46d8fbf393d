#include "sparse_tsp/sparse_tsp.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>

#include "sparse_tsp/bench.hpp"
#include "sparse_tsp/report_json.hpp"

struct stsp_instance {
  sparse_tsp::EuclideanInstance value;
};

struct stsp_graph {
  sparse_tsp::SparseGraph value;
};

struct stsp_tour {
  std::vector<int> order;
};

namespace {

using namespace sparse_tsp;

thread_local std::string last_error;

stsp_status fail(stsp_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class Body>
stsp_status guarded(Body&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const ParseError& e) {
    return fail(STSP_PARSE_ERROR, e.what());
  } catch (const ContractError& e) {
    return fail(STSP_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(STSP_INTERNAL_ERROR, "out of memory");
  } catch (const std::runtime_error& e) {
    return fail(STSP_IO_ERROR, e.what());
  } catch (const std::exception& e) {
    return fail(STSP_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(STSP_INTERNAL_ERROR, "unknown error");
  }
}

char* duplicate(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

void put_string(char** out, const std::string& text) {
  if (out) *out = duplicate(text);
}

void put_tour(stsp_tour** out, std::span<const Vertex> order) {
  if (!out) return;
  *out = order.empty() ? nullptr : new stsp_tour{std::vector<int>(order.begin(), order.end())};
}

#define STSP_REQUIRE(cond, what) \
  if (!(cond)) return fail(STSP_INVALID_ARGUMENT, what)

Mode to_mode(stsp_mode mode) {
  switch (mode) {
    case STSP_MODE_HYBRID: return Mode::Hybrid;
    case STSP_MODE_SPARSE_NOWARM: return Mode::SparseNoWarm;
    case STSP_MODE_COMPLETE_BASELINE: return Mode::CompleteBaseline;
  }
  throw ContractError("unknown mode value " + std::to_string(static_cast<int>(mode)));
}

stsp_mode from_mode(Mode mode) {
  switch (mode) {
    case Mode::Hybrid: return STSP_MODE_HYBRID;
    case Mode::SparseNoWarm: return STSP_MODE_SPARSE_NOWARM;
    case Mode::CompleteBaseline: return STSP_MODE_COMPLETE_BASELINE;
  }
  return STSP_MODE_HYBRID;
}

PipelineConfig to_config(const stsp_config& c) {
  PipelineConfig config;
  config.k = c.k;
  config.hcp_budget = c.hcp_budget;
  config.hcp_restarts = c.hcp_restarts;
  config.improve_budget = c.improve_budget;
  config.node_budget = c.node_budget;
  config.time_limit = c.time_limit;
  config.seed = c.seed;
  config.mode = to_mode(c.mode);
  return config;
}

}  // namespace

extern "C" {

const char* stsp_last_error(void) { return last_error.c_str(); }

void stsp_string_free(char* text) { std::free(text); }

const char* stsp_version(void) { return "0.1.0"; }

stsp_status stsp_instance_parse(const char* text, stsp_instance** out) {
  STSP_REQUIRE(text && out, "null argument");
  return guarded([&] {
    *out = new stsp_instance{parse_instance(text)};
    return STSP_OK;
  });
}

stsp_status stsp_instance_load(const char* path, stsp_instance** out) {
  STSP_REQUIRE(path && out, "null argument");
  return guarded([&] {
    *out = new stsp_instance{load_instance(path)};
    return STSP_OK;
  });
}

stsp_status stsp_instance_generate(int n, uint64_t seed, int64_t box, stsp_instance** out) {
  STSP_REQUIRE(out, "null argument");
  return guarded([&] {
    *out = new stsp_instance{gen_uniform_instance(n, seed, box)};
    return STSP_OK;
  });
}

stsp_status stsp_instance_write(const stsp_instance* instance, char** out_text) {
  STSP_REQUIRE(instance && out_text, "null argument");
  return guarded([&] {
    *out_text = duplicate(write_instance(instance->value));
    return STSP_OK;
  });
}

int stsp_instance_dimension(const stsp_instance* instance) { return instance ? instance->value.dimension() : 0; }

const char* stsp_instance_name(const stsp_instance* instance) {
  return instance ? instance->value.name().c_str() : "";
}

int64_t stsp_instance_distance(const stsp_instance* instance, int i, int j) {
  if (!instance) return -1;
  const int n = instance->value.dimension();
  if (i < 0 || j < 0 || i >= n || j >= n) return -1;
  return instance->value.distance(i, j);
}

void stsp_instance_free(stsp_instance* instance) { delete instance; }

stsp_status stsp_graph_knn(const stsp_instance* instance, int k, int repair, stsp_graph** out) {
  STSP_REQUIRE(instance && out, "null argument");
  return guarded([&] {
    const auto& inst = instance->value;
    if (k >= inst.dimension() - 1) {
      *out = new stsp_graph{complete_graph(inst)};
    } else {
      SparseGraph graph = build_knn_candidates(inst, k);
      if (repair) graph = repair_min_degree(graph, inst);
      *out = new stsp_graph{std::move(graph)};
    }
    return STSP_OK;
  });
}

stsp_status stsp_graph_parse(const char* text, stsp_graph** out) {
  STSP_REQUIRE(text && out, "null argument");
  return guarded([&] {
    *out = new stsp_graph{parse_edge_list(text)};
    return STSP_OK;
  });
}

stsp_status stsp_graph_write(const stsp_graph* graph, char** out_text) {
  STSP_REQUIRE(graph && out_text, "null argument");
  return guarded([&] {
    *out_text = duplicate(write_edge_list(graph->value));
    return STSP_OK;
  });
}

stsp_status stsp_graph_stats_json(const stsp_graph* graph, char** out_json) {
  STSP_REQUIRE(graph && out_json, "null argument");
  return guarded([&] {
    *out_json = duplicate(to_json(sparsification_stats(graph->value)));
    return STSP_OK;
  });
}

int stsp_graph_dimension(const stsp_graph* graph) { return graph ? graph->value.dimension() : 0; }

size_t stsp_graph_edge_count(const stsp_graph* graph) { return graph ? graph->value.edge_count() : 0; }

void stsp_graph_free(stsp_graph* graph) { delete graph; }

stsp_status stsp_tour_parse(const char* text, int dimension, stsp_tour** out) {
  STSP_REQUIRE(text && out, "null argument");
  return guarded([&] {
    *out = new stsp_tour{parse_tour(text, dimension)};
    return STSP_OK;
  });
}

stsp_status stsp_tour_from_order(const int* order, size_t count, stsp_tour** out) {
  STSP_REQUIRE(out && (order || count == 0), "null argument");
  return guarded([&] {
    std::vector<int> copy(order, order + count);
    Tour::check_permutation(copy);
    *out = new stsp_tour{std::move(copy)};
    return STSP_OK;
  });
}

stsp_status stsp_tour_write(const stsp_tour* tour, const char* name, char** out_text) {
  STSP_REQUIRE(tour && out_text, "null argument");
  return guarded([&] {
    *out_text = duplicate(write_tour(tour->order, name ? name : "tour"));
    return STSP_OK;
  });
}

size_t stsp_tour_size(const stsp_tour* tour) { return tour ? tour->order.size() : 0; }

const int* stsp_tour_order(const stsp_tour* tour) { return tour ? tour->order.data() : nullptr; }

int64_t stsp_tour_length(const stsp_tour* tour, const stsp_instance* instance) {
  if (!tour || !instance) return -1;
  try {
    if (static_cast<int>(tour->order.size()) != instance->value.dimension()) return -1;
    return Tour::on_instance(instance->value, tour->order).length();
  } catch (...) {
    return -1;
  }
}

void stsp_tour_free(stsp_tour* tour) { delete tour; }

stsp_status stsp_hcp_solve(const stsp_graph* graph, uint64_t budget, uint64_t seed, stsp_hcp_status* out_status,
                           stsp_tour** out_tour, char** out_json) {
  STSP_REQUIRE(graph, "null argument");
  return guarded([&] {
    const HcpOutcome outcome = find_hamiltonian_cycle(graph->value, budget, seed);
    std::string json = out_json ? to_json(outcome) : std::string();
    if (out_status) {
      *out_status = outcome.status == HcpStatus::Found      ? STSP_HCP_FOUND
                    : outcome.status == HcpStatus::NotFound ? STSP_HCP_NOT_FOUND
                                                            : STSP_HCP_INFEASIBLE;
    }
    put_tour(out_tour, outcome.tour);
    put_string(out_json, json);
    return STSP_OK;
  });
}

stsp_status stsp_improve(const stsp_graph* graph, const stsp_tour* tour, uint64_t budget, stsp_tour** out_tour,
                         char** out_json) {
  STSP_REQUIRE(graph && tour, "null argument");
  return guarded([&] {
    const ImprovementResult result = improve_until_stable(tour_on_graph(tour->order, graph->value), graph->value, budget);
    std::string json = out_json ? to_json(result) : std::string();
    put_tour(out_tour, result.tour.order());
    put_string(out_json, json);
    return STSP_OK;
  });
}

stsp_status stsp_exact(const stsp_graph* graph, const stsp_tour* warm, uint64_t node_budget, double time_limit,
                       int* out_optimal, stsp_tour** out_tour, char** out_json) {
  STSP_REQUIRE(graph, "null argument");
  return guarded([&] {
    std::optional<Tour> start;
    if (warm) start = tour_on_graph(warm->order, graph->value);
    BnbOptions options;
    options.node_budget = node_budget;
    if (time_limit > 0) {
      options.deadline = std::chrono::steady_clock::now() +
                         std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                             std::chrono::duration<double>(time_limit));
    }
    const OptimalResult result = branch_and_bound(graph->value, start, options);
    std::string json = out_json ? to_json(result) : std::string();
    if (out_optimal) *out_optimal = result.status == ExactStatus::Optimal;
    put_tour(out_tour, result.tour ? result.tour->order() : std::span<const Vertex>{});
    put_string(out_json, json);
    return STSP_OK;
  });
}

void stsp_config_default(stsp_config* config) {
  if (!config) return;
  const PipelineConfig d;
  config->k = d.k;
  config->hcp_budget = d.hcp_budget;
  config->hcp_restarts = d.hcp_restarts;
  config->improve_budget = d.improve_budget;
  config->node_budget = d.node_budget;
  config->time_limit = d.time_limit;
  config->seed = d.seed;
  config->mode = from_mode(d.mode);
}

stsp_status stsp_parse_mode(const char* text, stsp_mode* out) {
  STSP_REQUIRE(text && out, "null argument");
  return guarded([&] {
    *out = from_mode(parse_mode(text));
    return STSP_OK;
  });
}

stsp_status stsp_solve(const stsp_instance* instance, const stsp_config* config, stsp_solve_status* out_status,
                       stsp_tour** out_tour, char** out_json) {
  STSP_REQUIRE(instance && config, "null argument");
  return guarded([&] {
    const SolveReport report = solve(instance->value, to_config(*config));
    std::string json = out_json ? to_json(report) : std::string();
    if (out_status) {
      switch (report.status) {
        case SolveStatus::Optimal: *out_status = STSP_SOLVE_OPTIMAL; break;
        case SolveStatus::Timeout: *out_status = STSP_SOLVE_TIMEOUT; break;
        case SolveStatus::Infeasible: *out_status = STSP_SOLVE_INFEASIBLE; break;
        default: *out_status = STSP_SOLVE_NO_TOUR_FOUND; break;
      }
    }
    put_tour(out_tour, report.tour ? report.tour->order() : std::span<const Vertex>{});
    put_string(out_json, json);
    return STSP_OK;
  });
}

const char* stsp_bench_csv_header(void) { return kCsvHeader.data(); }

stsp_status stsp_bench(const char* const* paths, size_t path_count, const stsp_mode* modes, size_t mode_count,
                       const stsp_config* config, int jobs, stsp_line_callback on_line, void* user,
                       char** out_summary) {
  STSP_REQUIRE(config && (paths || path_count == 0) && (modes || mode_count == 0), "null argument");
  return guarded([&] {
    std::vector<SuiteEntry> suite;
    for (size_t i = 0; i < path_count; ++i) suite.push_back({paths[i], std::nullopt});
    std::vector<Mode> mode_list;
    for (size_t i = 0; i < mode_count; ++i) mode_list.push_back(to_mode(modes[i]));
    BenchOptions options;
    options.jobs = jobs;
    if (on_line) {
      options.on_record = [&](const CsvRecord& record) { on_line(format_csv_record(record).c_str(), user); };
    }
    const auto rows = run_benchmark(suite, mode_list, to_config(*config), options);
    put_string(out_summary, format_summary(rows, mode_list));
    return STSP_OK;
  });
}

}  // extern "C"
