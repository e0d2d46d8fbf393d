/* C interface to the sparse TSP toolkit.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every call returning stsp_status leaves a message for stsp_last_error() on
 * failure (per thread). Strings handed out through char** are owned by the
 * caller and released with stsp_string_free. Vertex ids are 0-based here;
 * files and JSON use 1-based ids. */
#ifndef SPARSE_TSP_H
#define SPARSE_TSP_H

#include <stddef.h>
#include <stdint.h>

#if defined(SPARSE_TSP_BUILDING_LIBRARY)
#define STSP_API __attribute__((visibility("default")))
#else
#define STSP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum stsp_status {
  STSP_OK = 0,
  STSP_INVALID_ARGUMENT = 1, /* precondition violated: bad tour, graph too sparse, ... */
  STSP_PARSE_ERROR = 2,      /* input text is not in a supported format */
  STSP_IO_ERROR = 3,         /* file could not be read or written */
  STSP_INTERNAL_ERROR = 4
} stsp_status;

typedef enum stsp_mode { STSP_MODE_HYBRID = 0, STSP_MODE_SPARSE_NOWARM = 1, STSP_MODE_COMPLETE_BASELINE = 2 } stsp_mode;

typedef enum stsp_solve_status {
  STSP_SOLVE_OPTIMAL = 0,
  STSP_SOLVE_TIMEOUT = 1,
  STSP_SOLVE_INFEASIBLE = 2,
  STSP_SOLVE_NO_TOUR_FOUND = 3
} stsp_solve_status;

typedef enum stsp_hcp_status { STSP_HCP_FOUND = 0, STSP_HCP_NOT_FOUND = 1, STSP_HCP_INFEASIBLE = 2 } stsp_hcp_status;

typedef struct stsp_instance stsp_instance;
typedef struct stsp_graph stsp_graph;
typedef struct stsp_tour stsp_tour;

STSP_API const char* stsp_last_error(void);
STSP_API void stsp_string_free(char* text);
STSP_API const char* stsp_version(void);

/* Instances (TSPLIB EUC_2D). */
STSP_API stsp_status stsp_instance_parse(const char* text, stsp_instance** out);
STSP_API stsp_status stsp_instance_load(const char* path, stsp_instance** out);
STSP_API stsp_status stsp_instance_generate(int n, uint64_t seed, int64_t box, stsp_instance** out);
STSP_API stsp_status stsp_instance_write(const stsp_instance* instance, char** out_text);
STSP_API int stsp_instance_dimension(const stsp_instance* instance);
STSP_API const char* stsp_instance_name(const stsp_instance* instance);
STSP_API int64_t stsp_instance_distance(const stsp_instance* instance, int i, int j);
STSP_API void stsp_instance_free(stsp_instance* instance);

/* Candidate graphs. k >= n - 1 yields the complete graph; `repair` nonzero
 * tops the k-nearest-neighbor graph up to minimum degree 2 and connectivity. */
STSP_API stsp_status stsp_graph_knn(const stsp_instance* instance, int k, int repair, stsp_graph** out);
STSP_API stsp_status stsp_graph_parse(const char* text, stsp_graph** out);
STSP_API stsp_status stsp_graph_write(const stsp_graph* graph, char** out_text);
STSP_API stsp_status stsp_graph_stats_json(const stsp_graph* graph, char** out_json);
STSP_API int stsp_graph_dimension(const stsp_graph* graph);
STSP_API size_t stsp_graph_edge_count(const stsp_graph* graph);
STSP_API void stsp_graph_free(stsp_graph* graph);

/* Tours. */
STSP_API stsp_status stsp_tour_parse(const char* text, int dimension, stsp_tour** out);
STSP_API stsp_status stsp_tour_from_order(const int* order, size_t count, stsp_tour** out);
STSP_API stsp_status stsp_tour_write(const stsp_tour* tour, const char* name, char** out_text);
STSP_API size_t stsp_tour_size(const stsp_tour* tour);
STSP_API const int* stsp_tour_order(const stsp_tour* tour);
/* Length under the instance metric; -1 if the tour does not fit the instance. */
STSP_API int64_t stsp_tour_length(const stsp_tour* tour, const stsp_instance* instance);
STSP_API void stsp_tour_free(stsp_tour* tour);

/* Stages. The JSON outputs are optional (pass NULL to skip); out_tour receives
 * NULL when no tour is available. */
STSP_API stsp_status stsp_hcp_solve(const stsp_graph* graph, uint64_t budget, uint64_t seed, stsp_hcp_status* out_status,
                                    stsp_tour** out_tour, char** out_json);
STSP_API stsp_status stsp_improve(const stsp_graph* graph, const stsp_tour* tour, uint64_t budget, stsp_tour** out_tour,
                                  char** out_json);
/* Exact search over the graph's edges; warm may be NULL. time_limit <= 0
 * means no deadline. */
STSP_API stsp_status stsp_exact(const stsp_graph* graph, const stsp_tour* warm, uint64_t node_budget, double time_limit,
                                int* out_optimal, stsp_tour** out_tour, char** out_json);

typedef struct stsp_config {
  int k;
  uint64_t hcp_budget;
  int hcp_restarts;
  uint64_t improve_budget;
  uint64_t node_budget;
  double time_limit; /* seconds */
  uint64_t seed;
  stsp_mode mode;
} stsp_config;

STSP_API void stsp_config_default(stsp_config* config);
/* Accepts "hybrid", "sparse", "complete" and the mode names. */
STSP_API stsp_status stsp_parse_mode(const char* text, stsp_mode* out);

STSP_API stsp_status stsp_solve(const stsp_instance* instance, const stsp_config* config,
                                stsp_solve_status* out_status, stsp_tour** out_tour, char** out_json);

/* Benchmark over instance files. Each CSV line (no newline) is passed to
 * on_line in suite order as soon as it is final. out_summary, if non-NULL,
 * receives a plain-text comparison table. */
typedef void (*stsp_line_callback)(const char* line, void* user);

STSP_API const char* stsp_bench_csv_header(void);
STSP_API stsp_status stsp_bench(const char* const* paths, size_t path_count, const stsp_mode* modes, size_t mode_count,
                                const stsp_config* config, int jobs, stsp_line_callback on_line, void* user,
                                char** out_summary);

#ifdef __cplusplus
}
#endif

#endif
