#include <doctest.h>

#include <json.hpp>
#include <string>
#include <vector>

#include "sparse_tsp/sparse_tsp.h"

namespace {

const char* kSquare =
    "NAME : square\nTYPE : TSP\nDIMENSION : 4\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n"
    "1 0 0\n2 10 0\n3 10 10\n4 0 10\nEOF\n";

std::string take(char* text) {
  std::string out = text ? text : "";
  stsp_string_free(text);
  return out;
}

}  // namespace

TEST_SUITE("c_api") {
  TEST_CASE("instances parse, write and report distances") {
    stsp_instance* inst = nullptr;
    REQUIRE(stsp_instance_parse(kSquare, &inst) == STSP_OK);
    CHECK(stsp_instance_dimension(inst) == 4);
    CHECK(std::string(stsp_instance_name(inst)) == "square");
    CHECK(stsp_instance_distance(inst, 0, 2) == 14);
    CHECK(stsp_instance_distance(inst, 0, 9) == -1);

    char* text = nullptr;
    REQUIRE(stsp_instance_write(inst, &text) == STSP_OK);
    const std::string written = take(text);
    stsp_instance* back = nullptr;
    REQUIRE(stsp_instance_parse(written.c_str(), &back) == STSP_OK);
    REQUIRE(stsp_instance_write(back, &text) == STSP_OK);
    CHECK(take(text) == written);
    stsp_instance_free(back);
    stsp_instance_free(inst);
  }

  TEST_CASE("errors map to status codes with a message") {
    stsp_instance* inst = nullptr;
    CHECK(stsp_instance_parse("NAME : x\nTYPE : ATSP\n", &inst) == STSP_PARSE_ERROR);
    CHECK(inst == nullptr);
    CHECK(std::string(stsp_last_error()).size() > 0);
    CHECK(stsp_instance_load("/nonexistent/dir/file.tsp", &inst) == STSP_IO_ERROR);
    CHECK(stsp_instance_parse(nullptr, &inst) == STSP_INVALID_ARGUMENT);
    CHECK(stsp_instance_generate(2, 1, 100, &inst) == STSP_INVALID_ARGUMENT);

    stsp_mode mode;
    CHECK(stsp_parse_mode("sparse", &mode) == STSP_OK);
    CHECK(mode == STSP_MODE_SPARSE_NOWARM);
    CHECK(stsp_parse_mode("warp", &mode) == STSP_INVALID_ARGUMENT);

    stsp_tour* tour = nullptr;
    const int repeated[] = {0, 1, 1};
    CHECK(stsp_tour_from_order(repeated, 3, &tour) == STSP_INVALID_ARGUMENT);
    CHECK(stsp_tour_parse("TOUR_SECTION\n1\n2\n9\n-1\n", 3, &tour) == STSP_PARSE_ERROR);
    CHECK(stsp_version() != nullptr);
  }

  TEST_CASE("graphs and tours round-trip through text") {
    stsp_instance* inst = nullptr;
    REQUIRE(stsp_instance_generate(30, 4, 1000, &inst) == STSP_OK);
    stsp_graph* graph = nullptr;
    REQUIRE(stsp_graph_knn(inst, 5, 1, &graph) == STSP_OK);
    CHECK(stsp_graph_dimension(graph) == 30);
    char* text = nullptr;
    REQUIRE(stsp_graph_write(graph, &text) == STSP_OK);
    const std::string edges = take(text);
    stsp_graph* back = nullptr;
    REQUIRE(stsp_graph_parse(edges.c_str(), &back) == STSP_OK);
    CHECK(stsp_graph_edge_count(back) == stsp_graph_edge_count(graph));
    REQUIRE(stsp_graph_write(back, &text) == STSP_OK);
    CHECK(take(text) == edges);
    REQUIRE(stsp_graph_stats_json(graph, &text) == STSP_OK);
    const auto stats = nlohmann::json::parse(take(text));
    CHECK(stats["edge_count"].get<std::size_t>() == stsp_graph_edge_count(graph));
    CHECK(stsp_graph_parse("3 1\n1 1 4\n", &back) == STSP_PARSE_ERROR);

    std::vector<int> order(30);
    for (int i = 0; i < 30; ++i) order[static_cast<std::size_t>(i)] = (i * 7) % 30;
    stsp_tour* tour = nullptr;
    REQUIRE(stsp_tour_from_order(order.data(), order.size(), &tour) == STSP_OK);
    REQUIRE(stsp_tour_write(tour, "t", &text) == STSP_OK);
    stsp_tour* parsed = nullptr;
    REQUIRE(stsp_tour_parse(take(text).c_str(), 30, &parsed) == STSP_OK);
    REQUIRE(stsp_tour_size(parsed) == 30);
    CHECK(std::vector<int>(stsp_tour_order(parsed), stsp_tour_order(parsed) + 30) == order);
    CHECK(stsp_tour_length(parsed, inst) == stsp_tour_length(tour, inst));
    CHECK(stsp_tour_length(parsed, inst) > 0);

    stsp_tour_free(parsed);
    stsp_tour_free(tour);
    stsp_graph_free(back);
    stsp_graph_free(graph);
    stsp_instance_free(inst);
  }

  TEST_CASE("stages chain through opaque handles") {
    stsp_instance* inst = nullptr;
    REQUIRE(stsp_instance_generate(40, 2, 100000, &inst) == STSP_OK);
    stsp_graph* graph = nullptr;
    REQUIRE(stsp_graph_knn(inst, 8, 1, &graph) == STSP_OK);

    stsp_hcp_status hcp = STSP_HCP_NOT_FOUND;
    stsp_tour* cycle = nullptr;
    char* json = nullptr;
    REQUIRE(stsp_hcp_solve(graph, 1000000, 1, &hcp, &cycle, &json) == STSP_OK);
    REQUIRE(hcp == STSP_HCP_FOUND);
    CHECK(nlohmann::json::parse(take(json))["status"] == "Found");

    stsp_tour* improved = nullptr;
    REQUIRE(stsp_improve(graph, cycle, 1000000, &improved, &json) == STSP_OK);
    const auto imp = nlohmann::json::parse(take(json));
    CHECK(imp["final_length"].get<long long>() <= imp["initial_length"].get<long long>());
    CHECK(stsp_tour_length(improved, inst) == imp["final_length"].get<long long>());

    int optimal = 0;
    stsp_tour* best = nullptr;
    REQUIRE(stsp_exact(graph, improved, 1000000, 0, &optimal, &best, &json) == STSP_OK);
    CHECK(optimal == 1);
    const auto exact = nlohmann::json::parse(take(json));
    CHECK(exact["value"].get<long long>() == stsp_tour_length(best, inst));
    CHECK(exact["value"].get<long long>() <= stsp_tour_length(improved, inst));
    CHECK(exact.contains("wall_ms"));

    const int bad[] = {0, 1, 2};
    stsp_tour* short_tour = nullptr;
    REQUIRE(stsp_tour_from_order(bad, 3, &short_tour) == STSP_OK);
    CHECK(stsp_exact(graph, short_tour, 10, 0, &optimal, &best, nullptr) == STSP_INVALID_ARGUMENT);

    stsp_tour_free(short_tour);
    stsp_tour_free(best);
    stsp_tour_free(improved);
    stsp_tour_free(cycle);
    stsp_graph_free(graph);
    stsp_instance_free(inst);
  }

  TEST_CASE("solve reports through JSON") {
    stsp_instance* inst = nullptr;
    REQUIRE(stsp_instance_parse(kSquare, &inst) == STSP_OK);
    stsp_config config;
    stsp_config_default(&config);
    config.k = 2;
    for (stsp_mode mode : {STSP_MODE_HYBRID, STSP_MODE_SPARSE_NOWARM, STSP_MODE_COMPLETE_BASELINE}) {
      config.mode = mode;
      stsp_solve_status status = STSP_SOLVE_NO_TOUR_FOUND;
      stsp_tour* tour = nullptr;
      char* json = nullptr;
      REQUIRE(stsp_solve(inst, &config, &status, &tour, &json) == STSP_OK);
      CHECK(status == STSP_SOLVE_OPTIMAL);
      const auto report = nlohmann::json::parse(take(json));
      CHECK(report["value"] == 40);
      CHECK(report["status"] == "Optimal");
      CHECK(report["dimension"] == 4);
      CHECK(stsp_tour_length(tour, inst) == 40);
      stsp_tour_free(tour);
    }
    config.node_budget = 0;
    stsp_solve_status status;
    CHECK(stsp_solve(inst, &config, &status, nullptr, nullptr) == STSP_INVALID_ARGUMENT);
    stsp_instance_free(inst);
  }

  TEST_CASE("bench streams CSV lines") {
    stsp_instance* inst = nullptr;
    REQUIRE(stsp_instance_parse(kSquare, &inst) == STSP_OK);
    const std::string path = "c_api_square.tsp";
    char* text = nullptr;
    REQUIRE(stsp_instance_write(inst, &text) == STSP_OK);
    {
      FILE* f = std::fopen(path.c_str(), "w");
      REQUIRE(f);
      std::fputs(take(text).c_str(), f);
      std::fclose(f);
    }
    const char* paths[] = {path.c_str(), "no_such_file.tsp"};
    const stsp_mode modes[] = {STSP_MODE_HYBRID, STSP_MODE_COMPLETE_BASELINE};
    stsp_config config;
    stsp_config_default(&config);
    config.k = 2;
    std::vector<std::string> lines;
    char* summary = nullptr;
    REQUIRE(stsp_bench(paths, 2, modes, 2, &config, 2,
                       [](const char* line, void* user) { static_cast<std::vector<std::string>*>(user)->push_back(line); },
                       &lines, &summary) == STSP_OK);
    CHECK(take(summary).find("square") != std::string::npos);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0].rfind("square,4,Hybrid,Optimal,", 0) == 0);
    CHECK(lines[1].rfind("square,4,CompleteBaseline,Optimal,", 0) == 0);
    CHECK(lines[2].find(",ParseError,") != std::string::npos);
    CHECK(std::string(stsp_bench_csv_header()).rfind("instance,n,mode,status", 0) == 0);
    std::remove(path.c_str());
    stsp_instance_free(inst);
  }
}
