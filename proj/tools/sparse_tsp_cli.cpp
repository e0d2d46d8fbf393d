// sparse-tsp: command-line front end over the C API.
//
// Exit codes: 0 success, 1 the solver finished without the requested result
// (no optimum, no tour), 2 usage or input errors.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sparse_tsp/sparse_tsp.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSolver = 1;
constexpr int kExitUsage = 2;

struct Freer {
  void operator()(stsp_instance* p) const { stsp_instance_free(p); }
  void operator()(stsp_graph* p) const { stsp_graph_free(p); }
  void operator()(stsp_tour* p) const { stsp_tour_free(p); }
  void operator()(char* p) const { stsp_string_free(p); }
};
template <class T>
using Owned = std::unique_ptr<T, Freer>;

// Thrown when a C API call fails; carries the exit code to use.
struct CliFailure {
  int code;
  std::string message;
};

void check(stsp_status status, const std::string& context) {
  if (status == STSP_OK) return;
  const int code = status == STSP_INTERNAL_ERROR ? kExitSolver : kExitUsage;
  throw CliFailure{code, context + ": " + stsp_last_error()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliFailure{kExitUsage, "cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw CliFailure{kExitUsage, "cannot write '" + path + "'"};
}

Owned<stsp_instance> load_instance(const std::string& path) {
  stsp_instance* raw = nullptr;
  check(stsp_instance_load(path.c_str(), &raw), path);
  return Owned<stsp_instance>(raw);
}

Owned<stsp_graph> build_graph(const stsp_instance* instance, int k) {
  stsp_graph* raw = nullptr;
  check(stsp_graph_knn(instance, k, 1, &raw), "sparsify");
  return Owned<stsp_graph>(raw);
}

Owned<stsp_graph> complete(const stsp_instance* instance) {
  return build_graph(instance, stsp_instance_dimension(instance));
}

// Edge lists start with "n m"; TSPLIB files start with a keyword.
bool looks_like_edge_list(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  }
  return false;
}

std::string take(Owned<char>& text) { return text ? std::string(text.get()) : std::string(); }

void write_tour_file(const std::string& path, const stsp_tour* tour, const std::string& name) {
  if (path.empty() || !tour) return;
  char* raw = nullptr;
  check(stsp_tour_write(tour, name.c_str(), &raw), "write tour");
  Owned<char> text(raw);
  write_output(path, take(text));
}

std::string with_env(const std::string& flag) {
  std::string name = "SPARSE_TSP_";
  for (char c : flag) name += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return name;
}

struct SolveFlags {
  std::string mode = "hybrid";
  int k = 10;
  std::uint64_t hcp_budget = 1'000'000;
  int hcp_restarts = 4;
  std::uint64_t improve_budget = 1'000'000;
  std::uint64_t node_budget = 1'000'000;
  double time_limit = 300.0;
  std::uint64_t seed = 1;
};

void add_solver_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--k", f.k, "candidate neighbors per vertex")->envname(with_env("k"))->check(CLI::PositiveNumber);
  cmd->add_option("--hcp-budget", f.hcp_budget, "moves per HCP attempt")->envname(with_env("hcp-budget"));
  cmd->add_option("--hcp-restarts", f.hcp_restarts, "HCP attempts per candidate graph")
      ->envname(with_env("hcp-restarts"))
      ->check(CLI::PositiveNumber);
  cmd->add_option("--improve-budget", f.improve_budget, "improving moves per improvement run")
      ->envname(with_env("improve-budget"));
  cmd->add_option("--node-budget", f.node_budget, "branch-and-bound node limit")->envname(with_env("node-budget"));
  cmd->add_option("--time-limit", f.time_limit, "seconds per pipeline")->envname(with_env("time-limit"));
  cmd->add_option("--seed", f.seed, "random seed")->envname(with_env("seed"));
}

stsp_config to_config(const SolveFlags& f) {
  stsp_config c;
  stsp_config_default(&c);
  c.k = f.k;
  c.hcp_budget = f.hcp_budget;
  c.hcp_restarts = f.hcp_restarts;
  c.improve_budget = f.improve_budget;
  c.node_budget = f.node_budget;
  c.time_limit = f.time_limit;
  c.seed = f.seed;
  check(stsp_parse_mode(f.mode.c_str(), &c.mode), "--mode");
  return c;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void line_to_stream(const char* line, void* user) {
  auto* out = static_cast<std::ostream*>(user);
  *out << line << '\n';
  out->flush();
}

int run(int argc, char** argv) {
  CLI::App app{"Exact Euclidean TSP on sparse candidate graphs", "sparse-tsp"};
  app.require_subcommand(1);

  // solve
  SolveFlags solve_flags;
  std::string solve_input, solve_tour_out;
  auto* solve_cmd = app.add_subcommand("solve", "run a full pipeline and print a JSON report");
  solve_cmd->add_option("--mode", solve_flags.mode, "hybrid, sparse or complete")->envname(with_env("mode"));
  add_solver_flags(solve_cmd, solve_flags);
  solve_cmd->add_option("--tour-out", solve_tour_out, "write the best tour here")->envname(with_env("tour-out"));
  solve_cmd->add_option("input", solve_input, "TSPLIB file")->required();

  // sparsify
  int sparsify_k = 10;
  bool no_repair = false;
  std::string sparsify_input, sparsify_out;
  auto* sparsify_cmd = app.add_subcommand("sparsify", "write the k-nearest-neighbor candidate graph as an edge list");
  sparsify_cmd->add_option("--k", sparsify_k, "neighbors per vertex")->envname(with_env("k"))->check(CLI::PositiveNumber);
  sparsify_cmd->add_flag("--no-repair", no_repair, "skip the minimum-degree repair")->envname(with_env("no-repair"));
  sparsify_cmd->add_option("--out", sparsify_out, "edge list path (default: stdout)")->envname(with_env("out"));
  sparsify_cmd->add_option("input", sparsify_input, "TSPLIB file")->required();

  // hcp
  int hcp_k = 10;
  std::uint64_t hcp_budget = 1'000'000, hcp_seed = 1;
  std::string hcp_input, hcp_tour_out;
  auto* hcp_cmd = app.add_subcommand("hcp", "search for a Hamiltonian cycle in a candidate graph");
  hcp_cmd->add_option("--k", hcp_k, "neighbors per vertex when the input is a TSPLIB file")
      ->envname(with_env("k"))
      ->check(CLI::PositiveNumber);
  hcp_cmd->add_option("--budget", hcp_budget, "move budget")->envname(with_env("budget"));
  hcp_cmd->add_option("--seed", hcp_seed, "random seed")->envname(with_env("seed"));
  hcp_cmd->add_option("--tour-out", hcp_tour_out, "write the cycle here")->envname(with_env("tour-out"));
  hcp_cmd->add_option("input", hcp_input, "edge list or TSPLIB file")->required();

  // improve
  int improve_k = 0;
  std::uint64_t improve_budget = 1'000'000;
  std::string improve_input, improve_tour, improve_graph, improve_out;
  auto* improve_cmd = app.add_subcommand("improve", "apply 2-opt and Or-opt to a tour");
  improve_cmd->add_option("--k", improve_k, "restrict moves to a k-nearest-neighbor graph")->envname(with_env("k"));
  improve_cmd->add_option("--graph", improve_graph, "restrict moves to this edge list")->envname(with_env("graph"));
  improve_cmd->add_option("--budget", improve_budget, "improving move budget")->envname(with_env("budget"));
  improve_cmd->add_option("--out", improve_out, "write the improved tour here")->envname(with_env("out"));
  improve_cmd->add_option("input", improve_input, "TSPLIB file")->required();
  improve_cmd->add_option("tour", improve_tour, "TSPLIB tour file")->required();

  // exact
  int exact_k = 0;
  std::uint64_t node_budget = 1'000'000;
  double exact_time_limit = 300.0;
  std::string exact_input, exact_graph, exact_warm, exact_tour_out;
  auto* exact_cmd = app.add_subcommand("exact", "branch-and-bound on the complete or a candidate graph");
  exact_cmd->add_option("--k", exact_k, "solve within a k-nearest-neighbor graph (default: complete)")
      ->envname(with_env("k"));
  exact_cmd->add_option("--graph", exact_graph, "solve within this edge list")->envname(with_env("graph"));
  exact_cmd->add_option("--warm", exact_warm, "warm-start tour file")->envname(with_env("warm"));
  exact_cmd->add_option("--node-budget", node_budget, "node limit")->envname(with_env("node-budget"));
  exact_cmd->add_option("--time-limit", exact_time_limit, "seconds")->envname(with_env("time-limit"));
  exact_cmd->add_option("--tour-out", exact_tour_out, "write the optimal tour here")->envname(with_env("tour-out"));
  exact_cmd->add_option("input", exact_input, "TSPLIB file")->required();

  // bench
  SolveFlags bench_flags;
  std::string modes_text = "hybrid,sparse,complete", suite_dir, bench_out;
  std::vector<std::string> bench_files;
  int jobs = 1;
  auto* bench_cmd = app.add_subcommand("bench", "compare modes over a suite and write CSV");
  bench_cmd->add_option("--modes", modes_text, "comma-separated modes")->envname(with_env("modes"));
  bench_cmd->add_option("--suite", suite_dir, "directory of .tsp files")->envname(with_env("suite"));
  bench_cmd->add_option("--jobs", jobs, "instances solved concurrently")
      ->envname(with_env("jobs"))
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--out", bench_out, "CSV path (default: stdout)")->envname(with_env("out"));
  add_solver_flags(bench_cmd, bench_flags);
  bench_cmd->add_option("files", bench_files, "additional TSPLIB files");

  // gen
  int gen_n = 0;
  std::uint64_t gen_seed = 1;
  std::int64_t gen_box = 1'000'000;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "write a uniform random TSPLIB instance");
  gen_cmd->add_option("--n", gen_n, "number of points")->envname(with_env("n"))->required();
  gen_cmd->add_option("--seed", gen_seed, "random seed")->envname(with_env("seed"));
  gen_cmd->add_option("--box", gen_box, "grid side")->envname(with_env("box"));
  gen_cmd->add_option("--out", gen_out, "output path (default: stdout)")->envname(with_env("out"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cerr, std::cerr);
    std::cerr << app.help();
    return kExitUsage;
  }

  if (*solve_cmd) {
    const stsp_config config = to_config(solve_flags);
    auto instance = load_instance(solve_input);
    stsp_solve_status status{};
    stsp_tour* tour_raw = nullptr;
    char* json_raw = nullptr;
    check(stsp_solve(instance.get(), &config, &status, &tour_raw, &json_raw), "solve");
    Owned<stsp_tour> tour(tour_raw);
    Owned<char> json(json_raw);
    std::cout << take(json) << '\n';
    write_tour_file(solve_tour_out, tour.get(), stsp_instance_name(instance.get()));
    return status == STSP_SOLVE_OPTIMAL ? kExitOk : kExitSolver;
  }

  if (*sparsify_cmd) {
    auto instance = load_instance(sparsify_input);
    stsp_graph* raw = nullptr;
    check(stsp_graph_knn(instance.get(), sparsify_k, no_repair ? 0 : 1, &raw), "sparsify");
    Owned<stsp_graph> graph(raw);
    char* text_raw = nullptr;
    check(stsp_graph_write(graph.get(), &text_raw), "sparsify");
    Owned<char> text(text_raw);
    char* stats_raw = nullptr;
    check(stsp_graph_stats_json(graph.get(), &stats_raw), "sparsify");
    Owned<char> stats(stats_raw);
    write_output(sparsify_out, take(text));
    std::cerr << take(stats) << '\n';
    return kExitOk;
  }

  if (*hcp_cmd) {
    const std::string text = read_file(hcp_input);
    Owned<stsp_graph> graph;
    if (looks_like_edge_list(text)) {
      stsp_graph* raw = nullptr;
      check(stsp_graph_parse(text.c_str(), &raw), hcp_input);
      graph.reset(raw);
    } else {
      stsp_instance* raw = nullptr;
      check(stsp_instance_parse(text.c_str(), &raw), hcp_input);
      Owned<stsp_instance> instance(raw);
      graph = build_graph(instance.get(), hcp_k);
    }
    stsp_hcp_status status{};
    stsp_tour* tour_raw = nullptr;
    char* json_raw = nullptr;
    check(stsp_hcp_solve(graph.get(), hcp_budget, hcp_seed, &status, &tour_raw, &json_raw), "hcp");
    Owned<stsp_tour> tour(tour_raw);
    Owned<char> json(json_raw);
    std::cout << take(json) << '\n';
    write_tour_file(hcp_tour_out, tour.get(), std::filesystem::path(hcp_input).stem().string());
    return status == STSP_HCP_FOUND ? kExitOk : kExitSolver;
  }

  if (*improve_cmd) {
    auto instance = load_instance(improve_input);
    Owned<stsp_graph> graph;
    if (!improve_graph.empty()) {
      stsp_graph* raw = nullptr;
      check(stsp_graph_parse(read_file(improve_graph).c_str(), &raw), improve_graph);
      graph.reset(raw);
    } else {
      graph = improve_k > 0 ? build_graph(instance.get(), improve_k) : complete(instance.get());
    }
    stsp_tour* start_raw = nullptr;
    check(stsp_tour_parse(read_file(improve_tour).c_str(), stsp_instance_dimension(instance.get()), &start_raw),
          improve_tour);
    Owned<stsp_tour> start(start_raw);
    stsp_tour* tour_raw = nullptr;
    char* json_raw = nullptr;
    check(stsp_improve(graph.get(), start.get(), improve_budget, &tour_raw, &json_raw), "improve");
    Owned<stsp_tour> tour(tour_raw);
    Owned<char> json(json_raw);
    std::cout << take(json) << '\n';
    write_tour_file(improve_out, tour.get(), stsp_instance_name(instance.get()));
    return kExitOk;
  }

  if (*exact_cmd) {
    auto instance = load_instance(exact_input);
    Owned<stsp_graph> graph;
    if (!exact_graph.empty()) {
      stsp_graph* raw = nullptr;
      check(stsp_graph_parse(read_file(exact_graph).c_str(), &raw), exact_graph);
      graph.reset(raw);
      if (stsp_graph_dimension(raw) != stsp_instance_dimension(instance.get())) {
        throw CliFailure{kExitUsage, exact_graph + ": dimension does not match the instance"};
      }
    } else {
      graph = exact_k > 0 ? build_graph(instance.get(), exact_k) : complete(instance.get());
    }
    Owned<stsp_tour> warm;
    if (!exact_warm.empty()) {
      stsp_tour* raw = nullptr;
      check(stsp_tour_parse(read_file(exact_warm).c_str(), stsp_instance_dimension(instance.get()), &raw), exact_warm);
      warm.reset(raw);
    }
    int optimal = 0;
    stsp_tour* tour_raw = nullptr;
    char* json_raw = nullptr;
    check(stsp_exact(graph.get(), warm.get(), node_budget, exact_time_limit, &optimal, &tour_raw, &json_raw), "exact");
    Owned<stsp_tour> tour(tour_raw);
    Owned<char> json(json_raw);
    std::cout << take(json) << '\n';
    write_tour_file(exact_tour_out, tour.get(), stsp_instance_name(instance.get()));
    return optimal ? kExitOk : kExitSolver;
  }

  if (*bench_cmd) {
    std::vector<std::string> paths = bench_files;
    if (!suite_dir.empty()) {
      std::error_code ec;
      std::vector<std::string> found;
      for (const auto& entry : std::filesystem::directory_iterator(suite_dir, ec)) {
        if (entry.is_regular_file() && entry.path().extension() == ".tsp") found.push_back(entry.path().string());
      }
      if (ec) throw CliFailure{kExitUsage, "cannot read suite directory '" + suite_dir + "'"};
      std::sort(found.begin(), found.end());
      paths.insert(paths.end(), found.begin(), found.end());
    }
    if (paths.empty()) {
      std::cerr << "bench: the suite is empty\n" << bench_cmd->help();
      return kExitUsage;
    }
    std::vector<stsp_mode> modes;
    for (const auto& name : split_list(modes_text)) {
      stsp_mode mode{};
      check(stsp_parse_mode(name.c_str(), &mode), "--modes");
      modes.push_back(mode);
    }
    if (modes.empty()) {
      std::cerr << "bench: no modes given\n";
      return kExitUsage;
    }
    const stsp_config config = to_config(bench_flags);

    std::ofstream file;
    std::ostream* csv = &std::cout;
    if (!bench_out.empty() && bench_out != "-") {
      file.open(bench_out, std::ios::binary);
      if (!file) throw CliFailure{kExitUsage, "cannot write '" + bench_out + "'"};
      csv = &file;
    }
    *csv << stsp_bench_csv_header() << '\n';
    csv->flush();

    std::vector<const char*> c_paths;
    for (const auto& p : paths) c_paths.push_back(p.c_str());
    char* summary_raw = nullptr;
    check(stsp_bench(c_paths.data(), c_paths.size(), modes.data(), modes.size(), &config, jobs, line_to_stream, csv,
                     &summary_raw),
          "bench");
    Owned<char> summary(summary_raw);
    std::cerr << take(summary);
    return kExitOk;
  }

  if (*gen_cmd) {
    stsp_instance* raw = nullptr;
    check(stsp_instance_generate(gen_n, gen_seed, gen_box, &raw), "gen");
    Owned<stsp_instance> instance(raw);
    char* text_raw = nullptr;
    check(stsp_instance_write(instance.get(), &text_raw), "gen");
    Owned<char> text(text_raw);
    write_output(gen_out, take(text));
    return kExitOk;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CliFailure& failure) {
    std::cerr << "sparse-tsp: " << failure.message << '\n';
    return failure.code;
  } catch (const std::exception& e) {
    std::cerr << "sparse-tsp: " << e.what() << '\n';
    return kExitSolver;
  }
}
