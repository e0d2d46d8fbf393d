#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sparse_tsp/instance.hpp"
#include "sparse_tsp/pipeline.hpp"

namespace sparse_tsp {

/// n points drawn uniformly from the integer grid [0, box)^2. Duplicate points
/// are possible.
EuclideanInstance gen_uniform_instance(int n, std::uint64_t seed, std::int64_t box = 1'000'000);

/// Elapsed time as h:mm:ss with hours unbounded, e.g. 93600000 ms -> "26:00:00".
std::string format_hms(std::int64_t milliseconds);

/// One CSV line: a single instance under a single mode. `status` is a
/// SolveStatus name, or "ParseError" when the instance could not be read.
struct CsvRecord {
  std::string instance;
  int n = 0;
  std::string mode;
  std::string status;
  std::int64_t time_ms = 0;
  std::string time_hms;
  std::optional<Length> value;
  std::uint64_t nodes = 0;
  std::uint64_t hcp_effort = 0;
  std::size_t edges = 0;

  friend bool operator==(const CsvRecord&, const CsvRecord&) = default;
};

inline constexpr std::string_view kCsvHeader = "instance,n,mode,status,time_ms,time_hms,value,nodes,hcp_effort,edges";
inline constexpr std::string_view kParseErrorStatus = "ParseError";

/// Formats a record without the trailing newline; fields are quoted only when
/// needed.
std::string format_csv_record(const CsvRecord& record);
/// Parses CSV text with or without the header line. Throws ParseError on
/// malformed lines.
std::vector<CsvRecord> parse_csv(std::string_view text);

struct ModeResult {
  Mode mode = Mode::Hybrid;
  SolveReport report;
  std::int64_t time_ms = 0;
  CsvRecord record;
};

/// All modes run on one instance. `winner` is the fastest mode among those
/// that reached Optimal.
struct BenchRow {
  std::string instance_name;
  int n = 0;
  std::optional<std::string> load_error;
  std::vector<ModeResult> results;
  std::optional<Mode> winner;
};

/// A suite entry is either a file path, loaded by the worker, or an instance
/// held in memory.
struct SuiteEntry {
  std::string path;
  std::optional<EuclideanInstance> instance;
};

struct BenchOptions {
  int jobs = 1;
  /// Receives each CSV line in suite order as soon as all earlier lines are
  /// out. Called from a single thread at a time.
  std::function<void(const CsvRecord&)> on_record;
};

/// Runs every mode on every entry with a fresh pipeline and the shared base
/// config (its mode field is overridden). Throws ContractError on an empty
/// suite or mode list.
std::vector<BenchRow> run_benchmark(const std::vector<SuiteEntry>& suite, const std::vector<Mode>& modes,
                                    const PipelineConfig& config, const BenchOptions& options = {});

/// Plain-text comparison table: one line per instance with each mode's
/// time (or status) and the winner.
std::string format_summary(const std::vector<BenchRow>& rows, const std::vector<Mode>& modes);

}  // namespace sparse_tsp
