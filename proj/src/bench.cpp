#include "sparse_tsp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

namespace sparse_tsp {

EuclideanInstance gen_uniform_instance(int n, std::uint64_t seed, std::int64_t box) {
  if (n < 3) throw ContractError("generator needs n >= 3");
  if (box < 1) throw ContractError("generator box must be positive");
  Rng rng(seed);
  std::vector<Point> coords(static_cast<std::size_t>(n));
  for (auto& p : coords) {
    p.x = static_cast<double>(uniform_below(rng, static_cast<std::uint64_t>(box)));
    p.y = static_cast<double>(uniform_below(rng, static_cast<std::uint64_t>(box)));
  }
  return EuclideanInstance("uniform" + std::to_string(n) + "_s" + std::to_string(seed), std::move(coords));
}

std::string format_hms(std::int64_t milliseconds) {
  const std::int64_t seconds = std::max<std::int64_t>(0, milliseconds) / 1000;
  std::ostringstream out;
  out << seconds / 3600 << ':' << std::setw(2) << std::setfill('0') << (seconds / 60) % 60 << ':' << std::setw(2)
      << std::setfill('0') << seconds % 60;
  return out.str();
}

namespace {

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Splits CSV text into records of raw fields, honoring quoted fields that
// span commas, quotes and newlines.
std::vector<std::vector<std::string>> split_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        fields.push_back(std::move(field));
        records.push_back(std::move(fields));
      }
      fields.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw ParseError(ParseError::Kind::MalformedHeader, "csv: unterminated quoted field");
  if (any || !field.empty()) {
    fields.push_back(std::move(field));
    records.push_back(std::move(fields));
  }
  return records;
}

template <class T>
T parse_number(const std::string& text, const char* column) {
  T value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ParseError(ParseError::Kind::MalformedHeader, std::string("csv: bad ") + column + " '" + text + "'");
  }
  return value;
}

CsvRecord make_record(const std::string& instance, int n, Mode mode, const std::string& status, std::int64_t ms,
                      const SolveReport* report) {
  CsvRecord r;
  r.instance = instance;
  r.n = n;
  r.mode = to_string(mode);
  r.status = status;
  r.time_ms = ms;
  r.time_hms = format_hms(ms);
  if (report) {
    r.value = report->value;
    r.nodes = report->nodes_expanded;
    r.hcp_effort = report->hcp_effort;
    r.edges = report->edge_stats.edge_count;
  }
  return r;
}

BenchRow run_entry(const SuiteEntry& entry, const std::vector<Mode>& modes, const PipelineConfig& config) {
  BenchRow row;
  std::optional<EuclideanInstance> instance = entry.instance;
  if (!instance) {
    try {
      instance = load_instance(entry.path);
    } catch (const std::exception& e) {
      row.instance_name = std::filesystem::path(entry.path).stem().string();
      row.load_error = e.what();
      for (Mode mode : modes) {
        ModeResult result;
        result.mode = mode;
        result.record = make_record(row.instance_name, 0, mode, std::string(kParseErrorStatus), 0, nullptr);
        row.results.push_back(std::move(result));
      }
      return row;
    }
  }
  row.instance_name = instance->name();
  row.n = instance->dimension();

  for (Mode mode : modes) {
    PipelineConfig cfg = config;
    cfg.mode = mode;
    ModeResult result;
    result.mode = mode;
    const auto t0 = std::chrono::steady_clock::now();
    result.report = solve(*instance, cfg);
    const auto t1 = std::chrono::steady_clock::now();
    result.time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    result.record =
        make_record(row.instance_name, row.n, mode, to_string(result.report.status), result.time_ms, &result.report);
    if (result.report.status == SolveStatus::Optimal) {
      const bool faster = !row.winner || std::any_of(row.results.begin(), row.results.end(), [&](const ModeResult& m) {
        return m.mode == *row.winner && result.time_ms < m.time_ms;
      });
      if (faster) row.winner = mode;
    }
    row.results.push_back(std::move(result));
  }
  return row;
}

}  // namespace

std::string format_csv_record(const CsvRecord& r) {
  std::string out;
  out += quote(r.instance) + ',';
  out += std::to_string(r.n) + ',';
  out += quote(r.mode) + ',';
  out += quote(r.status) + ',';
  out += std::to_string(r.time_ms) + ',';
  out += quote(r.time_hms) + ',';
  out += (r.value ? std::to_string(*r.value) : std::string()) + ',';
  out += std::to_string(r.nodes) + ',';
  out += std::to_string(r.hcp_effort) + ',';
  out += std::to_string(r.edges);
  return out;
}

std::vector<CsvRecord> parse_csv(std::string_view text) {
  auto lines = split_csv(text);
  std::vector<CsvRecord> out;
  std::size_t first = 0;
  if (!lines.empty() && !lines[0].empty() && lines[0][0] == "instance") first = 1;
  for (std::size_t i = first; i < lines.size(); ++i) {
    const auto& f = lines[i];
    if (f.size() != 10) {
      throw ParseError(ParseError::Kind::MalformedHeader,
                       "csv: expected 10 fields on record " + std::to_string(i + 1) + ", got " + std::to_string(f.size()));
    }
    CsvRecord r;
    r.instance = f[0];
    r.n = parse_number<int>(f[1], "n");
    r.mode = f[2];
    r.status = f[3];
    r.time_ms = parse_number<std::int64_t>(f[4], "time_ms");
    r.time_hms = f[5];
    if (!f[6].empty()) r.value = parse_number<Length>(f[6], "value");
    r.nodes = parse_number<std::uint64_t>(f[7], "nodes");
    r.hcp_effort = parse_number<std::uint64_t>(f[8], "hcp_effort");
    r.edges = parse_number<std::size_t>(f[9], "edges");
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<BenchRow> run_benchmark(const std::vector<SuiteEntry>& suite, const std::vector<Mode>& modes,
                                    const PipelineConfig& config, const BenchOptions& options) {
  if (suite.empty()) throw ContractError("benchmark suite is empty");
  if (modes.empty()) throw ContractError("benchmark needs at least one mode");
  config.validate();

  std::vector<std::optional<BenchRow>> done(suite.size());
  std::exception_ptr failure;
  std::mutex lock;
  std::size_t next_emit = 0;
  std::atomic<std::size_t> next_task{0};

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next_task.fetch_add(1);
      if (i >= suite.size()) return;
      BenchRow row;
      try {
        row = run_entry(suite[i], modes, config);
      } catch (...) {
        const std::scoped_lock guard(lock);
        if (!failure) failure = std::current_exception();
        next_task = suite.size();
        return;
      }
      const std::scoped_lock guard(lock);
      done[i] = std::move(row);
      while (next_emit < done.size() && done[next_emit]) {
        if (options.on_record && !failure) {
          for (const auto& r : done[next_emit]->results) options.on_record(r.record);
        }
        ++next_emit;
      }
    }
  };

  const int jobs = std::clamp(options.jobs, 1, static_cast<int>(suite.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<BenchRow> rows;
  rows.reserve(done.size());
  for (auto& row : done) rows.push_back(std::move(*row));
  return rows;
}

std::string format_summary(const std::vector<BenchRow>& rows, const std::vector<Mode>& modes) {
  std::size_t name_width = 8;
  for (const auto& row : rows) name_width = std::max(name_width, row.instance_name.size());
  constexpr int kCell = 18;

  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(name_width)) << "instance" << "  " << std::right << std::setw(6)
      << "n";
  for (Mode mode : modes) out << "  " << std::setw(kCell) << to_string(mode);
  out << "  winner\n";
  for (const auto& row : rows) {
    out << std::left << std::setw(static_cast<int>(name_width)) << row.instance_name << "  " << std::right
        << std::setw(6) << row.n;
    for (Mode mode : modes) {
      std::string cell = "-";
      for (const auto& r : row.results) {
        if (r.mode != mode) continue;
        cell = r.record.status == to_string(SolveStatus::Optimal) ? r.record.time_hms : r.record.status;
      }
      out << "  " << std::setw(kCell) << cell;
    }
    out << "  " << (row.winner ? to_string(*row.winner) : "-") << '\n';
  }
  return out.str();
}

}  // namespace sparse_tsp
