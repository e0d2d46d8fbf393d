#pragma once

#include <string>

#include "sparse_tsp/exact.hpp"
#include "sparse_tsp/hcp.hpp"
#include "sparse_tsp/improve.hpp"
#include "sparse_tsp/pipeline.hpp"

namespace sparse_tsp {

// JSON renderings used by the command-line tool. Vertex ids in tours are
// 1-based, as in TSPLIB files.

std::string to_json(const SolveReport& report, int indent = 2);
std::string to_json(const SparsificationStats& stats, int indent = 2);
std::string to_json(const HcpOutcome& outcome, int indent = 2);
std::string to_json(const ImprovementResult& result, int indent = 2);
std::string to_json(const OptimalResult& result, int indent = 2);

}  // namespace sparse_tsp
