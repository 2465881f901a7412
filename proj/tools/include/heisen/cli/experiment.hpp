// experiment.hpp — Running a configured experiment

#pragma once

#include <string>

#include "heisen/cli/config.hpp"
#include "heisen/cli/table.hpp"

namespace heisen::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config = 2;
inline constexpr int numerical = 3;
inline constexpr int defect = 4;
} // namespace exit_code

struct RunResult {
    Table table;
    int status{exit_code::ok};
    std::string summary;
};

// Thread count from HEISEN_THREADS, at least 1.
unsigned worker_threads();

RunResult run_experiment(const ExperimentConfig& cfg);

// Serialises result.table in the configured format to the configured path
// (standard output when the path is empty).
void emit(const RunResult& result, const OutputSpec& out);

} // namespace heisen::cli
