#pragma once

#include <vector>

#include "qfock/config.hpp"
#include "qfock/report.hpp"

namespace qfock {

// Command cores shared by the CLI and the test suites; no process I/O
// policy here beyond the returned data.

// Gram spectrum rows for degrees 0..degree.
std::vector<GramRow> run_gram(const RunConfig& config, GramCache& cache, int degree);

// Executes every configured experiment in declaration order; rows are
// merged in ascending n for deterministic partial sums.
std::vector<ExperimentReport> run_experiments(const RunConfig& config, GramCache& cache,
                                              TruncationMode mode = TruncationMode::strict);

ExperimentReport run_experiment(const RunConfig& config, GramCache& cache,
                                const ExperimentSpec& spec,
                                TruncationMode mode = TruncationMode::strict);

}  // namespace qfock
