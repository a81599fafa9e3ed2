#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qfock/config.hpp"
#include "qfock/ladder.hpp"
#include "qfock/masa.hpp"
#include "qfock/word.hpp"

namespace qfock {

// Shortest decimal representation that round-trips to the same double;
// keeps CSV baselines diff-able.
std::string format_double(double value);

struct InvariantResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

struct GramRow {
  int n = 0;
  Index dim = 0;
  double min_eig = 0.0;
  double max_eig = 0.0;
  double cond = 0.0;
};

struct ExperimentReport {
  std::string name;
  ExperimentSpec::Mode mode = ExperimentSpec::Mode::mixing_sum;
  std::vector<ResultRow> rows;
  std::vector<Lemma3Row> lemma3_rows;
  std::optional<DecayFit> fit;
  std::optional<double> tail_bound;
  std::optional<double> total;
  bool zeta_identically_zero = false;
  double lost_mass2 = 0.0;  // lenient mode only
};

// Self-contained run record: the resolved config is embedded so re-running
// from the report reproduces it bit-for-bit under the same platform
// rounding.
struct RunReport {
  std::string config_json;
  std::vector<InvariantResult> invariants;
  std::vector<ExperimentReport> experiments;
  std::vector<GramRow> gram_rows;
  std::uint64_t seed = 0;
  std::size_t memory_budget_bytes = 0;

  std::string to_json_text() const;
};

// CSV emitters. Every schema starts with a header row; numbers are
// shortest round-trip decimals; absent optionals are empty cells.
std::string mixing_csv(const std::vector<ResultRow>& rows);
std::string decay_csv(const std::vector<ResultRow>& rows, double q_max);
std::string lemma3_csv(const std::vector<Lemma3Row>& rows);
std::string gram_csv(const std::vector<GramRow>& rows);

// One-line human summary of a decay fit.
std::string fit_summary(const DecayFit& fit, std::optional<double> tail_bound);

}  // namespace qfock
