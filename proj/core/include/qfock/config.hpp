#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qfock/masa.hpp"
#include "qfock/qspec.hpp"

namespace qfock {

// Named tolerances with their defaults; unknown names are rejected at
// parse so configs stay honest reproduction artifacts.
const std::map<std::string, double>& default_tolerances();

// A full experiment configuration as ingested from one JSON file. Strict
// schema: unknown fields anywhere are a ConfigError.
struct RunConfig {
  QSpec q = QSpec::free_case(1);
  int max_degree = 8;
  Eigen::VectorXd xi0;
  std::uint64_t seed = 1;
  std::size_t memory_budget_bytes;  // resolved from file/env/default
  std::string output_path;          // empty: write CSV to stdout
  std::string gram_cache_path;      // empty: no on-disk Gram cache
  std::map<std::string, double> tolerances;  // fully resolved
  std::vector<ExperimentSpec> experiments;

  RunConfig();

  static RunConfig from_json_text(const std::string& text);
  static RunConfig from_file(const std::string& path);
  // Built-in demo: free case q = 0, N = 2, xi0 = e1, with one experiment
  // of each mode.
  static RunConfig default_free_case();

  // Resolved round-trippable form (embedded into reports).
  std::string to_json_text() const;

  double tol(const std::string& name) const;

  // Validates every experiment against q/max_degree. strict = false skips
  // exact-domain checks (lenient truncation).
  void validate(bool strict = true);
};

}  // namespace qfock
