#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "qfock/config.hpp"
#include "qfock/report.hpp"
#include "qfock/runner.hpp"
#include "qfock/verify.hpp"

namespace {

// Exit-code contract: 0 success, 2 invariant failure, 3 precondition or
// config error, 4 capability (budget) error.
constexpr int kExitInvariant = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitCapability = 4;

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  std::string report_path;
  std::string gram_cache_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> budget;
  bool lenient = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "Run configuration (JSON)");
  cmd->add_option("--out", opts.out_path, "CSV output path (default: config output_path or stdout)");
  cmd->add_option("--report", opts.report_path, "Write a self-contained JSON run report");
  cmd->add_option("--gram-cache", opts.gram_cache_path,
                  "Binary Gram cache file to reuse across runs");
  cmd->add_option("--seed", opts.seed, "Override the config seed");
  cmd->add_option("--budget", opts.budget, "Memory budget in bytes (overrides env/config)");
  auto* strict = cmd->add_flag("--strict", "Strict truncation (default)");
  cmd->add_flag("--lenient", opts.lenient, "Drop mass past max_degree, accounting for it")
      ->excludes(strict);
}

qfock::RunConfig load_config(const CommonOptions& opts) {
  qfock::RunConfig config = opts.config_path.empty()
                                ? qfock::RunConfig::default_free_case()
                                : qfock::RunConfig::from_file(opts.config_path);
  if (opts.seed) config.seed = *opts.seed;
  if (opts.budget) config.memory_budget_bytes = *opts.budget;
  if (!opts.gram_cache_path.empty()) config.gram_cache_path = opts.gram_cache_path;
  config.validate(!opts.lenient);
  return config;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw qfock::StateError("cannot open output file: " + path);
  os << text;
}

void emit_csv(const qfock::RunConfig& config, const CommonOptions& opts,
              const std::string& csv) {
  const std::string path = !opts.out_path.empty() ? opts.out_path : config.output_path;
  if (path.empty())
    std::cout << csv;
  else
    write_text(path, csv);
}

void emit_report(const qfock::RunConfig& config, const CommonOptions& opts,
                 qfock::RunReport report) {
  if (opts.report_path.empty()) return;
  report.config_json = config.to_json_text();
  report.seed = config.seed;
  report.memory_budget_bytes = config.memory_budget_bytes;
  write_text(opts.report_path, report.to_json_text() + "\n");
}

qfock::GramCache make_cache(const qfock::RunConfig& config) {
  qfock::GramCache cache(config.q, config.memory_budget_bytes);
  if (!config.gram_cache_path.empty() &&
      std::filesystem::exists(config.gram_cache_path)) {
    const int loaded = cache.load(config.gram_cache_path);
    std::cerr << "gram-cache: restored " << loaded << " degree(s) from "
              << config.gram_cache_path << "\n";
  }
  return cache;
}

void maybe_save_cache(const qfock::RunConfig& config, const qfock::GramCache& cache) {
  if (!config.gram_cache_path.empty()) cache.save(config.gram_cache_path);
}

int cmd_verify(const CommonOptions& opts) {
  qfock::RunConfig config = load_config(opts);
  qfock::GramCache cache = make_cache(config);
  const auto results = qfock::run_invariant_suite(config, cache);
  maybe_save_cache(config, cache);

  std::size_t failed = 0;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name
              << "  residual=" << qfock::format_double(r.residual)
              << " tol=" << qfock::format_double(r.tolerance);
    if (!r.note.empty()) std::cout << "  (" << r.note << ")";
    std::cout << "\n";
    if (!r.pass) ++failed;
  }
  std::cout << results.size() - failed << "/" << results.size() << " invariants passed\n";

  qfock::RunReport report;
  report.invariants = results;
  emit_report(config, opts, std::move(report));
  return failed == 0 ? 0 : kExitInvariant;
}

int cmd_gram(const CommonOptions& opts, std::optional<int> degree) {
  qfock::RunConfig config = load_config(opts);
  qfock::GramCache cache = make_cache(config);
  const int top = degree.value_or(config.max_degree);
  const auto rows = qfock::run_gram(config, cache, top);
  maybe_save_cache(config, cache);
  emit_csv(config, opts, qfock::gram_csv(rows));

  qfock::RunReport report;
  report.gram_rows = rows;
  emit_report(config, opts, std::move(report));
  return 0;
}

int run_experiment_command(const CommonOptions& opts, qfock::ExperimentSpec::Mode wanted,
                           const char* mode_name) {
  qfock::RunConfig config = load_config(opts);
  qfock::GramCache cache = make_cache(config);
  const auto truncation = opts.lenient ? qfock::TruncationMode::lenient
                                       : qfock::TruncationMode::strict;

  std::string csv;
  qfock::RunReport report;
  std::size_t matched = 0;
  for (const auto& spec : config.experiments) {
    const bool is_decay = spec.mode != qfock::ExperimentSpec::Mode::mixing_sum;
    const bool want_decay = wanted != qfock::ExperimentSpec::Mode::mixing_sum;
    if (is_decay != want_decay) continue;
    ++matched;
    qfock::ExperimentReport er = qfock::run_experiment(config, cache, spec, truncation);
    if (spec.mode == qfock::ExperimentSpec::Mode::mixing_sum) {
      const std::string body = qfock::mixing_csv(er.rows);
      csv += csv.empty() ? body : body.substr(body.find('\n') + 1);
    } else if (spec.mode == qfock::ExperimentSpec::Mode::zeta_probe) {
      const std::string body = qfock::decay_csv(er.rows, config.q.q_max());
      csv += csv.empty() ? body : body.substr(body.find('\n') + 1);
    } else {
      const std::string body = qfock::lemma3_csv(er.lemma3_rows);
      csv += csv.empty() ? body : body.substr(body.find('\n') + 1);
    }
    std::cerr << spec.name << ": "
              << qfock::fit_summary(*er.fit, er.tail_bound) << "\n";
    if (er.zeta_identically_zero)
      std::cerr << spec.name << ": orthogonal letters only among creations, zeta_n = 0\n";
    if (er.lost_mass2 > 0.0)
      std::cerr << spec.name << ": lenient truncation dropped free mass^2 = "
                << qfock::format_double(er.lost_mass2) << "\n";
    report.experiments.push_back(std::move(er));
  }
  if (matched == 0)
    throw qfock::ConfigError(std::string("config has no ") + mode_name + " experiments");
  maybe_save_cache(config, cache);
  emit_csv(config, opts, csv);
  emit_report(config, opts, std::move(report));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qfock: truncated mixed q-Gaussian Fock space laboratory"};
  app.require_subcommand(1);

  CommonOptions verify_opts, gram_opts, mixing_opts, decay_opts;
  std::optional<int> gram_degree;

  CLI::App* verify = app.add_subcommand("verify", "Run the full invariant suite");
  add_common(verify, verify_opts);
  CLI::App* gram = app.add_subcommand("gram", "Symmetrizer spectrum per degree (CSV)");
  add_common(gram, gram_opts);
  gram->add_option("-n,--degree", gram_degree, "Top degree (default: max_degree)");
  CLI::App* mixing = app.add_subcommand("mixing", "Mixing-sum experiments (CSV)");
  add_common(mixing, mixing_opts);
  CLI::App* decay = app.add_subcommand("decay", "Zeta / operator-bound decay probes (CSV)");
  add_common(decay, decay_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return cmd_verify(verify_opts);
    if (gram->parsed()) return cmd_gram(gram_opts, gram_degree);
    if (mixing->parsed())
      return run_experiment_command(mixing_opts, qfock::ExperimentSpec::Mode::mixing_sum,
                                    "mixing_sum");
    if (decay->parsed())
      return run_experiment_command(decay_opts, qfock::ExperimentSpec::Mode::zeta_probe,
                                    "decay-probe");
  } catch (const qfock::CapabilityError& e) {
    std::cerr << "capability error: " << e.what() << "\n";
    return kExitCapability;
  } catch (const qfock::DefinitenessError& e) {
    std::cerr << "definiteness error: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const qfock::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }
  return 0;
}
