#include "qfock/runner.hpp"

namespace qfock {

std::vector<GramRow> run_gram(const RunConfig& config, GramCache& cache, int degree) {
  std::vector<GramRow> rows;
  cache.ensure_up_to(degree);
  for (int n = 0; n <= degree; ++n) {
    GramRow row;
    row.n = n;
    row.dim = block_dim(config.q.n_letters(), n);
    row.min_eig = cache.positivity_report(n);
    row.max_eig = cache.max_eigenvalue(n);
    row.cond = row.max_eig / row.min_eig;
    rows.push_back(row);
  }
  return rows;
}

ExperimentReport run_experiment(const RunConfig& config, GramCache& cache,
                                const ExperimentSpec& spec, TruncationMode mode) {
  ExperimentReport report;
  report.name = spec.name;
  report.mode = spec.mode;
  TruncationPolicy policy{mode, mode == TruncationMode::lenient ? &report.lost_mass2
                                                                : nullptr};
  switch (spec.mode) {
    case ExperimentSpec::Mode::mixing_sum: {
      MixingSummary summary = mixing_sum(config.q, cache, spec, policy);
      report.rows = std::move(summary.rows);
      report.fit = summary.fit;
      report.tail_bound = summary.tail_bound;
      report.total = summary.total;
      break;
    }
    case ExperimentSpec::Mode::zeta_probe: {
      ZetaProbeResult probe = zeta_probe(config.q, cache, spec.xi0, spec.ladder, spec.n_min,
                                         spec.n_max, spec.max_degree, policy);
      report.rows = std::move(probe.rows);
      report.zeta_identically_zero = probe.orthogonal_only_in_creations;
      std::vector<std::pair<int, double>> series;
      for (const auto& row : report.rows)
        series.emplace_back(row.n, row.zeta_norm_ratio.value_or(0.0));
      report.fit = decay_fit(series, spec.fit_window_lo(), spec.fit_window_hi());
      break;
    }
    case ExperimentSpec::Mode::lemma3_probe: {
      report.lemma3_rows = lemma3_bound_probe(config.q, spec.a_word, spec.b_word, spec.xi0,
                                              spec.n_min, spec.n_max, spec.max_degree, cache);
      std::vector<std::pair<int, double>> series;
      for (const auto& row : report.lemma3_rows) series.emplace_back(row.degree, row.ratio);
      report.fit = decay_fit(series, spec.fit_window_lo(), spec.fit_window_hi());
      break;
    }
  }
  return report;
}

std::vector<ExperimentReport> run_experiments(const RunConfig& config, GramCache& cache,
                                              TruncationMode mode) {
  std::vector<ExperimentReport> reports;
  for (const auto& spec : config.experiments)
    reports.push_back(run_experiment(config, cache, spec, mode));
  return reports;
}

}  // namespace qfock
