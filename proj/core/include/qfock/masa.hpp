#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "qfock/decay_fit.hpp"
#include "qfock/fock_vector.hpp"
#include "qfock/gram_cache.hpp"
#include "qfock/ladder.hpp"
#include "qfock/wick.hpp"

namespace qfock {

// Orthogonal projection onto the one-letter Fock space F_Q(R xi0): each
// degree slice is the line through xi0^n, so the projection is rank one
// per degree,
//   P v = sum_n (<xi0^n, v_n>_Q / |xi0^n|_Q^2) xi0^n.
FockVector project_generator(const GramCache& cache, const Eigen::VectorXd& xi0,
                             const FockVector& v);

// Vector-level conditional expectation onto the generator subalgebra:
// E(a)Omega = P_{F_Q(R xi0)}(a Omega). The returned vector doubles as the
// Wick symbol of E(a).
FockVector conditional_expectation_vector(const GramCache& cache,
                                          const Eigen::VectorXd& xi0,
                                          const FockVector& a_applied_to_vacuum);

struct ResultRow {
  int n = 0;
  double term = 0.0;         // |E(x v_n y) - E(x) v_n E(y)|_2^2
  double partial_sum = 0.0;  // nondecreasing
  std::optional<double> ratio;            // term_n / term_{n-1}
  std::optional<double> zeta_norm_ratio;  // probe modes
};

struct ExperimentSpec {
  enum class Mode { mixing_sum, zeta_probe, lemma3_probe };

  std::string name;
  Mode mode = Mode::mixing_sum;
  Eigen::VectorXd xi0;  // normalized on validation
  // x = W(xi_1 x ... x xi_m), y likewise; entries are coefficient vectors
  // in R^N (basis letters are ingested as unit vectors upstream).
  std::vector<Eigen::VectorXd> x_word;
  std::vector<Eigen::VectorXd> y_word;
  LadderWord ladder;  // zeta_probe
  LadderWord a_word;  // lemma3_probe
  LadderWord b_word;  // lemma3_probe
  int n_min = 0;
  int n_max = 0;
  int max_degree = 0;
  std::optional<int> fit_lo;  // default: min(3, n_max - 2)
  std::optional<int> fit_hi;  // default: n_max

  // Normalizes xi0 and enforces the exact-domain inequality
  // m + n_max + k <= max_degree (mixing) or its ladder analogue. Throws
  // PreconditionError / ArgumentError. `strict` disables the exact-domain
  // check when false (lenient truncation runs accept lost mass instead).
  void validate(const QSpec& q, bool strict = true);

  int fit_window_lo() const;
  int fit_window_hi() const;
};

// One summand of the mixing series: both factors assembled by Wick
// application to the vacuum, both projected (the second projection is the
// identity on its argument and is kept for symmetry of implementation).
ResultRow mixing_term(const QSpec& q, GramCache& cache, const ExperimentSpec& spec, int n,
                      const TruncationPolicy& policy = {});

// E(x v_n y)Omega along the direct route: x, v_n, y applied successively
// to the vacuum, then projected.
FockVector mixing_expectation_direct(const QSpec& q, GramCache& cache,
                                     const ExperimentSpec& spec, int n,
                                     const TruncationPolicy& policy = {});

// The same vector along the commutation route:
// P(W(x-symbol) W_r(y-symbol) (xi0^n / |xi0^n|_Q)).
FockVector mixing_expectation_right_wick(const QSpec& q, GramCache& cache,
                                         const ExperimentSpec& spec, int n,
                                         const TruncationPolicy& policy = {});

// Term recomputed from the right-Wick route; must agree with mixing_term.
double mixing_term_via_right_wick(const QSpec& q, GramCache& cache,
                                  const ExperimentSpec& spec, int n,
                                  const TruncationPolicy& policy = {});

struct MixingSummary {
  std::vector<ResultRow> rows;
  DecayFit fit;
  double tail_bound = 0.0;  // C_hat * rate^(n_max+1) / (1 - rate), empirical
  double total = 0.0;
};

// Runs mixing_term over [n_min, n_max], accumulates partial sums in
// ascending n, fits the decay over the tail window and attaches the
// geometric tail certificate.
MixingSummary mixing_sum(const QSpec& q, GramCache& cache, const ExperimentSpec& spec,
                         const TruncationPolicy& policy = {});

struct ZetaProbeResult {
  std::vector<ResultRow> rows;  // zeta_norm_ratio filled
  // True when every orthogonal left letter sits among the creations
  // (s'' <= p), which forces zeta_n = 0 identically.
  bool orthogonal_only_in_creations = false;
};

// zeta_n = P_{F_Q(R xi0)}(ladder xi0^n); rows report
// |zeta_n|_Q / |xi0^n|_Q. The ladder must be in canonical zeta form and
// carry at least one left and one right letter orthogonal to xi0.
ZetaProbeResult zeta_probe(const QSpec& q, GramCache& cache, const Eigen::VectorXd& xi0,
                           const LadderWord& ladder, int n_min, int n_max, int max_degree,
                           const TruncationPolicy& policy = {});

}  // namespace qfock
