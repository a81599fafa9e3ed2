#include "qfock/masa.hpp"

#include <cmath>
#include <limits>

namespace qfock {

namespace {

FockVector word_symbol(const QSpec& q, int max_degree,
                       const std::vector<Eigen::VectorXd>& word) {
  return FockVector::simple_tensor(q.n_letters(), max_degree, word);
}

bool letter_orthogonal(const Eigen::VectorXd& xi0, int letter) {
  return std::abs(xi0(letter - 1)) <= 1e-12 * xi0.norm();
}

}  // namespace

FockVector project_generator(const GramCache& cache, const Eigen::VectorXd& xi0,
                             const FockVector& v) {
  if (xi0.size() != v.n_letters()) throw ArgumentError("xi0 has wrong dimension");
  FockVector out(v.n_letters(), v.max_degree());
  Eigen::VectorXd power = Eigen::VectorXd::Ones(1);
  for (int n = 0; n <= v.max_degree(); ++n) {
    if (n > 0) {
      Eigen::VectorXd next(power.size() * xi0.size());
      for (Eigen::Index a = 0; a < power.size(); ++a)
        next.segment(a * xi0.size(), xi0.size()) = power(a) * xi0;
      power = std::move(next);
    }
    const auto& block = v.block(n);
    if (block.isZero(0.0)) continue;
    const double denom = cache.block_inner(n, power, power);
    const double coeff = cache.block_inner(n, power, block) / denom;
    out.block(n) = coeff * power;
  }
  return out;
}

FockVector conditional_expectation_vector(const GramCache& cache,
                                          const Eigen::VectorXd& xi0,
                                          const FockVector& a_applied_to_vacuum) {
  return project_generator(cache, xi0, a_applied_to_vacuum);
}

void ExperimentSpec::validate(const QSpec& q, bool strict) {
  if (xi0.size() != q.n_letters())
    throw ArgumentError("experiment '" + name + "': xi0 has dimension " +
                        std::to_string(xi0.size()) + ", expected " +
                        std::to_string(q.n_letters()));
  if (!xi0.allFinite()) throw ArgumentError("experiment '" + name + "': xi0 not finite");
  const double norm = xi0.norm();
  if (!(norm > 0.0)) throw ArgumentError("experiment '" + name + "': xi0 is zero");
  xi0 /= norm;
  if (n_min < 0 || n_max < n_min)
    throw ArgumentError("experiment '" + name + "': need 0 <= n_min <= n_max");
  if (max_degree < 0) throw ArgumentError("experiment '" + name + "': bad max_degree");
  if (fit_lo && fit_hi && *fit_hi < *fit_lo)
    throw ArgumentError("experiment '" + name + "': empty fit window");

  auto check_word = [&](const std::vector<Eigen::VectorXd>& word, const char* which) {
    for (const auto& letter : word) {
      if (letter.size() != q.n_letters() || !letter.allFinite())
        throw ArgumentError("experiment '" + name + "': bad vector in " + which);
      if (letter.isZero(0.0))
        throw ArgumentError("experiment '" + name + "': zero vector in " + which);
    }
  };
  auto check_letters = [&](const LadderWord& w, const char* which) {
    for (const auto& s : w.symbols)
      if (s.letter < 1 || s.letter > q.n_letters())
        throw ArgumentError("experiment '" + name + "': letter out of range in " + which);
  };

  switch (mode) {
    case Mode::mixing_sum: {
      check_word(x_word, "x_word");
      check_word(y_word, "y_word");
      const int m = static_cast<int>(x_word.size());
      const int k = static_cast<int>(y_word.size());
      if (strict && m + n_max + k > max_degree)
        throw PreconditionError("experiment '" + name + "': exact domain violated, m + n_max + k = " +
                                std::to_string(m + n_max + k) + " > max_degree " +
                                std::to_string(max_degree));
      break;
    }
    case Mode::zeta_probe: {
      check_letters(ladder, "ladder");
      if (strict && n_max + ladder.max_intermediate_degree_shift() > max_degree)
        throw PreconditionError("experiment '" + name +
                                "': ladder word overflows max_degree at n_max");
      break;
    }
    case Mode::lemma3_probe: {
      check_letters(a_word, "a_word");
      check_letters(b_word, "b_word");
      LadderWord full;
      full.symbols = a_word.symbols;
      full.symbols.insert(full.symbols.end(), b_word.symbols.begin(), b_word.symbols.end());
      if (strict && n_max + full.max_intermediate_degree_shift() > max_degree)
        throw PreconditionError("experiment '" + name +
                                "': probe word overflows max_degree at n_max");
      break;
    }
  }
}

int ExperimentSpec::fit_window_lo() const {
  if (fit_lo) return *fit_lo;
  return std::max(n_min, std::min(3, n_max - 2));  // keep >= 3 samples when possible
}

int ExperimentSpec::fit_window_hi() const { return fit_hi ? *fit_hi : n_max; }

FockVector mixing_expectation_direct(const QSpec& q, GramCache& cache,
                                     const ExperimentSpec& spec, int n,
                                     const TruncationPolicy& policy) {
  cache.ensure_up_to(spec.max_degree);
  const FockVector x_sym = word_symbol(q, spec.max_degree, spec.x_word);
  const FockVector y_sym = word_symbol(q, spec.max_degree, spec.y_word);
  const WickOperator vn = v_basis(q, cache, spec.xi0, n, spec.max_degree);
  const FockVector u1 = wick_apply(q, Side::left, x_sym,
                                   wick_apply(q, Side::left, vn.symbol, y_sym, policy),
                                   policy);
  return project_generator(cache, spec.xi0, u1);
}

FockVector mixing_expectation_right_wick(const QSpec& q, GramCache& cache,
                                         const ExperimentSpec& spec, int n,
                                         const TruncationPolicy& policy) {
  cache.ensure_up_to(spec.max_degree);
  const FockVector x_sym = word_symbol(q, spec.max_degree, spec.x_word);
  const FockVector y_sym = word_symbol(q, spec.max_degree, spec.y_word);
  const WickOperator vn = v_basis(q, cache, spec.xi0, n, spec.max_degree);
  const FockVector u1 = wick_apply(q, Side::left, x_sym,
                                   wick_apply(q, Side::right, y_sym, vn.symbol, policy),
                                   policy);
  return project_generator(cache, spec.xi0, u1);
}

namespace {

double term_from_expectation(const QSpec& q, GramCache& cache, const ExperimentSpec& spec,
                             int n, const FockVector& expectation,
                             const TruncationPolicy& policy) {
  const FockVector x_sym = word_symbol(q, spec.max_degree, spec.x_word);
  const FockVector y_sym = word_symbol(q, spec.max_degree, spec.y_word);
  const WickOperator vn = v_basis(q, cache, spec.xi0, n, spec.max_degree);
  const FockVector ex = project_generator(cache, spec.xi0, x_sym);
  const FockVector ey = project_generator(cache, spec.xi0, y_sym);
  const FockVector u2 = wick_apply(q, Side::left, ex,
                                   wick_apply(q, Side::left, vn.symbol, ey, policy), policy);
  // E(x) v_n E(y) already lies in the generator subalgebra; projecting is
  // the identity there and is done anyway for symmetry of implementation.
  const FockVector p2 = project_generator(cache, spec.xi0, u2);
  FockVector diff = expectation;
  diff -= p2;
  return cache.inner(diff, diff);
}

}  // namespace

ResultRow mixing_term(const QSpec& q, GramCache& cache, const ExperimentSpec& spec, int n,
                      const TruncationPolicy& policy) {
  const FockVector p1 = mixing_expectation_direct(q, cache, spec, n, policy);
  ResultRow row;
  row.n = n;
  row.term = term_from_expectation(q, cache, spec, n, p1, policy);
  return row;
}

double mixing_term_via_right_wick(const QSpec& q, GramCache& cache,
                                  const ExperimentSpec& spec, int n,
                                  const TruncationPolicy& policy) {
  const FockVector p1 = mixing_expectation_right_wick(q, cache, spec, n, policy);
  return term_from_expectation(q, cache, spec, n, p1, policy);
}

MixingSummary mixing_sum(const QSpec& q, GramCache& cache, const ExperimentSpec& spec,
                         const TruncationPolicy& policy) {
  MixingSummary summary;
  double partial = 0.0;
  std::optional<double> prev_term;
  for (int n = spec.n_min; n <= spec.n_max; ++n) {
    ResultRow row = mixing_term(q, cache, spec, n, policy);
    partial += row.term;
    row.partial_sum = partial;
    if (prev_term && *prev_term > 0.0) row.ratio = row.term / *prev_term;
    prev_term = row.term;
    summary.rows.push_back(std::move(row));
  }
  summary.total = partial;

  std::vector<std::pair<int, double>> series;
  for (const auto& row : summary.rows) series.emplace_back(row.n, row.term);
  summary.fit = decay_fit(series, spec.fit_window_lo(), spec.fit_window_hi());
  if (summary.fit.exact_zero) {
    summary.tail_bound = 0.0;
  } else if (summary.fit.fitted_rate >= 1.0) {
    summary.tail_bound = std::numeric_limits<double>::infinity();
  } else {
    summary.tail_bound = summary.fit.c_hat *
                         std::pow(summary.fit.fitted_rate, spec.n_max + 1) /
                         (1.0 - summary.fit.fitted_rate);
  }
  return summary;
}

ZetaProbeResult zeta_probe(const QSpec& q, GramCache& cache, const Eigen::VectorXd& xi0,
                           const LadderWord& ladder, int n_min, int n_max, int max_degree,
                           const TruncationPolicy& policy) {
  if (xi0.size() != q.n_letters()) throw ArgumentError("xi0 has wrong dimension");
  if (!ladder.is_canonical_zeta_form())
    throw PreconditionError("ladder word '" + ladder.str() +
                            "' is not in canonical form (left creations, left "
                            "annihilations, right creations, right annihilations)");

  bool left_orth = false, right_orth = false, left_annihilation_orth = false;
  for (const auto& s : ladder.symbols) {
    q.check_letter(s.letter);
    if (!letter_orthogonal(xi0, s.letter)) continue;
    if (s.side == Side::left) {
      left_orth = true;
      if (s.kind == Kind::annihilate) left_annihilation_orth = true;
    } else {
      right_orth = true;
    }
  }
  if (!left_orth || !right_orth) {
    std::string missing = !left_orth ? "left" : "right";
    throw PreconditionError("ladder word '" + ladder.str() + "' has no " + missing +
                            " letter orthogonal to xi0 (hypothesis of the decay bound)");
  }

  ZetaProbeResult result;
  // s'' <= p case: every orthogonal left letter is a creation, so the
  // projection annihilates the word image identically.
  result.orthogonal_only_in_creations = !left_annihilation_orth;

  for (int n = n_min; n <= n_max; ++n) {
    FockVector xin = FockVector::tensor_power(q.n_letters(), max_degree, xi0, n);
    FockVector image = apply_ladder_word(q, ladder, xin, policy);
    cache.ensure_up_to(std::max(std::max(image.top_degree(), n), 0));
    FockVector zeta = project_generator(cache, xi0, image);
    ResultRow row;
    row.n = n;
    row.zeta_norm_ratio = cache.norm(zeta) / cache.norm(xin);
    result.rows.push_back(row);
  }
  return result;
}

}  // namespace qfock
