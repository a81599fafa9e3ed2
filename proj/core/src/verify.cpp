#include "qfock/verify.hpp"

#include <cmath>
#include <functional>

#include "qfock/permutations.hpp"
#include "qfock/rng.hpp"
#include "qfock/symmetrizer.hpp"

namespace qfock {

namespace {

struct Suite {
  std::vector<InvariantResult> results;

  void run(const std::string& name, double tolerance,
           const std::function<double(std::string&)>& body) {
    InvariantResult r;
    r.name = name;
    r.tolerance = tolerance;
    try {
      r.residual = body(r.note);
      r.pass = r.residual <= tolerance;
    } catch (const Error& e) {
      r.pass = false;
      r.residual = std::numeric_limits<double>::quiet_NaN();
      r.note = e.what();
    }
    results.push_back(std::move(r));
  }
};

double braid_residual(const QSpec& q) {
  const Eigen::MatrixXd t1 = yang_baxter_site_matrix(q, 3, 1);
  const Eigen::MatrixXd t2 = yang_baxter_site_matrix(q, 3, 2);
  return (t1 * t2 * t1 - t2 * t1 * t2).norm();
}

}  // namespace

std::vector<InvariantResult> run_invariant_suite(const RunConfig& config, GramCache& cache) {
  Suite suite;
  const QSpec& q = config.q;
  const int n_letters = q.n_letters();
  const int d = config.max_degree;
  const Eigen::VectorXd& xi0 = config.xi0;
  cache.ensure_up_to(d);

  suite.run("braid_relation", config.tol("braid_relation"), [&](std::string&) {
    Rng rng(config.seed ^ 0x9e3779b97f4a7c15ull);
    double worst = braid_residual(q.n_letters() >= 3 ? q : QSpec::uniform(3, q.q_max()));
    for (int trial = 0; trial < 5; ++trial) {
      const QSpec random_q(rng.symmetric_q_matrix(3, 0.9));
      worst = std::max(worst, braid_residual(random_q));
    }
    return worst;
  });

  suite.run("symmetrizer_oracle", config.tol("symmetrizer_oracle"), [&](std::string& note) {
    double worst = 0.0;
    const int top = std::min({d, 6, kBruteForceDegreeCeiling});
    Eigen::MatrixXd prev = Eigen::MatrixXd::Ones(1, 1);
    for (int n = 1; n <= top; ++n) {
      const Eigen::MatrixXd rec = symmetrizer_recursive(q, n, prev);
      const Eigen::MatrixXd brute = symmetrizer_bruteforce(q, n);
      worst = std::max(worst, (rec - brute).cwiseAbs().maxCoeff());
      prev = rec;
    }
    note = "degrees 1.." + std::to_string(top);
    return worst;
  });

  suite.run("reduced_word_independence", config.tol("reduced_word_independence"),
            [&](std::string& note) {
              double worst = 0.0;
              const int top = std::min(d, 5);
              for (int n = 2; n <= top; ++n) {
                const Eigen::MatrixXd a =
                    symmetrizer_bruteforce(q, n, ReducedWordPath::bubble_sort);
                const Eigen::MatrixXd b =
                    symmetrizer_bruteforce(q, n, ReducedWordPath::lex_greedy);
                worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
              }
              note = "bubble-sort vs lexicographic paths, degrees 2.." + std::to_string(top);
              return worst;
            });

  suite.run("degree_orthogonality", config.tol("degree_orthogonality"), [&](std::string&) {
    Rng rng(config.seed ^ 0x5bf03635ull);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const int a = rng.uniform_int(0, d);
      int b = rng.uniform_int(0, d - 1);
      if (b >= a) ++b;
      FockVector u(n_letters, d), v(n_letters, d);
      u.block(a) = rng.vector(block_dim(n_letters, a));
      v.block(b) = rng.vector(block_dim(n_letters, b));
      worst = std::max(worst, std::abs(cache.inner(u, v)));
    }
    return worst;
  });

  suite.run("inner_symmetry", config.tol("inner_symmetry"), [&](std::string&) {
    Rng rng(config.seed ^ 0xa5a5a5a5ull);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      FockVector u = rng.fock_vector(n_letters, d, d);
      FockVector v = rng.fock_vector(n_letters, d, d);
      const double nu = cache.norm(u), nv = cache.norm(v);
      worst = std::max(worst,
                       std::abs(cache.inner(u, v) - cache.inner(v, u)) / (nu * nv));
    }
    return worst;
  });

  suite.run("positivity", 0.0, [&](std::string& note) {
    const double floor = config.tol("positivity_min_eig");
    double smallest = std::numeric_limits<double>::infinity();
    for (int n = 0; n <= d; ++n) smallest = std::min(smallest, cache.positivity_report(n));
    note = "smallest min eigenvalue over degrees 0.." + std::to_string(d) + " is " +
           format_double(smallest) + ", floor " + format_double(floor);
    return std::max(0.0, floor - smallest);
  });

  suite.run("adjoint_duality", config.tol("adjoint_duality"), [&](std::string&) {
    Rng rng(config.seed ^ 0xad01d7a1ull);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const Side side = trial % 2 == 0 ? Side::left : Side::right;
      const int letter = rng.uniform_int(1, n_letters);
      FockVector u = rng.fock_vector(n_letters, d, d);
      FockVector v = rng.fock_vector(n_letters, d, d - 1);
      const FockVector au =
          apply_annihilate(q, LadderSymbol{side, Kind::annihilate, letter}, u);
      const FockVector cv = apply_create(q, LadderSymbol{side, Kind::create, letter}, v);
      const double lhs = cache.inner(au, v);
      const double rhs = cache.inner(u, cv);
      worst = std::max(worst, std::abs(lhs - rhs) / (cache.norm(u) * cache.norm(v)));
    }
    return worst;
  });

  suite.run("commutant_seed", 0.0, [&](std::string& note) {
    Rng rng(config.seed ^ 0xc0436ull);
    const double slack = config.tol("commutant_seed_slack");
    double worst_excess = -std::numeric_limits<double>::infinity();
    double worst_norm = 0.0;
    for (int trial = 0; trial < 8; ++trial) {
      const int top = rng.uniform_int(0, d - 2);  // two creations stacked
      FockVector v = rng.fock_vector(n_letters, d, top);
      const double vnorm = cache.norm(v);
      for (int i = 1; i <= n_letters; ++i) {
        for (int j = 1; j <= n_letters; ++j) {
          FockVector left = apply_gaussian(q, j, apply_gaussian(q, i, v, Side::left),
                                           Side::right);
          FockVector right = apply_gaussian(q, i, apply_gaussian(q, j, v, Side::right),
                                            Side::left);
          left -= right;
          const double norm = cache.norm(left);
          const double bound =
              std::pow(q.q_max(), std::max(top, 0)) * vnorm * (1.0 + slack);
          worst_excess = std::max(worst_excess, norm - bound);
          worst_norm = std::max(worst_norm, norm);
        }
      }
    }
    note = "max |[s_i, r-gaussian_j] v|_Q = " + format_double(worst_norm);
    return worst_excess;
  });

  suite.run("commutator_bound", 0.0, [&](std::string& note) {
    const double slack = config.tol("commutator_bound_slack");
    int top = std::min(d, 8);
    while (top > 0 && block_dim(n_letters, top) > 1024) --top;  // keep the SVDs snappy
    double worst_excess = -std::numeric_limits<double>::infinity();
    for (int n = 0; n <= top; ++n) {
      for (int i = 1; i <= n_letters; ++i) {
        for (int j = 1; j <= n_letters; ++j) {
          const CommutatorBlock block = commutator_block(q, i, j, n, cache);
          const double bound = n == 0 ? (i == j ? 1.0 + slack : 0.0)
                                      : std::pow(q.q_max(), n) * (1.0 + slack);
          worst_excess = std::max(worst_excess, block.deformed_norm - bound);
        }
      }
    }
    note = "[l_i*, r_j] blocks, degrees 0.." + std::to_string(top);
    return worst_excess;
  });

  suite.run("degree_bookkeeping", 0.0, [&](std::string&) {
    Rng rng(config.seed ^ 0xb00cull);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      LadderWord word;
      const int len = rng.uniform_int(1, std::max(1, std::min(4, d / 2)));
      for (int s = 0; s < len; ++s)
        word.symbols.push_back(LadderSymbol{rng.uniform01() < 0.5 ? Side::left : Side::right,
                                            rng.uniform01() < 0.5 ? Kind::create
                                                                  : Kind::annihilate,
                                            rng.uniform_int(1, n_letters)});
      const int top = rng.uniform_int(len, d - len);
      FockVector v = rng.fock_vector(n_letters, d, top);
      FockVector image = apply_ladder_word(q, word, v);
      if (image.is_zero()) continue;  // generically does not happen
      worst = std::max(worst,
                       std::abs(double(image.top_degree() - (top + word.net_degree()))));
    }
    return worst;
  });

  suite.run("wick_vacuum_reproduction", config.tol("wick_vacuum"), [&](std::string&) {
    Rng rng(config.seed ^ 0x31c2ull);
    const FockVector vac = FockVector::vacuum(n_letters, d);
    double worst = 0.0;
    for (int trial = 0; trial < 25; ++trial) {
      const Side side = trial % 2 == 0 ? Side::left : Side::right;
      FockVector symbol = rng.fock_vector(n_letters, d, std::min(4, d));
      FockVector reproduced = wick_apply(q, side, symbol, vac);
      reproduced -= symbol;
      worst = std::max(worst, cache.norm(reproduced) / cache.norm(symbol));
    }
    return worst;
  });

  suite.run("wick_commutant", config.tol("wick_commutant"), [&](std::string&) {
    Rng rng(config.seed ^ 0xc0337a11ull);
    double worst = 0.0;
    const int sym_deg = std::min(2, d / 2);
    for (int trial = 0; trial < 10; ++trial) {
      FockVector zeta = rng.fock_vector(n_letters, d, sym_deg);
      FockVector eta = rng.fock_vector(n_letters, d, sym_deg);
      FockVector v = rng.fock_vector(n_letters, d, std::max(0, d - 2 * sym_deg));
      FockVector lr = wick_apply(q, Side::left, zeta, wick_apply(q, Side::right, eta, v));
      FockVector rl = wick_apply(q, Side::right, eta, wick_apply(q, Side::left, zeta, v));
      lr -= rl;
      worst = std::max(worst, cache.norm(lr) / cache.norm(v));
    }
    return worst;
  });

  suite.run("wick_adjoint", config.tol("wick_adjoint"), [&](std::string& note) {
    Rng rng(config.seed ^ 0xad01c7e2ull);
    double worst = 0.0;
    const int sym_deg = std::min(2, d / 2);
    for (int trial = 0; trial < 10; ++trial) {
      FockVector eta = rng.fock_vector(n_letters, d, sym_deg);
      FockVector u = rng.fock_vector(n_letters, d, d - sym_deg);
      FockVector v = rng.fock_vector(n_letters, d, d - sym_deg);
      const double scale = cache.norm(u) * cache.norm(v);
      // General law: W(eta)* = W(eta reversed).
      const double general = std::abs(cache.inner(wick_apply(q, Side::left, eta, u), v) -
                                      cache.inner(u, wick_apply(q, Side::left,
                                                                eta.reverse_words(), v)));
      // Reversal-symmetric symbols give self-adjoint operators.
      FockVector sym = eta;
      sym += eta.reverse_words();
      const double selfadj = std::abs(cache.inner(wick_apply(q, Side::left, sym, u), v) -
                                      cache.inner(u, wick_apply(q, Side::left, sym, v)));
      worst = std::max(worst, std::max(general, selfadj) / scale);
    }
    note = "W(eta)* = W(reversed eta); self-adjoint on reversal-symmetric symbols";
    return worst;
  });

  suite.run("two_norm_identity", config.tol("two_norm_identity"), [&](std::string&) {
    Rng rng(config.seed ^ 0x2e04ull);
    const FockVector vac = FockVector::vacuum(n_letters, d);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      FockVector eta = rng.fock_vector(n_letters, d, std::min(3, d / 2));
      const double direct = cache.inner(eta, eta);
      const FockVector once = wick_apply(q, Side::left, eta, vac);
      const FockVector twice = wick_apply(q, Side::left, eta.reverse_words(), once);
      worst = std::max(worst, std::abs(trace_vacuum(twice) - direct) / (1.0 + direct));
    }
    return worst;
  });

  suite.run("projection_laws", config.tol("projection_laws"), [&](std::string&) {
    Rng rng(config.seed ^ 0x9207ull);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      FockVector u = rng.fock_vector(n_letters, d, d);
      FockVector v = rng.fock_vector(n_letters, d, d);
      FockVector pu = project_generator(cache, xi0, u);
      FockVector ppu = project_generator(cache, xi0, pu);
      ppu -= pu;
      worst = std::max(worst, cache.norm(ppu) / cache.norm(u));
      const double sym = std::abs(cache.inner(pu, v) -
                                  cache.inner(u, project_generator(cache, xi0, v)));
      worst = std::max(worst, sym / (cache.norm(u) * cache.norm(v)));
    }
    return worst;
  });

  suite.run("ce_laws", config.tol("ce_trace"), [&](std::string& note) {
    Rng rng(config.seed ^ 0xce1aull);
    const FockVector vac = FockVector::vacuum(n_letters, d);
    FockVector e_vac = conditional_expectation_vector(cache, xi0, vac);
    e_vac -= vac;
    double worst = cache.norm(e_vac);  // E(1) = 1
    for (int trial = 0; trial < 5; ++trial) {
      // Symbols already inside F_Q(R xi0) are fixed.
      FockVector member(n_letters, d);
      for (int m = 0; m <= d; ++m) {
        FockVector p = FockVector::tensor_power(n_letters, d, xi0, m);
        p *= rng.uniform(-1.0, 1.0);
        member += p;
      }
      FockVector fixed = conditional_expectation_vector(cache, xi0, member);
      fixed -= member;
      worst = std::max(worst, cache.norm(fixed) / cache.norm(member));
      // Trace preservation.
      FockVector a_vac = rng.fock_vector(n_letters, d, d);
      const double traced =
          std::abs(trace_vacuum(conditional_expectation_vector(cache, xi0, a_vac)) -
                   trace_vacuum(a_vac));
      worst = std::max(worst, traced);
    }
    note = "E(1)=1, members fixed, trace preserved";
    return worst;
  });

  suite.run("route_agreement", config.tol("route_agreement"), [&](std::string& note) {
    double worst = 0.0;
    int checked = 0;
    for (const auto& spec : config.experiments) {
      if (spec.mode != ExperimentSpec::Mode::mixing_sum) continue;
      for (int n = spec.n_min; n <= spec.n_max; ++n) {
        const FockVector direct = mixing_expectation_direct(q, cache, spec, n);
        FockVector wr = mixing_expectation_right_wick(q, cache, spec, n);
        wr -= direct;
        const double scale = std::max(cache.norm(direct), 1e-30);
        worst = std::max(worst, cache.norm(wr) / scale);
        ++checked;
      }
    }
    note = checked ? "E(x v_n y) via direct and right-Wick routes, " +
                         std::to_string(checked) + " points"
                   : "no mixing experiments configured";
    return worst;
  });

  suite.run("zeta_decay_domination", 0.0, [&](std::string& note) {
    const double margin = config.tol("rate_margin");
    double worst_excess = -std::numeric_limits<double>::infinity();
    int checked = 0;
    for (const auto& spec : config.experiments) {
      if (spec.mode != ExperimentSpec::Mode::zeta_probe) continue;
      ZetaProbeResult probe = zeta_probe(q, cache, spec.xi0, spec.ladder, spec.n_min,
                                         spec.n_max, spec.max_degree);
      std::vector<std::pair<int, double>> series;
      for (const auto& row : probe.rows)
        series.emplace_back(row.n, row.zeta_norm_ratio.value_or(0.0));
      DecayFit fit = decay_fit(series, spec.fit_window_lo(), spec.fit_window_hi());
      ++checked;
      if (fit.exact_zero) continue;
      worst_excess = std::max(worst_excess, fit.fitted_rate - (q.q_max() + margin));
      const double rate = q.q_max() + margin;
      for (const auto& [n, value] : series) {
        if (n < fit.window_lo || n > fit.window_hi) continue;
        const double bound = fit.c_hat * std::pow(rate, n) * (1.0 + 1e-9);
        worst_excess = std::max(worst_excess, value - bound);
      }
    }
    if (!checked) {
      note = "no zeta experiments configured";
      return 0.0;
    }
    note = "rate and C_hat domination over the fit window";
    return worst_excess == -std::numeric_limits<double>::infinity() ? 0.0 : worst_excess;
  });

  suite.run("member_mixing_zero", config.tol("member_term_zero"), [&](std::string& note) {
    // When every x-word (or y-word) letter is parallel to xi0, the factor
    // lies in the generator subalgebra and the whole series is zero.
    auto inside = [&](const std::vector<Eigen::VectorXd>& word) {
      if (word.empty()) return true;
      for (const auto& v : word) {
        Eigen::VectorXd rest = v - v.dot(xi0) * xi0;
        if (rest.norm() > 1e-12 * v.norm()) return false;
      }
      return true;
    };
    double worst = 0.0;
    int checked = 0;
    for (const auto& spec : config.experiments) {
      if (spec.mode != ExperimentSpec::Mode::mixing_sum) continue;
      if (!inside(spec.x_word) && !inside(spec.y_word)) continue;
      ++checked;
      for (int n = spec.n_min; n <= spec.n_max; ++n)
        worst = std::max(worst, mixing_term(q, cache, spec, n).term);
    }
    note = checked ? std::to_string(checked) + " experiment(s) with a subalgebra factor"
                   : "no mixing experiment has a subalgebra factor";
    return worst;
  });

  suite.run("mixing_tail_certificate", 0.0, [&](std::string& note) {
    double worst = 0.0;
    int checked = 0;
    for (const auto& spec : config.experiments) {
      if (spec.mode != ExperimentSpec::Mode::mixing_sum) continue;
      if (spec.n_max - spec.n_min < 4) continue;
      MixingSummary full = mixing_sum(q, cache, spec);
      ExperimentSpec shorter = spec;
      shorter.n_max -= 1;
      if (shorter.fit_hi) shorter.fit_hi = std::min(*shorter.fit_hi, shorter.n_max);
      MixingSummary partial = mixing_sum(q, cache, shorter);
      if (!std::isfinite(full.tail_bound)) worst = std::max(worst, 1.0);
      worst = std::max(worst, full.tail_bound - partial.tail_bound - 1e-15);
      ++checked;
    }
    note = checked ? "tail bound finite and nonincreasing in n_max"
                   : "no mixing experiments long enough";
    return std::max(worst, 0.0);
  });

  return suite.results;
}

}  // namespace qfock
