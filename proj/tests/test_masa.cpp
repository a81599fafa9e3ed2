#include "doctest.h"
#include "qfock/masa.hpp"
#include "qfock/rng.hpp"
#include "qfock/symmetrizer.hpp"

using namespace qfock;

namespace {

Eigen::MatrixXd baseline_entries() {
  Eigen::MatrixXd m(2, 2);
  m << 0.5, 0.3, 0.3, 0.4;
  return m;
}

ExperimentSpec mixing_spec(const QSpec& q, std::vector<Eigen::VectorXd> x,
                           std::vector<Eigen::VectorXd> y, int n_max, int max_degree) {
  ExperimentSpec spec;
  spec.name = "test";
  spec.mode = ExperimentSpec::Mode::mixing_sum;
  spec.xi0 = Eigen::VectorXd::Unit(q.n_letters(), 0);
  spec.x_word = std::move(x);
  spec.y_word = std::move(y);
  spec.n_min = 0;
  spec.n_max = n_max;
  spec.max_degree = max_degree;
  spec.validate(q);
  return spec;
}

Eigen::VectorXd e(int n_letters, int letter) {
  return Eigen::VectorXd::Unit(n_letters, letter - 1);
}

}  // namespace

TEST_CASE("generator projection basics") {
  const QSpec q(baseline_entries());
  GramCache cache(q);
  cache.ensure_up_to(4);
  const Eigen::VectorXd xi0 = e(2, 1);

  // idempotent on its range
  const FockVector power = FockVector::tensor_power(2, 4, xi0, 3);
  FockVector projected = project_generator(cache, xi0, power);
  projected -= power;
  CHECK(cache.norm(projected) < 1e-13);

  // degree-1 orthogonality is exact
  const FockVector e2 = FockVector::basis_word(2, 4, Word({2}));
  CHECK(project_generator(cache, xi0, e2).is_zero());

  // mixed word: coefficient is the brute-force P_2 entry over 1 + q11;
  // the entry joins words with different letter multisets, hence zero.
  const Eigen::MatrixXd p2 = symmetrizer_bruteforce(q, 2);
  const double entry = p2(word_index(2, Word({1, 1})), word_index(2, Word({1, 2})));
  CHECK(entry == 0.0);
  const FockVector e12 = FockVector::basis_word(2, 4, Word({1, 2}));
  const FockVector proj = project_generator(cache, xi0, e12);
  CHECK(proj.is_zero());
}

TEST_CASE("generator projection is an orthogonal projection") {
  Rng rng(81);
  const QSpec q(rng.symmetric_q_matrix(2, 0.8));
  GramCache cache(q);
  cache.ensure_up_to(5);
  Eigen::VectorXd xi0 = rng.vector(2);
  xi0.normalize();
  for (int trial = 0; trial < 10; ++trial) {
    const FockVector u = rng.fock_vector(2, 5, 5);
    const FockVector v = rng.fock_vector(2, 5, 5);
    const FockVector pu = project_generator(cache, xi0, u);
    FockVector ppu = project_generator(cache, xi0, pu);
    ppu -= pu;
    CHECK(cache.norm(ppu) < 1e-11 * cache.norm(u));
    const double lhs = cache.inner(pu, v);
    const double rhs = cache.inner(u, project_generator(cache, xi0, v));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
  }
}

TEST_CASE("conditional expectation at the vector level") {
  const QSpec q(baseline_entries());
  GramCache cache(q);
  cache.ensure_up_to(4);
  const Eigen::VectorXd xi0 = e(2, 1);
  const FockVector vac = FockVector::vacuum(2, 4);

  // E(1) = 1
  FockVector evac = conditional_expectation_vector(cache, xi0, vac);
  evac -= vac;
  CHECK(evac.free_norm2() == 0.0);

  // orthogonal generator: E(W(e2)) = 0
  const FockVector w_e2 = wick_apply(q, Side::left, FockVector::basis_word(2, 4, Word({2})),
                                     vac);
  CHECK(conditional_expectation_vector(cache, xi0, w_e2).is_zero());

  // member of the subalgebra is fixed
  const FockVector w_e11 = wick_apply(q, Side::left,
                                      FockVector::basis_word(2, 4, Word({1, 1})), vac);
  FockVector fixed = conditional_expectation_vector(cache, xi0, w_e11);
  fixed -= w_e11;
  CHECK(cache.norm(fixed) < 1e-13);

  // trace preservation on random vectors
  Rng rng(82);
  for (int trial = 0; trial < 10; ++trial) {
    const FockVector a_vac = rng.fock_vector(2, 4, 4);
    CHECK(trace_vacuum(conditional_expectation_vector(cache, xi0, a_vac)) ==
          doctest::Approx(trace_vacuum(a_vac)).epsilon(1e-12));
  }
}

TEST_CASE("baseline mixing terms follow the exact q12^2n law") {
  const QSpec q(baseline_entries());
  GramCache cache(q);
  auto spec = mixing_spec(q, {e(2, 2)}, {e(2, 2)}, 6, 10);

  for (int n = 0; n <= 6; ++n) {
    const ResultRow row = mixing_term(q, cache, spec, n);
    // Only the [l2*, r2] crossing survives the projection: the term is
    // |q12|^(2n) on the nose.
    CHECK(row.term == doctest::Approx(std::pow(0.3, 2 * n)).epsilon(1e-12));
    // the commutation route computes the same number
    CHECK(mixing_term_via_right_wick(q, cache, spec, n) ==
          doctest::Approx(row.term).epsilon(1e-9));
  }
}

TEST_CASE("mixing terms vanish when x generates the subalgebra") {
  const QSpec q(baseline_entries());
  GramCache cache(q);
  auto spec = mixing_spec(q, {e(2, 1)}, {e(2, 2)}, 6, 10);
  for (int n = 0; n <= 6; ++n) CHECK(mixing_term(q, cache, spec, n).term < 1e-18);
}

TEST_CASE("free case mixing matches the hand enumeration") {
  const QSpec q = QSpec::free_case(2);
  GramCache cache(q);
  auto spec = mixing_spec(q, {e(2, 2)}, {e(2, 2)}, 6, 10);
  const MixingSummary summary = mixing_sum(q, cache, spec);
  // s2 W(e1^n) s2 Omega = e2 x e1^n x e2 for n >= 1, which projects to zero;
  // at n = 0 the product is e2 x e2 + Omega and the projection is Omega.
  CHECK(summary.rows[0].term == doctest::Approx(1.0));
  for (std::size_t k = 1; k < summary.rows.size(); ++k)
    CHECK(summary.rows[k].term == 0.0);
  CHECK(summary.total == doctest::Approx(1.0));
  CHECK(summary.fit.exact_zero);
  CHECK(summary.tail_bound == 0.0);
}

TEST_CASE("partial sums accumulate in ascending n") {
  const QSpec q(baseline_entries());
  GramCache cache(q);
  auto spec = mixing_spec(q, {e(2, 2)}, {e(2, 2)}, 8, 10);
  spec.fit_lo = 3;
  spec.fit_hi = 8;
  const MixingSummary summary = mixing_sum(q, cache, spec);
  REQUIRE(summary.rows.size() == 9);
  double acc = 0.0;
  for (std::size_t k = 0; k < summary.rows.size(); ++k) {
    acc += summary.rows[k].term;
    CHECK(summary.rows[k].partial_sum == acc);
    if (k > 0 && summary.rows[k - 1].term > 0)
      CHECK(*summary.rows[k].ratio ==
            doctest::Approx(summary.rows[k].term / summary.rows[k - 1].term));
  }
  CHECK_FALSE(summary.rows[0].ratio.has_value());
  // geometric with rate q12^2 = 0.09
  CHECK(summary.fit.fitted_rate == doctest::Approx(0.09).epsilon(1e-9));
  CHECK(summary.fit.c_hat == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(summary.tail_bound ==
        doctest::Approx(std::pow(0.09, 9) / (1 - 0.09)).epsilon(1e-6));
}

TEST_CASE("empty words leave everything inside the subalgebra") {
  const QSpec q(baseline_entries());
  GramCache cache(q);
  auto spec = mixing_spec(q, {}, {}, 5, 8);
  for (int n = 0; n <= 5; ++n) {
    const FockVector direct = mixing_expectation_direct(q, cache, spec, n);
    const FockVector via_wr = mixing_expectation_right_wick(q, cache, spec, n);
    CHECK(cache.inner(direct, direct) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cache.inner(via_wr, via_wr) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mixing_term(q, cache, spec, n).term < 1e-24);
  }
}

TEST_CASE("route agreement on non-basis words") {
  Rng rng(83);
  const QSpec q(rng.symmetric_q_matrix(2, 0.7));
  GramCache cache(q);
  Eigen::VectorXd xv = rng.vector(2), yv = rng.vector(2);
  auto spec = mixing_spec(q, {xv}, {yv}, 5, 8);
  for (int n = spec.n_min; n <= spec.n_max; ++n) {
    const FockVector direct = mixing_expectation_direct(q, cache, spec, n);
    FockVector wr = mixing_expectation_right_wick(q, cache, spec, n);
    wr -= direct;
    CHECK(cache.norm(wr) <= 1e-9 * std::max(cache.norm(direct), 1e-30));
  }
}

TEST_CASE("exact domain is enforced before computing") {
  const QSpec q(baseline_entries());
  CHECK_THROWS_AS(mixing_spec(q, {e(2, 2)}, {e(2, 2)}, 9, 10), PreconditionError);
  CHECK_NOTHROW(mixing_spec(q, {e(2, 2)}, {e(2, 2)}, 8, 10));

  ExperimentSpec bad;
  bad.mode = ExperimentSpec::Mode::mixing_sum;
  bad.xi0 = Eigen::VectorXd::Zero(2);
  bad.n_max = 2;
  bad.max_degree = 6;
  CHECK_THROWS_AS(bad.validate(q), ArgumentError);
}

TEST_CASE("xi0 is normalized on validation") {
  const QSpec q(baseline_entries());
  ExperimentSpec spec;
  spec.mode = ExperimentSpec::Mode::mixing_sum;
  spec.xi0 = Eigen::VectorXd::Constant(2, 3.0);
  spec.n_max = 2;
  spec.max_degree = 6;
  spec.validate(q);
  CHECK(spec.xi0.norm() == doctest::Approx(1.0));
}

TEST_CASE("zeta probe reproduces the commutator decay") {
  const QSpec q(baseline_entries());
  GramCache cache(q);
  const Eigen::VectorXd xi0 = e(2, 1);
  const ZetaProbeResult probe =
      zeta_probe(q, cache, xi0, LadderWord::parse("l2* r2"), 0, 8, 10);
  CHECK_FALSE(probe.orthogonal_only_in_creations);
  REQUIRE(probe.rows.size() == 9);
  for (const auto& row : probe.rows)
    CHECK(*row.zeta_norm_ratio == doctest::Approx(std::pow(0.3, row.n)).epsilon(1e-12));

  std::vector<std::pair<int, double>> series;
  for (const auto& row : probe.rows) series.emplace_back(row.n, *row.zeta_norm_ratio);
  const DecayFit fit = decay_fit(series, 3, 8);
  CHECK(fit.fitted_rate == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(fit.fitted_rate <= q.q_max() + 0.05);
}

TEST_CASE("zeta probe flags the creation-only orthogonal case") {
  const QSpec q(baseline_entries());
  GramCache cache(q);
  const Eigen::VectorXd xi0 = e(2, 1);
  // the only orthogonal left letter sits among the creations: zeta_n = 0
  const ZetaProbeResult probe =
      zeta_probe(q, cache, xi0, LadderWord::parse("l2 l1* r2"), 0, 5, 10);
  CHECK(probe.orthogonal_only_in_creations);
  for (const auto& row : probe.rows) CHECK(*row.zeta_norm_ratio == 0.0);
}

TEST_CASE("zeta probe enforces canonical form and the orthogonal pair") {
  const QSpec q(baseline_entries());
  GramCache cache(q);
  const Eigen::VectorXd xi0 = e(2, 1);

  CHECK_THROWS_AS(zeta_probe(q, cache, xi0, LadderWord::parse("r2 l2*"), 0, 4, 10),
                  PreconditionError);
  // no orthogonal left letter
  CHECK_THROWS_WITH_AS(zeta_probe(q, cache, xi0, LadderWord::parse("l1* r2"), 0, 4, 10),
                       doctest::Contains("left"), PreconditionError);
  // no orthogonal right letter
  CHECK_THROWS_WITH_AS(zeta_probe(q, cache, xi0, LadderWord::parse("l2* r1"), 0, 4, 10),
                       doctest::Contains("right"), PreconditionError);
}

TEST_CASE("zeta probe supports non-basis xi0") {
  const QSpec q = QSpec::uniform(3, 0.4);
  GramCache cache(q);
  Eigen::VectorXd xi0(3);
  xi0 << 1.0, 1.0, 0.0;
  xi0.normalize();
  const ZetaProbeResult probe =
      zeta_probe(q, cache, xi0, LadderWord::parse("l3* r3"), 0, 5, 8);
  // uniform q: l3* r3 xi0^n keeps only the crossing product q^n
  for (const auto& row : probe.rows)
    CHECK(*row.zeta_norm_ratio == doctest::Approx(std::pow(0.4, row.n)).epsilon(1e-10));
}

TEST_CASE("free case zeta ratios vanish past degree zero") {
  const QSpec q = QSpec::free_case(2);
  GramCache cache(q);
  const ZetaProbeResult probe =
      zeta_probe(q, cache, e(2, 1), LadderWord::parse("l2* r2"), 0, 6, 8);
  CHECK(*probe.rows[0].zeta_norm_ratio == doctest::Approx(1.0));
  for (std::size_t k = 1; k < probe.rows.size(); ++k)
    CHECK(*probe.rows[k].zeta_norm_ratio == 0.0);
}
