// Microbenchmarks for the kernels that dominate experiment runtime: the
// symmetrizer assembly (memory-bound column gathers), Cholesky sealing,
// matrix-free ladder actions and the Wick recursion.

#include <benchmark/benchmark.h>

#include "qfock/gram_cache.hpp"
#include "qfock/masa.hpp"
#include "qfock/rng.hpp"
#include "qfock/symmetrizer.hpp"
#include "qfock/wick.hpp"

namespace {

qfock::QSpec baseline() {
  Eigen::MatrixXd m(2, 2);
  m << 0.5, 0.3, 0.3, 0.4;
  return qfock::QSpec(m);
}

void BM_SymmetrizerRecursive(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const qfock::QSpec q = baseline();
  Eigen::MatrixXd prev = Eigen::MatrixXd::Ones(1, 1);
  for (int n = 1; n < degree; ++n) prev = qfock::symmetrizer_recursive(q, n, prev);
  for (auto _ : state) {
    Eigen::MatrixXd p = qfock::symmetrizer_recursive(q, degree, prev);
    benchmark::DoNotOptimize(p.data());
  }
  state.SetComplexityN(1 << degree);
}
BENCHMARK(BM_SymmetrizerRecursive)->DenseRange(4, 10, 2)->Complexity();

void BM_SymmetrizerBruteforce(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const qfock::QSpec q = baseline();
  for (auto _ : state) {
    Eigen::MatrixXd p = qfock::symmetrizer_bruteforce(q, degree);
    benchmark::DoNotOptimize(p.data());
  }
}
BENCHMARK(BM_SymmetrizerBruteforce)->DenseRange(3, 6, 1);

void BM_GramSeal(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  for (auto _ : state) {
    qfock::GramCache cache(baseline());
    cache.ensure_up_to(degree);
    benchmark::DoNotOptimize(cache.gram(degree).data());
  }
}
BENCHMARK(BM_GramSeal)->DenseRange(6, 10, 2);

void BM_GaussianApply(benchmark::State& state) {
  const int top = static_cast<int>(state.range(0));
  const qfock::QSpec q = baseline();
  qfock::Rng rng(1);
  const qfock::FockVector v = rng.fock_vector(2, top + 1, top);
  for (auto _ : state) {
    qfock::FockVector out = qfock::apply_gaussian(q, 1, v);
    benchmark::DoNotOptimize(out.block(0).data());
  }
  state.SetComplexityN(1 << top);
}
BENCHMARK(BM_GaussianApply)->DenseRange(6, 12, 2)->Complexity();

void BM_WickTensorPower(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const qfock::QSpec q = baseline();
  const Eigen::VectorXd xi0 = Eigen::VectorXd::Unit(2, 0);
  const qfock::FockVector symbol = qfock::FockVector::tensor_power(2, 10, xi0, n);
  const qfock::FockVector target = qfock::FockVector::basis_word(2, 10, qfock::Word({2}));
  for (auto _ : state) {
    qfock::FockVector out = qfock::wick_apply(q, qfock::Side::left, symbol, target);
    benchmark::DoNotOptimize(out.block(0).data());
  }
}
BENCHMARK(BM_WickTensorPower)->DenseRange(2, 8, 2);

void BM_MixingTerm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const qfock::QSpec q = baseline();
  qfock::GramCache cache(q);
  qfock::ExperimentSpec spec;
  spec.mode = qfock::ExperimentSpec::Mode::mixing_sum;
  spec.xi0 = Eigen::VectorXd::Unit(2, 0);
  spec.x_word = {Eigen::VectorXd::Unit(2, 1)};
  spec.y_word = {Eigen::VectorXd::Unit(2, 1)};
  spec.n_min = 0;
  spec.n_max = 8;
  spec.max_degree = 10;
  spec.validate(q);
  cache.ensure_up_to(10);
  for (auto _ : state) {
    qfock::ResultRow row = qfock::mixing_term(q, cache, spec, n);
    benchmark::DoNotOptimize(row.term);
  }
}
BENCHMARK(BM_MixingTerm)->DenseRange(2, 8, 2);

}  // namespace

BENCHMARK_MAIN();
