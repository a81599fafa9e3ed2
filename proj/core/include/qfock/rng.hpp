#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

#include "qfock/fock_vector.hpp"
#include "qfock/qspec.hpp"

namespace qfock {

// Deterministic uniform sampling on top of mt19937_64. Distributions are
// hand-rolled so identical seeds give identical streams independent of the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  Eigen::VectorXd vector(Index size, double lo = -1.0, double hi = 1.0);
  Eigen::MatrixXd symmetric_q_matrix(int n_letters, double max_abs);
  FockVector fock_vector(int n_letters, int max_degree, int top_degree);

 private:
  std::mt19937_64 engine_;
};

}  // namespace qfock
