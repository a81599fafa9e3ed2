#include "qfock/rng.hpp"

namespace qfock {

Eigen::VectorXd Rng::vector(Index size, double lo, double hi) {
  Eigen::VectorXd v(size);
  for (Index k = 0; k < size; ++k) v(k) = uniform(lo, hi);
  return v;
}

Eigen::MatrixXd Rng::symmetric_q_matrix(int n_letters, double max_abs) {
  Eigen::MatrixXd m(n_letters, n_letters);
  for (int i = 0; i < n_letters; ++i) {
    for (int j = i; j < n_letters; ++j) {
      const double v = uniform(-max_abs, max_abs);
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

FockVector Rng::fock_vector(int n_letters, int max_degree, int top_degree) {
  FockVector v(n_letters, max_degree);
  for (int n = 0; n <= top_degree; ++n) v.block(n) = vector(block_dim(n_letters, n));
  return v;
}

}  // namespace qfock
