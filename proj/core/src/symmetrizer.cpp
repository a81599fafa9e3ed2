#include "qfock/symmetrizer.hpp"

#include <vector>

#include "qfock/permutations.hpp"
#include "qfock/word.hpp"

namespace qfock {

Eigen::MatrixXd symmetrizer_bruteforce(const QSpec& q, int degree, ReducedWordPath path,
                                       int degree_ceiling) {
  if (degree < 0) throw ArgumentError("degree must be >= 0");
  if (degree > degree_ceiling)
    throw CapabilityError("brute-force symmetrizer limited to degree <= " +
                          std::to_string(degree_ceiling) + " (n! terms), requested " +
                          std::to_string(degree));
  const int n_letters = q.n_letters();
  const Index dim = block_dim(n_letters, degree);
  if (degree == 0) return Eigen::MatrixXd::Ones(1, 1);

  Eigen::MatrixXd p_n = Eigen::MatrixXd::Zero(dim, dim);
  std::vector<int> letters(degree);

  // phi(sigma) is a monomial matrix: it sends each basis word to one scaled
  // basis word. Walk the reduced word right to left per column, tracking
  // the q-product picked up by each adjacent swap. Permutations are summed
  // in lexicographic order, columns ascending: fixed rounding order.
  for (const auto& perm : all_permutations(degree)) {
    const std::vector<int> word = path == ReducedWordPath::bubble_sort
                                      ? reduced_word_bubble(perm)
                                      : reduced_word_lex(perm);
    for (Index col = 0; col < dim; ++col) {
      decode_letters(n_letters, degree, col, letters.data());
      double scale = 1.0;
      for (auto it = word.rbegin(); it != word.rend(); ++it) {
        const int site = *it;  // 1-based; acts on letters[site-1], letters[site]
        scale *= q.q(letters[site - 1], letters[site]);
        std::swap(letters[site - 1], letters[site]);
      }
      Index row = 0;
      for (int k = 0; k < degree; ++k) row = row * n_letters + (letters[k] - 1);
      p_n(row, col) += scale;
    }
  }
  return p_n;
}

Eigen::MatrixXd symmetrizer_recursive(const QSpec& q, int degree,
                                      const Eigen::MatrixXd& previous) {
  if (degree < 0) throw ArgumentError("degree must be >= 0");
  if (degree == 0) return Eigen::MatrixXd::Ones(1, 1);
  const int n_letters = q.n_letters();
  const Index prev_dim = block_dim(n_letters, degree - 1);
  const Index dim = prev_dim * n_letters;
  if (previous.rows() != prev_dim || previous.cols() != prev_dim)
    throw ArgumentError("previous symmetrizer has wrong dimension for degree " +
                        std::to_string(degree));

  // Column w of R_n = 1 + T_1 + ... + T_1..T_{n-1} is the sum over k of
  //   (prod_{m<k} q(w_m, w_k)) e_{(w_k, w with slot k removed)},
  // the letter at slot k bubbled to the front across its q-crossings. The
  // block-diagonal factor 1 x P_{n-1} then turns each summand into a scaled
  // P_{n-1} column placed in block w_k.
  Eigen::MatrixXd p_n = Eigen::MatrixXd::Zero(dim, dim);
  std::vector<int> letters(degree);
  for (Index col = 0; col < dim; ++col) {
    decode_letters(n_letters, degree, col, letters.data());
    Index tail_pow = dim / n_letters;  // N^(n-k) for k = 1
    auto target = p_n.col(col);
    for (int k = 1; k <= degree; ++k) {
      double crossing = 1.0;
      for (int m = 1; m < k; ++m) crossing *= q.q(letters[m - 1], letters[k - 1]);
      const Index hi = col / (tail_pow * n_letters);
      const Index lo = col % tail_pow;
      const Index removed = hi * tail_pow + lo;
      const Index block_offset = static_cast<Index>(letters[k - 1] - 1) * prev_dim;
      target.segment(block_offset, prev_dim) += crossing * previous.col(removed);
      tail_pow /= n_letters;
    }
  }
  return p_n;
}

}  // namespace qfock
