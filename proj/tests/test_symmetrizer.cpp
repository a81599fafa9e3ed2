#include "doctest.h"
#include "qfock/permutations.hpp"
#include "qfock/rng.hpp"
#include "qfock/symmetrizer.hpp"
#include "qfock/word.hpp"

using namespace qfock;

namespace {

Eigen::MatrixXd baseline_entries() {
  Eigen::MatrixXd m(2, 2);
  m << 0.5, 0.3, 0.3, 0.4;
  return m;
}

Eigen::MatrixXd recursive_chain(const QSpec& q, int degree) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Ones(1, 1);
  for (int n = 1; n <= degree; ++n) p = symmetrizer_recursive(q, n, p);
  return p;
}

}  // namespace

TEST_CASE("reduced words reproduce their permutations") {
  // Multiply the word back out and compare against the one-line input.
  auto compose = [](int n, const std::vector<int>& word) {
    std::vector<int> p(n);
    for (int k = 0; k < n; ++k) p[k] = k;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      // left-multiply by s_i: swap values i-1 and i (0-based)
      for (auto& v : p) {
        if (v == *it - 1) v = *it;
        else if (v == *it) v = *it - 1;
      }
    }
    return p;
  };
  for (int n = 1; n <= 6; ++n) {
    for (const auto& p : all_permutations(n)) {
      const auto bubble = reduced_word_bubble(p);
      const auto lex = reduced_word_lex(p);
      CHECK(static_cast<std::int64_t>(bubble.size()) == inversion_count(p));
      CHECK(static_cast<std::int64_t>(lex.size()) == inversion_count(p));
      CHECK(compose(n, bubble) == p);
      CHECK(compose(n, lex) == p);
    }
  }
}

TEST_CASE("lex reduced word is lexicographically minimal") {
  // Spot check: p = (2,1,4,3) (0-based (1,0,3,2)) has words s1 s3 and s3 s1.
  const std::vector<int> p{1, 0, 3, 2};
  CHECK(reduced_word_lex(p) == std::vector<int>{1, 3});
  CHECK(reduced_word_bubble(p) == std::vector<int>{3, 1});
}

TEST_CASE("brute-force symmetrizer small cases") {
  const QSpec q(baseline_entries());

  CHECK(symmetrizer_bruteforce(q, 0) == Eigen::MatrixXd::Ones(1, 1));
  CHECK(symmetrizer_bruteforce(q, 1) == Eigen::MatrixXd::Identity(2, 2));

  // P_2 = I + T: <e1 x e2, P2 e2 x e1> = q12
  const Eigen::MatrixXd p2 = symmetrizer_bruteforce(q, 2);
  CHECK(p2(word_index(2, Word({1, 2})), word_index(2, Word({2, 1}))) == doctest::Approx(0.3));
  CHECK(p2(word_index(2, Word({1, 1})), word_index(2, Word({1, 1}))) == doctest::Approx(1.5));
  CHECK((p2 - p2.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("uniform q degree 3 entries count crossings") {
  const double qval = 0.37;
  const QSpec q = QSpec::uniform(3, qval);
  const Eigen::MatrixXd p3 = symmetrizer_bruteforce(q, 3);
  const Index idx123 = word_index(3, Word({1, 2, 3}));
  const Index idx321 = word_index(3, Word({3, 2, 1}));
  // identity permutation only on the diagonal of a distinct-letter word
  CHECK(p3(idx123, idx123) == doctest::Approx(1.0));
  // reversal reaches it through the longest element: q^3
  CHECK(p3(idx123, idx321) == doctest::Approx(qval * qval * qval));
}

TEST_CASE("brute force rejects degrees past the ceiling") {
  const QSpec q = QSpec::uniform(2, 0.5);
  CHECK_THROWS_AS(symmetrizer_bruteforce(q, 8), CapabilityError);
  CHECK_NOTHROW(symmetrizer_bruteforce(q, 5, ReducedWordPath::bubble_sort, 5));
  CHECK_THROWS_AS(symmetrizer_bruteforce(q, 6, ReducedWordPath::bubble_sort, 5),
                  CapabilityError);
}

TEST_CASE("recursive equals brute force") {
  // n = 2 is exactly I + T1
  const QSpec q(baseline_entries());
  const Eigen::MatrixXd direct = symmetrizer_bruteforce(q, 2);
  const Eigen::MatrixXd rec = recursive_chain(q, 2);
  CHECK((direct - rec).cwiseAbs().maxCoeff() == 0.0);

  // uniform q = 0.5, N = 2, n = 4 within 1e-12
  const QSpec qu = QSpec::uniform(2, 0.5);
  CHECK((recursive_chain(qu, 4) - symmetrizer_bruteforce(qu, 4)).cwiseAbs().maxCoeff() <
        1e-12);

  // seeded random Q, N <= 3, n <= 5 within 1e-10 (full n <= 6 in acceptance)
  Rng rng(404);
  for (int n_letters = 1; n_letters <= 3; ++n_letters) {
    const QSpec qr(rng.symmetric_q_matrix(n_letters, 0.9));
    Eigen::MatrixXd prev = Eigen::MatrixXd::Ones(1, 1);
    for (int n = 1; n <= 5; ++n) {
      prev = symmetrizer_recursive(qr, n, prev);
      CHECK((prev - symmetrizer_bruteforce(qr, n)).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("free case gives the identity at any degree") {
  const QSpec q = QSpec::free_case(2);
  for (int n = 1; n <= 6; ++n) {
    const Eigen::MatrixXd p = recursive_chain(q, n);
    CHECK((p - Eigen::MatrixXd::Identity(p.rows(), p.cols())).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("reduced-word path does not change the sum") {
  Rng rng(777);
  for (int trial = 0; trial < 3; ++trial) {
    const QSpec q(rng.symmetric_q_matrix(2, 0.9));
    for (int n = 2; n <= 5; ++n) {
      const Eigen::MatrixXd a = symmetrizer_bruteforce(q, n, ReducedWordPath::bubble_sort);
      const Eigen::MatrixXd b = symmetrizer_bruteforce(q, n, ReducedWordPath::lex_greedy);
      CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("single letter symmetrizer is the q-factorial") {
  const double qval = 0.6;
  const QSpec q = QSpec::uniform(1, qval);
  double factorial = 1.0;
  double bracket = 1.0;
  for (int n = 1; n <= 6; ++n) {
    // [n]_q = 1 + q + ... + q^(n-1), [n]_q! accumulates the product
    if (n > 1) bracket = bracket * qval + 1.0;
    factorial *= bracket;
    const Eigen::MatrixXd p = symmetrizer_bruteforce(q, n);
    CHECK(p(0, 0) == doctest::Approx(factorial).epsilon(1e-13));
  }
}
