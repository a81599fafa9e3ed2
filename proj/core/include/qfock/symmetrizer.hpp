#pragma once

#include <Eigen/Dense>

#include "qfock/qspec.hpp"
#include "qfock/yang_baxter.hpp"

namespace qfock {

enum class ReducedWordPath { bubble_sort, lex_greedy };

inline constexpr int kBruteForceDegreeCeiling = 7;

// P_n = sum over all n! permutations of phi(sigma), where phi extends
// sigma -> T_{i_1}...T_{i_k} quasi-multiplicatively along a reduced word.
// Independent of the reduced-word choice by the braid relation; the path
// parameter exists so that independence can be tested. Permutations are
// summed in fixed lexicographic order for bit-reproducibility.
Eigen::MatrixXd symmetrizer_bruteforce(const QSpec& q, int degree,
                                       ReducedWordPath path = ReducedWordPath::bubble_sort,
                                       int degree_ceiling = kBruteForceDegreeCeiling);

// Same P_n through the coset factorization
//   P_n = (1 x P_{n-1}) * R_n,   R_n = 1 + T_1 + T_1 T_2 + ... + T_1...T_{n-1},
// exploiting that each summand of R_n is a monomial matrix: column w of R_n
// holds n scaled copies of P_{n-1} columns. O(n * N^(2n-1)) instead of n!.
Eigen::MatrixXd symmetrizer_recursive(const QSpec& q, int degree,
                                      const Eigen::MatrixXd& previous);

}  // namespace qfock
