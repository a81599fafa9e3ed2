#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "qfock/errors.hpp"

namespace qfock {

// Deformation data: the symmetric coefficient matrix Q = (q_ij) over N
// generators, with q_max = max_ij |q_ij| < 1. Single source of every
// deformation constant in the library. Letters are 1-based throughout
// the public surface, matching the basis labels e_1..e_N.
class QSpec {
 public:
  // Rejects non-square input, exact asymmetry (q_ij != q_ji bitwise),
  // non-finite entries and q_max >= 1.
  explicit QSpec(Eigen::MatrixXd entries);

  static QSpec uniform(int n_letters, double q);
  static QSpec free_case(int n_letters) { return uniform(n_letters, 0.0); }

  int n_letters() const { return static_cast<int>(entries_.rows()); }
  double q(int letter_i, int letter_j) const {
    check_letter(letter_i);
    check_letter(letter_j);
    return entries_(letter_i - 1, letter_j - 1);
  }
  double q_max() const { return q_max_; }
  const Eigen::MatrixXd& entries() const { return entries_; }

  void check_letter(int letter) const {
    if (letter < 1 || letter > n_letters())
      throw ArgumentError("letter " + std::to_string(letter) + " out of range [1.." +
                          std::to_string(n_letters()) + "]");
  }

  // FNV-1a over N and the raw entry bytes; keys the on-disk Gram cache.
  std::uint64_t hash() const;

  bool operator==(const QSpec& other) const {
    return entries_.rows() == other.entries_.rows() && entries_ == other.entries_;
  }

 private:
  Eigen::MatrixXd entries_;
  double q_max_ = 0.0;
};

}  // namespace qfock
