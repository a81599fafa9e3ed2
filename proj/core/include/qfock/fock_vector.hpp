#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "qfock/word.hpp"

namespace qfock {

// A vector of the truncated Fock space: dense real coefficients over the
// word bases of degrees 0..max_degree. Block n has length N^n. Values are
// immutable once handed out by the operator layer; mutation is confined
// to construction sites.
class FockVector {
 public:
  FockVector(int n_letters, int max_degree);

  static FockVector vacuum(int n_letters, int max_degree);
  static FockVector basis_word(int n_letters, int max_degree, const Word& w);
  // Tensor product of coefficient vectors in R^N, one per slot.
  static FockVector simple_tensor(int n_letters, int max_degree,
                                  std::span<const Eigen::VectorXd> factors);
  static FockVector tensor_power(int n_letters, int max_degree,
                                 const Eigen::VectorXd& xi, int degree);

  int n_letters() const { return n_letters_; }
  int max_degree() const { return max_degree_; }

  const Eigen::VectorXd& block(int degree) const;
  Eigen::VectorXd& block(int degree);

  // Largest degree with a not-exactly-zero block; -1 for the zero vector.
  int top_degree() const;

  double coeff(const Word& w) const;
  void set_coeff(const Word& w, double value);

  bool all_finite() const;
  bool is_zero() const { return top_degree() < 0; }

  // Sum over blocks of squared undeformed (free) coefficients.
  double free_norm2() const;

  // Per-degree coefficient reversal w -> reversed w; implements the
  // symbol-level adjoint of Wick operators.
  FockVector reverse_words() const;

  FockVector& operator+=(const FockVector& other);
  FockVector& operator-=(const FockVector& other);
  FockVector& operator*=(double scale);
  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
  friend FockVector operator*(double s, FockVector v) { return v *= s; }

 private:
  void check_compatible(const FockVector& other) const;

  int n_letters_;
  int max_degree_;
  std::vector<Eigen::VectorXd> blocks_;
};

}  // namespace qfock
