#include "qfock/fock_vector.hpp"

#include <cmath>

namespace qfock {

FockVector::FockVector(int n_letters, int max_degree)
    : n_letters_(n_letters), max_degree_(max_degree) {
  if (n_letters < 1) throw ArgumentError("N must be >= 1");
  if (max_degree < 0) throw ArgumentError("max_degree must be >= 0");
  blocks_.reserve(max_degree + 1);
  for (int n = 0; n <= max_degree; ++n)
    blocks_.emplace_back(Eigen::VectorXd::Zero(block_dim(n_letters, n)));
}

FockVector FockVector::vacuum(int n_letters, int max_degree) {
  FockVector v(n_letters, max_degree);
  v.blocks_[0](0) = 1.0;
  return v;
}

FockVector FockVector::basis_word(int n_letters, int max_degree, const Word& w) {
  if (w.degree() > max_degree)
    throw ArgumentError("word degree " + std::to_string(w.degree()) +
                        " exceeds max_degree " + std::to_string(max_degree));
  FockVector v(n_letters, max_degree);
  v.blocks_[w.degree()](word_index(n_letters, w)) = 1.0;
  return v;
}

FockVector FockVector::simple_tensor(int n_letters, int max_degree,
                                     std::span<const Eigen::VectorXd> factors) {
  const int degree = static_cast<int>(factors.size());
  if (degree > max_degree)
    throw ArgumentError("tensor degree exceeds max_degree");
  FockVector v(n_letters, max_degree);
  Eigen::VectorXd acc = Eigen::VectorXd::Ones(1);
  for (const auto& f : factors) {
    if (f.size() != n_letters) throw ArgumentError("tensor factor has wrong dimension");
    if (!f.allFinite()) throw ArgumentError("tensor factor has non-finite entry");
    Eigen::VectorXd next(acc.size() * n_letters);
    for (Index a = 0; a < acc.size(); ++a)
      next.segment(a * n_letters, n_letters) = acc(a) * f;
    acc = std::move(next);
  }
  v.blocks_[degree] = std::move(acc);
  return v;
}

FockVector FockVector::tensor_power(int n_letters, int max_degree,
                                    const Eigen::VectorXd& xi, int degree) {
  std::vector<Eigen::VectorXd> factors(degree, xi);
  return simple_tensor(n_letters, max_degree, factors);
}

const Eigen::VectorXd& FockVector::block(int degree) const {
  if (degree < 0 || degree > max_degree_)
    throw ArgumentError("block degree " + std::to_string(degree) + " out of range");
  return blocks_[degree];
}

Eigen::VectorXd& FockVector::block(int degree) {
  if (degree < 0 || degree > max_degree_)
    throw ArgumentError("block degree " + std::to_string(degree) + " out of range");
  return blocks_[degree];
}

int FockVector::top_degree() const {
  for (int n = max_degree_; n >= 0; --n)
    if (!blocks_[n].isZero(0.0)) return n;
  return -1;
}

double FockVector::coeff(const Word& w) const {
  return block(w.degree())(word_index(n_letters_, w));
}

void FockVector::set_coeff(const Word& w, double value) {
  block(w.degree())(word_index(n_letters_, w)) = value;
}

bool FockVector::all_finite() const {
  for (const auto& b : blocks_)
    if (!b.allFinite()) return false;
  return true;
}

double FockVector::free_norm2() const {
  double s = 0.0;
  for (const auto& b : blocks_) s += b.squaredNorm();
  return s;
}

FockVector FockVector::reverse_words() const {
  FockVector out(n_letters_, max_degree_);
  std::vector<int> letters;
  for (int n = 0; n <= max_degree_; ++n) {
    const auto& b = blocks_[n];
    if (b.isZero(0.0)) continue;
    if (n < 2) {
      out.blocks_[n] = b;
      continue;
    }
    letters.resize(n);
    for (Index k = 0; k < b.size(); ++k) {
      if (b(k) == 0.0) continue;
      decode_letters(n_letters_, n, k, letters.data());
      Index rev = 0;
      for (int m = n - 1; m >= 0; --m) rev = rev * n_letters_ + (letters[m] - 1);
      out.blocks_[n](rev) = b(k);
    }
  }
  return out;
}

void FockVector::check_compatible(const FockVector& other) const {
  if (n_letters_ != other.n_letters_ || max_degree_ != other.max_degree_)
    throw ArgumentError("FockVector shapes differ (N or max_degree mismatch)");
}

FockVector& FockVector::operator+=(const FockVector& other) {
  check_compatible(other);
  for (int n = 0; n <= max_degree_; ++n) blocks_[n] += other.blocks_[n];
  return *this;
}

FockVector& FockVector::operator-=(const FockVector& other) {
  check_compatible(other);
  for (int n = 0; n <= max_degree_; ++n) blocks_[n] -= other.blocks_[n];
  return *this;
}

FockVector& FockVector::operator*=(double scale) {
  for (auto& b : blocks_) b *= scale;
  return *this;
}

}  // namespace qfock
