#include "qfock/qspec.hpp"

#include <cmath>
#include <cstring>

namespace qfock {

QSpec::QSpec(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  const auto n = entries_.rows();
  if (n < 1 || entries_.cols() != n)
    throw ArgumentError("deformation matrix must be square with N >= 1");
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = entries_(i, j);
      if (!std::isfinite(v)) throw ArgumentError("deformation matrix has non-finite entry");
      if (v != entries_(j, i))
        throw ArgumentError("deformation matrix must be exactly symmetric (q_ij == q_ji)");
    }
  }
  q_max_ = entries_.cwiseAbs().maxCoeff();
  if (!(q_max_ < 1.0))
    throw ArgumentError("q_max = " + std::to_string(q_max_) +
                        " violates the strict bound max|q_ij| < 1");
}

QSpec QSpec::uniform(int n_letters, double q) {
  if (n_letters < 1) throw ArgumentError("N must be >= 1");
  return QSpec(Eigen::MatrixXd::Constant(n_letters, n_letters, q));
}

std::uint64_t QSpec::hash() const {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  auto mix = [&h](const unsigned char* bytes, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ull;
    }
  };
  const std::uint64_t n = static_cast<std::uint64_t>(n_letters());
  mix(reinterpret_cast<const unsigned char*>(&n), sizeof n);
  mix(reinterpret_cast<const unsigned char*>(entries_.data()),
      sizeof(double) * static_cast<std::size_t>(entries_.size()));
  return h;
}

}  // namespace qfock
