#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qfock/fock_vector.hpp"
#include "qfock/qspec.hpp"

namespace qfock {

inline constexpr std::size_t kDefaultMemoryBudget = std::size_t{2} << 30;  // 2 GiB

// Relative Cholesky pivot floor: a pivot below this fraction of the largest
// diagonal entry of P_n is treated as a definiteness failure, never as
// something to regularize.
inline constexpr double kPositivityFloor = 1e-12;

// Per-degree symmetrizer data: the Gram matrix P_n of the deformed inner
// product, its lower Cholesky factor L_n (P_n = L_n L_n^T), and the lazily
// computed extreme eigenvalues.
struct GramDegree {
  Eigen::MatrixXd gram;
  Eigen::MatrixXd chol;
  mutable std::optional<double> min_eig;
  mutable std::optional<double> max_eig;
};

// Owns the symmetrizers of one QSpec. Degrees are built in order through
// the recursive factorization and sealed on construction; after ensure_*
// returns, reads are const and safe to share. A memory budget gates
// materialization; exceeding it raises CapabilityError with the estimate.
class GramCache {
 public:
  explicit GramCache(QSpec q, std::size_t memory_budget_bytes = kDefaultMemoryBudget);

  const QSpec& qspec() const { return q_; }
  std::size_t budget_bytes() const { return budget_bytes_; }
  std::size_t bytes_in_use() const { return bytes_in_use_; }

  void ensure_degree(int degree);
  void ensure_up_to(int degree);
  bool has_degree(int degree) const;
  int max_cached_degree() const;

  const Eigen::MatrixXd& gram(int degree) const;   // StateError if missing
  const Eigen::MatrixXd& chol(int degree) const;

  // Smallest eigenvalue of P_n (cached). DefinitenessError if it does not
  // clear the positivity floor.
  double positivity_report(int degree) const;
  double max_eigenvalue(int degree) const;

  // <u, v>_Q = sum_n <u_n, P_n v_n>; blocks of distinct degree are
  // orthogonal by construction (exactly zero, never computed).
  double inner(const FockVector& u, const FockVector& v) const;
  double norm(const FockVector& v) const;
  double block_inner(int degree, const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;

  // Deformed operator norm of a degree-block map A: from_degree -> to_degree,
  // i.e. the spectral norm of L_to^T A L_from^-T.
  double operator_norm(const Eigen::MatrixXd& a, int from_degree, int to_degree) const;

  // Versioned binary snapshot keyed by hash(QSpec); see gram_cache.cpp for
  // the layout. load() returns degrees actually restored.
  void save(const std::string& path) const;
  int load(const std::string& path);

  // Bytes P_n + L_n would occupy at this degree.
  std::size_t degree_bytes(int degree) const;

 private:
  const GramDegree& entry(int degree) const;

  QSpec q_;
  std::size_t budget_bytes_;
  std::size_t bytes_in_use_ = 0;
  std::vector<std::optional<GramDegree>> degrees_;
};

// Free-function aliases matching the operation names used across the
// experiment layer.
double deformed_inner(const GramCache& cache, const FockVector& u, const FockVector& v);
double deformed_operator_norm(const GramCache& cache, const Eigen::MatrixXd& a,
                              int from_degree, int to_degree);
double positivity_report(const GramCache& cache, int degree);

}  // namespace qfock
