#include "qfock/yang_baxter.hpp"

namespace qfock {

namespace {

void check_site(int degree, int site) {
  if (degree < 2) throw ArgumentError("Yang-Baxter action needs degree >= 2");
  if (site < 1 || site > degree - 1)
    throw ArgumentError("site " + std::to_string(site) + " out of range [1.." +
                        std::to_string(degree - 1) + "]");
}

}  // namespace

Eigen::VectorXd yang_baxter_site(const QSpec& q, int degree, int site,
                                 const Eigen::VectorXd& block) {
  check_site(degree, site);
  const int n_letters = q.n_letters();
  const Index dim = block_dim(n_letters, degree);
  if (block.size() != dim) throw ArgumentError("block has wrong dimension for degree");

  // Digit layout: index = sum (letter_k - 1) N^(n-k); the pair at sites
  // (site, site+1) occupies the radix positions with strides
  // N^(n-site-1) and N^(n-site).
  const Index lo_stride = block_dim(n_letters, degree - site - 1);
  const Index hi_stride = lo_stride * n_letters;

  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim);
  for (Index idx = 0; idx < dim; ++idx) {
    const double c = block(idx);
    if (c == 0.0) continue;
    const int b = static_cast<int>((idx / lo_stride) % n_letters) + 1;  // site+1 letter
    const int a = static_cast<int>((idx / hi_stride) % n_letters) + 1;  // site letter
    const Index swapped = idx + (b - a) * hi_stride + (a - b) * lo_stride;
    out(swapped) += q.q(a, b) * c;
  }
  return out;
}

Eigen::MatrixXd yang_baxter_site_matrix(const QSpec& q, int degree, int site) {
  check_site(degree, site);
  const Index dim = block_dim(q.n_letters(), degree);
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
  for (Index k = 0; k < dim; ++k) {
    e(k) = 1.0;
    t.col(k) = yang_baxter_site(q, degree, site, e);
    e(k) = 0.0;
  }
  return t;
}

}  // namespace qfock
