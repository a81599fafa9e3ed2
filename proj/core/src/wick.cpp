#include "qfock/wick.hpp"

namespace qfock {

namespace {

// W applied to one single-degree symbol block, by recursion on the degree.
// Left splits off the first letter, right the last:
//   W(sum_i e_i x c_i) = sum_i [ s_i W(c_i) - W(l_i* c_i) ]
// and mirrored with appended letters and r-operators.
FockVector wick_block(const QSpec& q, Side side, const Eigen::VectorXd& coeffs, int degree,
                      const FockVector& v, const TruncationPolicy& policy) {
  if (degree == 0) {
    FockVector out = v;
    out *= coeffs(0);
    return out;
  }
  const int n_letters = q.n_letters();
  const Index sub_dim = coeffs.size() / n_letters;
  FockVector out(v.n_letters(), v.max_degree());
  Eigen::VectorXd sub(sub_dim);
  for (int i = 1; i <= n_letters; ++i) {
    if (side == Side::left) {
      sub = coeffs.segment((i - 1) * sub_dim, sub_dim);
    } else {
      for (Index k = 0; k < sub_dim; ++k) sub(k) = coeffs(k * n_letters + (i - 1));
    }
    if (sub.isZero(0.0)) continue;
    FockVector inner = wick_block(q, side, sub, degree - 1, v, policy);
    out += apply_gaussian(q, i, inner, side, policy);
    if (degree >= 2) {
      Eigen::VectorXd dropped = annihilate_block(q, side, i, sub, degree - 1);
      if (!dropped.isZero(0.0))
        out -= wick_block(q, side, dropped, degree - 2, v, policy);
    }
  }
  return out;
}

}  // namespace

FockVector wick_apply(const QSpec& q, Side side, const FockVector& symbol,
                      const FockVector& v, const TruncationPolicy& policy) {
  if (symbol.n_letters() != q.n_letters() || v.n_letters() != q.n_letters())
    throw ArgumentError("symbol/vector alphabet does not match QSpec");
  const int span = symbol.top_degree();
  const int top = v.top_degree();
  if (span < 0 || top < 0) return FockVector(v.n_letters(), v.max_degree());
  if (policy.mode == TruncationMode::strict && span + top > v.max_degree())
    throw TruncationError("Wick application leaves the exact domain: symbol degree " +
                          std::to_string(span) + " + vector degree " + std::to_string(top) +
                          " > max_degree " + std::to_string(v.max_degree()));

  FockVector out(v.n_letters(), v.max_degree());
  for (int m = 0; m <= span; ++m) {
    const auto& block = symbol.block(m);
    if (block.isZero(0.0)) continue;
    out += wick_block(q, side, block, m, v, policy);
  }
  return out;
}

double wick_vacuum_norm2(const GramCache& cache, const FockVector& symbol) {
  return cache.norm(symbol);
}

double trace_vacuum(const FockVector& a_applied_to_vacuum) {
  return a_applied_to_vacuum.block(0)(0);
}

WickOperator v_basis(const QSpec& q, GramCache& cache, const Eigen::VectorXd& xi0, int n,
                     int max_degree) {
  if (n < 0) throw ArgumentError("v_basis degree must be >= 0");
  if (n > max_degree)
    throw ArgumentError("v_basis degree " + std::to_string(n) + " exceeds max_degree " +
                        std::to_string(max_degree));
  cache.ensure_up_to(n);
  FockVector symbol = FockVector::tensor_power(q.n_letters(), max_degree, xi0, n);
  const double norm = cache.norm(symbol);
  if (!(norm > 0.0))
    throw DefinitenessError("xi0 tensor power has nonpositive deformed norm", n, norm);
  symbol *= 1.0 / norm;
  return WickOperator{Side::left, std::move(symbol), n};
}

}  // namespace qfock
