#pragma once

#include <Eigen/Dense>

#include "qfock/fock_vector.hpp"
#include "qfock/gram_cache.hpp"
#include "qfock/ladder.hpp"
#include "qfock/qspec.hpp"

namespace qfock {

// Applies the Wick operator W(symbol) (side == left) or W_r(symbol)
// (side == right) to v. W is the unique algebra element with W(eta)Omega =
// eta, realized by the recursion
//   W(e_i x xi) = s_i W(xi) - W(l_i* xi)
// and its right mirror over appended letters. Strict mode requires
// top_degree(symbol) + top_degree(v) <= max_degree (exact domain).
FockVector wick_apply(const QSpec& q, Side side, const FockVector& symbol,
                      const FockVector& v, const TruncationPolicy& policy = {});

// Tracial 2-norm of W(symbol): |W(eta)|_2 = |eta|_Q since the trace is the
// vacuum state.
double wick_vacuum_norm2(const GramCache& cache, const FockVector& symbol);

// Vacuum trace tau(a) = <Omega, a Omega>_Q, read off a Omega.
double trace_vacuum(const FockVector& a_applied_to_vacuum);

// A Wick operator held by its symbol. Never materialized as a matrix;
// composition happens by successive application to vectors.
struct WickOperator {
  Side side;
  FockVector symbol;
  int degree_span;  // top degree of symbol

  FockVector apply(const QSpec& q, const FockVector& v,
                   const TruncationPolicy& policy = {}) const {
    return wick_apply(q, side, symbol, v, policy);
  }
};

// v_n = W(xi0^n) / |xi0^n|_Q; {v_n Omega} is orthonormal in the deformed
// inner product.
WickOperator v_basis(const QSpec& q, GramCache& cache, const Eigen::VectorXd& xi0, int n,
                     int max_degree);

}  // namespace qfock
