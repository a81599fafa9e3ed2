#pragma once

#include <Eigen/Dense>

#include "qfock/qspec.hpp"
#include "qfock/word.hpp"

namespace qfock {

// The Yang-Baxter operator T: e_i x e_j -> q_ij e_j x e_i, applied at
// tensor sites (site, site+1) of a degree-n coefficient block:
// T_site = 1^(site-1) x T x 1^(n-site-1). Site is 1-based, 1 <= site <= n-1.
// On coefficients: out[(..,a,b,..)] = q_ba * in[(..,b,a,..)].
Eigen::VectorXd yang_baxter_site(const QSpec& q, int degree, int site,
                                 const Eigen::VectorXd& block);

// Dense N^n x N^n matrix of T_site; test and brute-force helper.
Eigen::MatrixXd yang_baxter_site_matrix(const QSpec& q, int degree, int site);

}  // namespace qfock
