#include "doctest.h"
#include "qfock/rng.hpp"
#include "qfock/yang_baxter.hpp"

using namespace qfock;

namespace {

Eigen::MatrixXd baseline_entries() {
  Eigen::MatrixXd m(2, 2);
  m << 0.5, 0.3, 0.3, 0.4;
  return m;
}

}  // namespace

TEST_CASE("yang-baxter action on simple tensors") {
  const QSpec q(baseline_entries());

  // e1 x e2 -> q12 e2 x e1
  Eigen::VectorXd v = Eigen::VectorXd::Zero(4);
  v(word_index(2, Word({1, 2}))) = 1.0;
  Eigen::VectorXd out = yang_baxter_site(q, 2, 1, v);
  CHECK(out(word_index(2, Word({2, 1}))) == 0.3);
  CHECK(out(word_index(2, Word({1, 2}))) == 0.0);

  // diagonal letter: e1 x e1 -> q11 e1 x e1
  v.setZero();
  v(word_index(2, Word({1, 1}))) = 1.0;
  out = yang_baxter_site(q, 2, 1, v);
  CHECK(out(word_index(2, Word({1, 1}))) == 0.5);

  // free case annihilates T entirely
  const QSpec free = QSpec::free_case(2);
  Eigen::VectorXd any = Eigen::VectorXd::LinSpaced(4, 1.0, 4.0);
  CHECK(yang_baxter_site(free, 2, 1, any).isZero(0.0));
}

TEST_CASE("yang-baxter acts at the named site only") {
  const QSpec q(baseline_entries());
  Eigen::VectorXd v = Eigen::VectorXd::Zero(8);
  v(word_index(2, Word({1, 2, 1}))) = 1.0;

  Eigen::VectorXd out = yang_baxter_site(q, 3, 1, v);
  CHECK(out(word_index(2, Word({2, 1, 1}))) == 0.3);

  out = yang_baxter_site(q, 3, 2, v);
  CHECK(out(word_index(2, Word({1, 1, 2}))) == 0.3);

  CHECK_THROWS_AS(yang_baxter_site(q, 3, 0, v), ArgumentError);
  CHECK_THROWS_AS(yang_baxter_site(q, 3, 3, v), ArgumentError);
  CHECK_THROWS_AS(yang_baxter_site(q, 1, 1, Eigen::VectorXd::Zero(2)), ArgumentError);
}

TEST_CASE("yang-baxter matrix is symmetric for symmetric Q") {
  Rng rng(101);
  for (int trial = 0; trial < 5; ++trial) {
    const QSpec q(rng.symmetric_q_matrix(3, 0.9));
    const Eigen::MatrixXd t = yang_baxter_site_matrix(q, 2, 1);
    CHECK((t - t.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("braid relation holds on degree 3") {
  Rng rng(2024);
  for (int trial = 0; trial < 8; ++trial) {
    const QSpec q(rng.symmetric_q_matrix(3, 0.9));
    const Eigen::MatrixXd t1 = yang_baxter_site_matrix(q, 3, 1);
    const Eigen::MatrixXd t2 = yang_baxter_site_matrix(q, 3, 2);
    CHECK((t1 * t2 * t1 - t2 * t1 * t2).norm() < 1e-12);
  }
}
