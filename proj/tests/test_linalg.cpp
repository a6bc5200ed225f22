#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "metric_sdr/errors.hpp"
#include "metric_sdr/linalg.hpp"
#include "oracles.hpp"

using namespace metric_sdr;
using Eigen::MatrixXd;

namespace {

MatrixXd random_spd(Eigen::Index p, std::uint64_t seed) {
  const MatrixXd g = oracle::random_matrix(p + 3, p, seed);
  return g.transpose() * g;
}

}  // namespace

TEST_CASE("sym_eigen on a diagonal matrix") {
  const MatrixXd a = Eigen::Vector3d(3, 1, 0).asDiagonal();
  const auto e = linalg::sym_eigen(a);
  CHECK(e.values(0) == doctest::Approx(3));
  CHECK(e.values(1) == doctest::Approx(1));
  CHECK(e.values(2) == doctest::Approx(0));
  CHECK((e.vectors - MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("sym_eigen on the identity") {
  const auto e = linalg::sym_eigen(MatrixXd::Identity(4, 4));
  for (int j = 0; j < 4; ++j) CHECK(e.values(j) == doctest::Approx(1.0));
}

TEST_CASE("sym_eigen reconstructs random SPD matrices") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const MatrixXd a = random_spd(6, seed);
    const auto e = linalg::sym_eigen(a);
    const MatrixXd rebuilt = e.vectors * e.values.asDiagonal() * e.vectors.transpose();
    CHECK((rebuilt - a).cwiseAbs().maxCoeff() < 1e-8 * a.cwiseAbs().maxCoeff());
    CHECK((e.vectors.transpose() * e.vectors - MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() <
          1e-8);
    CHECK(std::abs(e.values.sum() - a.trace()) < 1e-9 * std::abs(a.trace()));
    for (int j = 0; j < 6; ++j) {
      CHECK((a * e.vectors.col(j) - e.values(j) * e.vectors.col(j)).norm() <
            1e-8 * e.values(0));
      if (j > 0) CHECK(e.values(j - 1) >= e.values(j));
      // sign convention: largest-magnitude entry positive
      Eigen::Index lead;
      e.vectors.col(j).cwiseAbs().maxCoeff(&lead);
      CHECK(e.vectors(lead, j) > 0);
    }
  }
}

TEST_CASE("sym_eigen rejects asymmetric input") {
  MatrixXd a = MatrixXd::Identity(3, 3);
  a(0, 1) = 0.5;
  CHECK_THROWS_AS(linalg::sym_eigen(a), InvalidInput);
}

TEST_CASE("inv_sqrt on simple matrices") {
  CHECK((linalg::inv_sqrt(MatrixXd::Identity(5, 5)) - MatrixXd::Identity(5, 5))
            .cwiseAbs()
            .maxCoeff() < 1e-14);
  const MatrixXd a = Eigen::Vector2d(4, 9).asDiagonal();
  const MatrixXd r = linalg::inv_sqrt(a);
  CHECK(r(0, 0) == doctest::Approx(0.5));
  CHECK(r(1, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(std::abs(r(0, 1)) < 1e-15);
}

TEST_CASE("inv_sqrt round trip on random SPD") {
  for (std::uint64_t seed = 20; seed < 30; ++seed) {
    const MatrixXd a = random_spd(8, seed);
    const MatrixXd r = linalg::inv_sqrt(a);
    CHECK((r * a * r - MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("inv_sqrt rejects indefinite matrices and floors singular ones") {
  const MatrixXd bad = Eigen::Vector2d(1, -1).asDiagonal();
  CHECK_THROWS_AS(linalg::inv_sqrt(bad), NumericError);
  const MatrixXd singular = Eigen::Vector3d(2, 1, 0).asDiagonal();
  int floored = 0;
  const MatrixXd r = linalg::inv_sqrt(singular, -1.0, &floored);
  CHECK(floored == 1);
  CHECK(r.allFinite());
  CHECK(r(2, 2) == doctest::Approx(1.0 / std::sqrt(2e-10)));
}

TEST_CASE("projection matrix basics") {
  MatrixXd e1 = MatrixXd::Zero(4, 1);
  e1(0, 0) = 1;
  MatrixXd expected = MatrixXd::Zero(4, 4);
  expected(0, 0) = 1;
  CHECK((linalg::projection_matrix(e1) - expected).cwiseAbs().maxCoeff() < 1e-15);

  const MatrixXd q = oracle::random_orthogonal(6, 3).leftCols(2);
  CHECK((linalg::projection_matrix(q) - q * q.transpose()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("projection matrix is invariant to re-basing and idempotent") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const MatrixXd b = oracle::random_matrix(7, 2, seed);
    const MatrixXd r = oracle::random_matrix(2, 2, seed + 100);
    const MatrixXd p1 = linalg::projection_matrix(b);
    const MatrixXd p2 = linalg::projection_matrix(b * r);
    CHECK((p1 - p2).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((p1 * p1 - p1).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((p1 - p1.transpose()).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(std::abs(p1.trace() - 2.0) < 1e-9);
    CHECK((p1 - oracle::projector(b)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("projection matrix rejects rank-deficient bases") {
  MatrixXd b(3, 2);
  b << 1, 2, 1, 2, 1, 2;
  CHECK_THROWS_AS(linalg::projection_matrix(b), RankError);
  CHECK_THROWS_AS(linalg::projection_matrix(MatrixXd::Zero(3, 1)), RankError);
  CHECK_THROWS_AS(linalg::projection_matrix(MatrixXd::Ones(2, 3)), RankError);
}
