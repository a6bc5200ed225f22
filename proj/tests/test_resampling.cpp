#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "metric_sdr/errors.hpp"
#include "metric_sdr/resampling.hpp"
#include "oracles.hpp"

using namespace metric_sdr;

TEST_CASE("one-dimensional unit vectors are +-1") {
  Engine rng(3);
  std::set<double> seen;
  for (int i = 0; i < 200; ++i) {
    const auto u = sample_unit_vector(1, rng);
    CHECK(std::abs(u(0)) == 1.0);
    seen.insert(u(0));
  }
  CHECK(seen.size() == 2);
}

TEST_CASE("unit vectors have unit norm") {
  for (std::size_t n : {2u, 3u, 17u, 500u}) {
    Engine rng(n);
    for (int i = 0; i < 20; ++i) CHECK(std::abs(sample_unit_vector(n, rng).norm() - 1.0) < 1e-12);
  }
  Engine rng(0);
  CHECK_THROWS_AS(sample_unit_vector(0, rng), InvalidParameter);
}

TEST_CASE("sphere draws have coordinate means near zero") {
  Engine rng(77);
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) sum += sample_unit_vector(3, rng);
  const Eigen::Vector3d mean = sum / draws;
  for (int k = 0; k < 3; ++k) CHECK(std::abs(mean(k)) < 0.05);
}

TEST_CASE("projection streams are reproducible and distinct") {
  const ProjectionStream a(42), b(42), c(43);
  Engine ea = a.engine(5), eb = b.engine(5), ec = c.engine(5), e6 = a.engine(6);
  const auto ua = sample_unit_vector(10, ea);
  CHECK(ua == sample_unit_vector(10, eb));
  CHECK(ua != sample_unit_vector(10, ec));
  CHECK(ua != sample_unit_vector(10, e6));
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 3, 2));
}

TEST_CASE("surrogate response basics") {
  const Eigen::MatrixXd g = oracle::random_matrix(5, 5, 1).cwiseAbs();
  const DistanceMatrix d{g + g.transpose()};
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(5);
  e1(0) = 1.0;
  CHECK((surrogate_response(d, e1) - d.entries.row(0).transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(surrogate_response(DistanceMatrix{Eigen::MatrixXd::Zero(5, 5)}, e1).isZero(0.0));
  CHECK_THROWS_AS(surrogate_response(d, Eigen::VectorXd::Ones(4)), InvalidInput);
}

TEST_CASE("surrogate response matches a double loop and is linear") {
  const Eigen::MatrixXd g = oracle::random_matrix(5, 5, 9).cwiseAbs();
  const DistanceMatrix d{g + g.transpose()};
  Engine rng(9);
  const auto u = sample_unit_vector(5, rng);
  const auto got = surrogate_response(d, u);
  for (int j = 0; j < 5; ++j) {
    double acc = 0.0;
    for (int i = 0; i < 5; ++i) acc += u(i) * d.entries(i, j);
    CHECK(std::abs(got(j) - acc) < 1e-12);
  }
  // symmetric D: u^T D == (D u)^T
  CHECK((got - d.entries * u).cwiseAbs().maxCoeff() < 1e-12);

  const Eigen::VectorXd u1 = oracle::random_matrix(5, 1, 1), u2 = oracle::random_matrix(5, 1, 2);
  const double a = 1.7, b = -0.4;
  const Eigen::VectorXd lhs = surrogate_response(d, a * u1 + b * u2);
  const Eigen::VectorXd rhs = a * surrogate_response(d, u1) + b * surrogate_response(d, u2);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("streaming surrogate agrees with the materialized distance matrix") {
  Engine rng(4);
  const auto u = sample_unit_vector(12, rng);
  const auto scalar = ResponseSet::from_rows(ResponseKind::Scalar, oracle::random_rows(12, 1, 4));
  const auto series =
      ResponseSet::from_rows(ResponseKind::FunctionalSeries, oracle::random_rows(12, 10, 4));
  const auto dist =
      ResponseSet::from_rows(ResponseKind::DistributionSample, oracle::random_rows(12, 15, 4));
  const std::pair<const ResponseSet*, Metric> cases[] = {
      {&scalar, Metric::euclidean()},     {&series, Metric::euclidean()},
      {&series, Metric::dft()},           {&series, Metric::dft_complex()},
      {&dist, Metric::wasserstein(2.0)},  {&dist, Metric::wasserstein(1.5)}};
  for (const auto& [y, metric] : cases) {
    const auto full = surrogate_response(distance_matrix(*y, metric), u);
    const auto streamed = surrogate_response(*y, metric, u);
    CHECK((full - streamed).cwiseAbs().maxCoeff() < 1e-10);
  }
}
