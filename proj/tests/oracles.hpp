#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library's numerical paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Rows = std::vector<std::vector<double>>;

inline Rows random_rows(std::size_t n, std::size_t width, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, scale);
  Rows rows(n, std::vector<double>(width));
  for (auto& r : rows)
    for (auto& v : r) v = normal(rng);
  return rows;
}

inline double l2(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

inline Eigen::MatrixXd pairwise_l2(const Rows& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) d(i, j) = l2(rows[i], rows[j]);
  return d;
}

// Textbook DFT with the angle computed directly from k*t.
inline std::vector<std::complex<double>> naive_dft(const std::vector<double>& y) {
  const std::size_t t_len = y.size();
  std::vector<std::complex<double>> out(t_len);
  for (std::size_t k = 0; k < t_len; ++k)
    for (std::size_t t = 0; t < t_len; ++t)
      out[k] += y[t] * std::exp(std::complex<double>(
                           0.0, -2.0 * std::numbers::pi * double(k) * double(t) / double(t_len)));
  return out;
}

inline Eigen::MatrixXd projector(const Eigen::MatrixXd& a) {
  return a * (a.transpose() * a).inverse() * a.transpose();
}

// Between-slice covariance for an explicit label vector, entry by entry.
inline Eigen::MatrixXd slice_mean_term(const Eigen::MatrixXd& z, const std::vector<int>& labels,
                                       int slices) {
  const auto n = z.rows(), p = z.cols();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(p, p);
  for (int h = 0; h < slices; ++h) {
    std::vector<double> mean(static_cast<std::size_t>(p), 0.0);
    int count = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (labels[static_cast<std::size_t>(i)] != h) continue;
      ++count;
      for (Eigen::Index a = 0; a < p; ++a) mean[static_cast<std::size_t>(a)] += z(i, a);
    }
    for (auto& v : mean) v /= count;
    const double prop = double(count) / double(n);
    for (Eigen::Index a = 0; a < p; ++a)
      for (Eigen::Index b = 0; b < p; ++b)
        m(a, b) += prop * mean[static_cast<std::size_t>(a)] * mean[static_cast<std::size_t>(b)];
  }
  return m;
}

inline Eigen::MatrixXd random_orthogonal(Eigen::Index p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd g(p, p);
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = 0; j < p; ++j) g(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  return qr.householderQ() * Eigen::MatrixXd::Identity(p, p);
}

inline Eigen::MatrixXd random_matrix(Eigen::Index r, Eigen::Index c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd g(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) g(i, j) = normal(rng);
  return g;
}

}  // namespace oracle
