#pragma once

#include <cstddef>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace metric_sdr {

enum class ResponseKind { Scalar, Vector, DistributionSample, FunctionalSeries };

std::string to_string(ResponseKind kind);
ResponseKind parse_response_kind(const std::string& name);

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// n response objects of a single kind, stored one object per row. Scalar sets
// have width 1; vectors have width q; distribution samples width m; functional
// series width T. Functional sets may carry the shared measurement times.
class ResponseSet {
 public:
  ResponseSet(ResponseKind kind, RowMatrix values, std::vector<double> times = {});

  static ResponseSet scalar(std::span<const double> values);
  // Throws InvalidInput naming the first row whose length differs from row 0.
  static ResponseSet from_rows(ResponseKind kind, const std::vector<std::vector<double>>& rows);

  ResponseKind kind() const { return kind_; }
  std::size_t size() const { return static_cast<std::size_t>(values_.rows()); }
  std::size_t width() const { return static_cast<std::size_t>(values_.cols()); }
  const RowMatrix& values() const { return values_; }
  std::span<const double> item(std::size_t i) const {
    return {values_.data() + i * width(), width()};
  }
  const std::vector<double>& times() const { return times_; }

  ResponseSet subset(std::span<const std::size_t> rows) const;

 private:
  ResponseKind kind_;
  RowMatrix values_;
  std::vector<double> times_;
};

// Symmetric n x n matrix of pairwise response distances.
struct DistanceMatrix {
  Eigen::MatrixXd entries;

  std::size_t size() const { return static_cast<std::size_t>(entries.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
};

struct Metric {
  // Dft compares coefficient moduli (phase-blind pseudometric); DftComplex
  // compares the complex coefficients themselves.
  enum class Type { Euclidean, Wasserstein, Dft, DftComplex };
  Type type = Type::Euclidean;
  double order = 2.0;  // Wasserstein order k

  static Metric euclidean() { return {Type::Euclidean, 2.0}; }
  static Metric wasserstein(double k = 2.0) { return {Type::Wasserstein, k}; }
  static Metric dft() { return {Type::Dft, 2.0}; }
  static Metric dft_complex() { return {Type::DftComplex, 2.0}; }
};

std::string to_string(const Metric& metric);
Metric parse_metric(const std::string& name, double wasserstein_order = 2.0);
// The metric a response kind should use when none is requested.
Metric default_metric(ResponseKind kind);

// |y_i - y_j| for scalars, l2 norm of the difference for vectors and raw series.
DistanceMatrix euclidean_distance_matrix(const ResponseSet& y, unsigned threads = 1);

// Empirical k-Wasserstein distance between equal-size samples, via order statistics.
DistanceMatrix wasserstein_distance_matrix(const ResponseSet& y, double k = 2.0,
                                           unsigned threads = 1);

// l2 distance between the moduli of the first floor(T/2)+1 DFT coefficients.
DistanceMatrix dft_distance_matrix(const ResponseSet& y, unsigned threads = 1);

// l2 distance between the first floor(T/2)+1 complex DFT coefficients. A
// proper metric; circular shifts are not collapsed.
DistanceMatrix dft_coefficient_distance_matrix(const ResponseSet& y, unsigned threads = 1);

DistanceMatrix distance_matrix(const ResponseSet& y, const Metric& metric,
                               unsigned threads = 1);

// Full discrete Fourier transform, all T coefficients.
std::vector<std::complex<double>> dft(std::span<const double> series);
// |Y(k)| for k = 0..floor(T/2).
std::vector<double> dft_moduli(std::span<const double> series);
// (Re Y(0), Im Y(0), Re Y(1), ...) for k = 0..floor(T/2).
std::vector<double> dft_half_spectrum(std::span<const double> series);

// Empirical W_k between two equal-size samples (sorted copies are made).
double wasserstein_distance(std::span<const double> a, std::span<const double> b,
                            double k = 2.0);

}  // namespace metric_sdr
