#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "metric_sdr/metrics.hpp"

namespace metric_sdr {

enum class Method { Ols, SaOls, Sir, SaSir };

std::string to_string(Method method);
Method parse_method(const std::string& name);
// Classical OLS and SIR work on the raw scalar response only.
inline bool is_classical(Method m) { return m == Method::Ols || m == Method::Sir; }

struct Standardized {
  Eigen::MatrixXd z;             // n x p, zero column means, identity covariance
  Eigen::VectorXd mean;          // p
  Eigen::MatrixXd inv_sqrt_cov;  // p x p
  int floored_eigenvalues = 0;   // > 0 means the covariance was near singular
};

// Z = (X - mean) Sigma^{-1/2}, Sigma the n-divisor sample covariance.
Standardized standardize(const Eigen::MatrixXd& x);

struct CandidateMatrix {
  Eigen::MatrixXd m;
  std::size_t n_vectors = 0;
  // Projections whose slicing collapsed tied boundaries into fewer slices.
  std::size_t reduced_slicings = 0;
};

struct SirSlicing {
  std::size_t slices = 0;
  std::vector<std::size_t> labels;  // slice index per observation
  std::vector<std::size_t> counts;
  std::vector<double> proportions;
};

// Equal-frequency slicing on sorted order statistics. A block of tied values
// straddling a boundary goes to the lower slice; boundaries that collapse are
// dropped, so the result may have fewer than `h` slices (never an empty one).
SirSlicing slice_equal_frequency(std::span<const double> y, std::size_t h);

// sum_h p_h mu_h mu_h^T for one response; throws SlicingError if fewer than
// two slices survive tie handling.
Eigen::MatrixXd sir_term(const Eigen::MatrixXd& z, std::span<const double> y, std::size_t h,
                         bool* reduced = nullptr);

// Cov(z, y) in whitened scale.
Eigen::VectorXd classical_ols(const Eigen::MatrixXd& z, std::span<const double> y);
CandidateMatrix classical_sir(const Eigen::MatrixXd& z, std::span<const double> y,
                              std::size_t h);

struct ProjectionOptions {
  std::size_t count = 1000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

CandidateMatrix sa_ols_candidate(const Eigen::MatrixXd& z, const DistanceMatrix& d,
                                 const ProjectionOptions& opts);
CandidateMatrix sa_sir_candidate(const Eigen::MatrixXd& z, const DistanceMatrix& d,
                                 std::size_t h, const ProjectionOptions& opts);

struct Basis {
  Eigen::MatrixXd vectors;      // p x d, original predictor scale
  Eigen::VectorXd eigenvalues;  // full descending spectrum of the candidate
};

Basis extract_basis(const CandidateMatrix& m, const Eigen::MatrixXd& inv_sqrt_cov,
                    std::size_t d);

// argmax_j lambda_j / lambda_{j+1}, eigenvalues floored at 1e-12.
std::size_t suggest_dimension(const Eigen::VectorXd& eigenvalues);
std::size_t suggest_dimension(const CandidateMatrix& m);

struct FitOptions {
  Metric metric = Metric::euclidean();
  std::size_t projections = 1000;
  std::size_t slices = 5;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct FitResult {
  Basis basis;
  CandidateMatrix candidate;
  std::size_t suggested_d = 1;
  std::vector<std::string> warnings;
};

// Standardize X, build the method's candidate matrix and extract d directions.
// d == 0 uses suggest_dimension.
FitResult fit(const Eigen::MatrixXd& x, const ResponseSet& y, Method method, std::size_t d,
              const FitOptions& opts);

}  // namespace metric_sdr
