#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "metric_sdr/estimators.hpp"
#include "metric_sdr/simgen.hpp"

namespace metric_sdr {

// ||P_A - P_B||_F.
double projection_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

// Mean and standard error of the mean (sd with n-1 divisor over sqrt(n)).
MeanSe mean_and_se(const std::vector<double>& values);

struct StabilityResult {
  double mean = 0.0;
  double se = 0.0;
  std::vector<double> deltas;
};

// Fits on the full sample and on `repeats` uniform subsamples of size
// floor(fraction * n) drawn without replacement; reports the distance between
// the full-sample and subsample bases. Requires 0 < fraction < 1.
StabilityResult stability_measure(const Eigen::MatrixXd& x, const ResponseSet& y, Method method,
                                  std::size_t d, double fraction, std::size_t repeats,
                                  std::uint64_t seed, const FitOptions& opts);

// Same with an explicit subsample size, 1 < size <= n. size == n reproduces
// the full-sample fit on every repeat.
StabilityResult stability_measure_sized(const Eigen::MatrixXd& x, const ResponseSet& y,
                                        Method method, std::size_t d, std::size_t subsample,
                                        std::size_t repeats, std::uint64_t seed,
                                        const FitOptions& opts);

struct BenchmarkCell {
  SimulationSpec spec;
  Method method = Method::SaOls;
  std::size_t replicates = 0;  // successful replicates contributing to the mean
  std::size_t failures = 0;
  std::size_t projections = 0;
  std::size_t slices = 0;
  double mean_delta = 0.0;
  double se_delta = 0.0;
};

struct ReplicateRecord {
  Method method;
  std::size_t replicate;
  std::optional<double> delta;  // empty when the fit failed numerically
};

struct BenchmarkOptions {
  std::size_t replicates = 100;
  std::size_t projections = 1000;
  std::size_t slices = 5;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct BenchmarkResult {
  std::vector<BenchmarkCell> cells;
  std::vector<ReplicateRecord> records;  // replicate-major order
};

// Throws ConfigurationError when a method cannot be applied to the family.
void check_applicable(const SimulationSpec& spec, Method method);

// Each replicate r draws its dataset from derive_seed(seed, r) and its
// projections from derive_seed(seed, r, 1); all methods share both.
BenchmarkResult run_benchmark(const SimulationSpec& spec, const std::vector<Method>& methods,
                              const BenchmarkOptions& opts);

}  // namespace metric_sdr
