#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "metric_sdr/metrics.hpp"

namespace metric_sdr {

using Engine = std::mt19937_64;

// SplitMix64 finalizer over the master seed and stream coordinates. Every
// random stream in the library is keyed this way so results do not depend on
// how work is scheduled across threads.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

// Independent random streams for the k-th projection direction.
class ProjectionStream {
 public:
  explicit ProjectionStream(std::uint64_t seed) : seed_(seed) {}
  Engine engine(std::size_t k) const { return Engine(derive_seed(seed_, k, 0x5eed)); }
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

// Uniform draw on the unit sphere in R^n: normalized standard normal vector.
Eigen::VectorXd sample_unit_vector(std::size_t n, Engine& rng);

// values[j] = sum_i u[i] D[i, j].
Eigen::VectorXd surrogate_response(const DistanceMatrix& d, const Eigen::VectorXd& u);

// Same quantity computed row by row without materializing D; for large n.
Eigen::VectorXd surrogate_response(const ResponseSet& y, const Metric& metric,
                                   const Eigen::VectorXd& u);

}  // namespace metric_sdr
