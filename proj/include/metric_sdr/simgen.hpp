#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "metric_sdr/metrics.hpp"

namespace metric_sdr {

enum class Family { Toy, Euclidean, Distributional, Functional };

std::string to_string(Family family);
Family parse_family(const std::string& name);

struct SimulationSpec {
  Family family = Family::Euclidean;
  int model = 1;
  std::size_t n = 500;
  std::size_t p = 10;
  std::size_t m_or_t = 0;  // 0 selects 100 (distributional) or 30 (functional)
  std::uint64_t seed = 1;
  // Scales the error term of the toy, Euclidean and functional models; 0 gives
  // noiseless responses. Distributional samples are unaffected.
  double noise_scale = 1.0;
};

struct SimulatedDataset {
  Eigen::MatrixXd x;
  ResponseSet y;
  Eigen::MatrixXd b_true;
  std::size_t d_true = 1;
  Metric metric;
};

// Throws ConfigurationError for an unknown (family, model) or too small p.
void validate(const SimulationSpec& spec);

SimulatedDataset generate(const SimulationSpec& spec);

Eigen::MatrixXd true_basis(const SimulationSpec& spec);
std::size_t true_dimension(const SimulationSpec& spec);
Eigen::MatrixXd true_projection(const SimulationSpec& spec);

}  // namespace metric_sdr
