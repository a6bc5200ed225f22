#include "metric_sdr/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "metric_sdr/errors.hpp"
#include "metric_sdr/linalg.hpp"
#include "metric_sdr/resampling.hpp"

namespace metric_sdr {

std::string to_string(Family family) {
  switch (family) {
    case Family::Toy: return "toy";
    case Family::Euclidean: return "euclidean";
    case Family::Distributional: return "distributional";
    case Family::Functional: return "functional";
  }
  return "unknown";
}

Family parse_family(const std::string& name) {
  if (name == "toy") return Family::Toy;
  if (name == "euclidean") return Family::Euclidean;
  if (name == "distributional") return Family::Distributional;
  if (name == "functional") return Family::Functional;
  throw ConfigurationError("unknown family '" + name + "'");
}

namespace {

int model_count(Family family) {
  switch (family) {
    case Family::Toy: return 1;
    case Family::Euclidean: return 3;
    case Family::Distributional: return 4;
    case Family::Functional: return 3;
  }
  return 0;
}

std::size_t object_length(const SimulationSpec& spec) {
  if (spec.m_or_t > 0) return spec.m_or_t;
  return spec.family == Family::Distributional ? 100 : 30;
}

// (1,1,0,...,0), optionally normalized
Eigen::VectorXd leading_pair(std::size_t p, bool normalized) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));
  b(0) = b(1) = normalized ? 1.0 / std::numbers::sqrt2 : 1.0;
  return b;
}

// (0,...,0,1,1)/sqrt(2)
Eigen::VectorXd trailing_pair(std::size_t p) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));
  b(static_cast<Eigen::Index>(p) - 2) = b(static_cast<Eigen::Index>(p) - 1) =
      1.0 / std::numbers::sqrt2;
  return b;
}

Eigen::VectorXd unit(std::size_t p, Eigen::Index i) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));
  e(i) = 1.0;
  return e;
}

}  // namespace

void validate(const SimulationSpec& spec) {
  if (spec.model < 1 || spec.model > model_count(spec.family))
    throw ConfigurationError("unknown model " + std::to_string(spec.model) + " for family " +
                             to_string(spec.family));
  if (spec.n < 2) throw ConfigurationError("simulation needs n >= 2");
  const bool two_trailing =
      spec.family == Family::Distributional || spec.family == Family::Functional;
  const std::size_t min_p = two_trailing ? 4 : 2;
  if (spec.p < min_p)
    throw ConfigurationError(to_string(spec.family) + " models need p >= " +
                             std::to_string(min_p));
  if (two_trailing && object_length(spec) < 2)
    throw ConfigurationError("per-object sample size must be >= 2");
  if (!(spec.noise_scale >= 0.0)) throw ConfigurationError("noise scale must be >= 0");
}

Eigen::MatrixXd true_basis(const SimulationSpec& spec) {
  validate(spec);
  const std::size_t p = spec.p;
  switch (spec.family) {
    case Family::Toy:
      return leading_pair(p, false);
    case Family::Euclidean:
      if (spec.model == 3) {
        Eigen::MatrixXd b(static_cast<Eigen::Index>(p), 2);
        b << unit(p, 0), unit(p, 1);
        return b;
      }
      return leading_pair(p, false);
    case Family::Distributional:
      if (spec.model >= 3) {
        Eigen::MatrixXd b(static_cast<Eigen::Index>(p), 2);
        b << leading_pair(p, true), trailing_pair(p);
        return b;
      }
      return leading_pair(p, true);
    case Family::Functional:
      // model III: beta2 enters through the error scale
      if (spec.model == 3) {
        Eigen::MatrixXd b(static_cast<Eigen::Index>(p), 2);
        b << leading_pair(p, true), trailing_pair(p);
        return b;
      }
      return leading_pair(p, true);
  }
  throw ConfigurationError("unknown family");
}

std::size_t true_dimension(const SimulationSpec& spec) {
  return static_cast<std::size_t>(true_basis(spec).cols());
}

Eigen::MatrixXd true_projection(const SimulationSpec& spec) {
  return linalg::projection_matrix(true_basis(spec));
}

SimulatedDataset generate(const SimulationSpec& spec) {
  validate(spec);
  const std::size_t n = spec.n;
  const std::size_t p = spec.p;
  const auto ni = static_cast<Eigen::Index>(n);
  const auto pi = static_cast<Eigen::Index>(p);
  const double noise = spec.noise_scale;
  Engine rng(spec.seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform01(0.0, 1.0);

  Eigen::MatrixXd x(ni, pi);
  for (Eigen::Index i = 0; i < ni; ++i)
    for (Eigen::Index j = 0; j < pi; ++j)
      x(i, j) = spec.family == Family::Distributional ? uniform01(rng) : normal(rng);

  const Eigen::VectorXd b1 = leading_pair(p, spec.family == Family::Distributional ||
                                                 spec.family == Family::Functional);
  const Eigen::VectorXd b2 = trailing_pair(p);
  const Eigen::VectorXd index1 = x * b1;

  switch (spec.family) {
    case Family::Toy: {
      RowMatrix y(ni, 1);
      for (Eigen::Index i = 0; i < ni; ++i) y(i, 0) = (1.0 + index1(i)) * 0.5 * noise * normal(rng);
      return {std::move(x), ResponseSet(ResponseKind::Scalar, std::move(y)), true_basis(spec), 1,
              Metric::euclidean()};
    }
    case Family::Euclidean: {
      RowMatrix y(ni, 1);
      for (Eigen::Index i = 0; i < ni; ++i) {
        const double eps = noise * normal(rng);
        switch (spec.model) {
          case 1: y(i, 0) = 0.5 + std::sin(index1(i)) + 0.5 * eps; break;
          case 2: y(i, 0) = (1.0 + index1(i)) * eps; break;
          default: {
            const double x1 = x(i, 0), x2 = x(i, 1);
            y(i, 0) = 0.5 * x1 * x1 * x1 + (x2 + 2.0) * eps;
          }
        }
      }
      auto b = true_basis(spec);
      const auto d = static_cast<std::size_t>(b.cols());
      return {std::move(x), ResponseSet(ResponseKind::Scalar, std::move(y)), std::move(b), d,
              Metric::euclidean()};
    }
    case Family::Distributional: {
      const std::size_t m = object_length(spec);
      RowMatrix y(ni, static_cast<Eigen::Index>(m));
      const Eigen::VectorXd index2 = x * b2;
      for (Eigen::Index i = 0; i < ni; ++i) {
        double mean = 0.0, sd = 1.0;
        switch (spec.model) {
          case 1: {
            std::uniform_real_distribution<double> u(0.0, std::abs(index1(i)));
            for (Eigen::Index r = 0; r < y.cols(); ++r) y(i, r) = u(rng);
            continue;
          }
          case 2:
            mean = index1(i);
            break;
          // Models III and IV write N(mean, spread) with spread a standard deviation.
          case 3:
            mean = std::exp(index1(i)) + 0.25 * normal(rng);
            sd = index2(i) * index2(i);
            break;
          default:
            mean = index1(i) * index1(i) * normal(rng);
            sd = index2(i) * index2(i);
        }
        for (Eigen::Index r = 0; r < y.cols(); ++r) y(i, r) = mean + sd * normal(rng);
      }
      auto b = true_basis(spec);
      const auto d = static_cast<std::size_t>(b.cols());
      return {std::move(x), ResponseSet(ResponseKind::DistributionSample, std::move(y)),
              std::move(b), d, Metric::wasserstein(2.0)};
    }
    case Family::Functional: {
      const std::size_t t_len = object_length(spec);
      std::uniform_real_distribution<double> when(0.0, 10.0);
      std::vector<double> times(t_len);
      for (auto& t : times) t = when(rng);
      std::sort(times.begin(), times.end());
      std::vector<double> intercept(t_len);
      for (std::size_t t = 0; t < t_len; ++t)
        intercept[t] = 10.0 * std::sin(std::numbers::pi + std::numbers::pi * times[t] / 5.0);

      const Eigen::VectorXd index2 = x * b2;
      RowMatrix y(ni, static_cast<Eigen::Index>(t_len));
      for (Eigen::Index i = 0; i < ni; ++i) {
        double shift = 0.0, scale = noise;
        switch (spec.model) {
          case 1: shift = 2.0 * std::sin(index1(i)); break;
          case 2: shift = index1(i) * index1(i) * index1(i); break;
          default:
            shift = 2.0 * index1(i);
            scale = noise * 0.5 * index2(i) * index2(i) * index2(i);
        }
        for (std::size_t t = 0; t < t_len; ++t)
          y(i, static_cast<Eigen::Index>(t)) = intercept[t] + shift + scale * normal(rng);
      }
      auto b = true_basis(spec);
      const auto d = static_cast<std::size_t>(b.cols());
      return {std::move(x),
              ResponseSet(ResponseKind::FunctionalSeries, std::move(y), std::move(times)),
              std::move(b), d, Metric::dft_complex()};
    }
  }
  throw ConfigurationError("unknown family");
}

}  // namespace metric_sdr
