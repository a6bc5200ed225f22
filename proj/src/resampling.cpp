#include "metric_sdr/resampling.hpp"

#include <algorithm>
#include <cmath>

#include "metric_sdr/errors.hpp"

namespace metric_sdr {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(master) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
}

Eigen::VectorXd sample_unit_vector(std::size_t n, Engine& rng) {
  if (n == 0) throw InvalidParameter("unit vector dimension must be >= 1");
  std::normal_distribution<double> normal;
  Eigen::VectorXd u(static_cast<Eigen::Index>(n));
  for (;;) {
    for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = normal(rng);
    const double norm = u.norm();
    if (norm > 0.0 && std::isfinite(norm)) return u / norm;
  }
}

Eigen::VectorXd surrogate_response(const DistanceMatrix& d, const Eigen::VectorXd& u) {
  if (static_cast<std::size_t>(u.size()) != d.size())
    throw InvalidInput("unit vector length " + std::to_string(u.size()) +
                       " does not match distance matrix size " + std::to_string(d.size()));
  return (u.transpose() * d.entries).transpose();
}

Eigen::VectorXd surrogate_response(const ResponseSet& y, const Metric& metric,
                                   const Eigen::VectorXd& u) {
  const std::size_t n = y.size();
  if (static_cast<std::size_t>(u.size()) != n)
    throw InvalidInput("unit vector length does not match response count");

  // Precompute per-object features so each pair costs one small l2/Wk evaluation.
  RowMatrix features = y.values();
  switch (metric.type) {
    case Metric::Type::Euclidean:
      if (y.kind() == ResponseKind::DistributionSample)
        throw ConfigurationError("Euclidean metric does not apply to distribution samples");
      break;
    case Metric::Type::Wasserstein:
      if (y.kind() != ResponseKind::DistributionSample)
        throw ConfigurationError("Wasserstein metric requires distribution samples");
      for (Eigen::Index i = 0; i < features.rows(); ++i)
        std::sort(features.row(i).data(), features.row(i).data() + features.cols());
      break;
    case Metric::Type::Dft: {
      if (y.kind() != ResponseKind::FunctionalSeries)
        throw ConfigurationError("DFT metric requires functional series");
      RowMatrix mod(features.rows(), static_cast<Eigen::Index>(y.width() / 2 + 1));
      for (std::size_t i = 0; i < n; ++i) {
        const auto m = dft_moduli(y.item(i));
        for (std::size_t k = 0; k < m.size(); ++k)
          mod(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = m[k];
      }
      features = std::move(mod);
      break;
    }
    case Metric::Type::DftComplex: {
      if (y.kind() != ResponseKind::FunctionalSeries)
        throw ConfigurationError("DFT metric requires functional series");
      RowMatrix spec(features.rows(), static_cast<Eigen::Index>(2 * (y.width() / 2 + 1)));
      for (std::size_t i = 0; i < n; ++i) {
        const auto s = dft_half_spectrum(y.item(i));
        for (std::size_t k = 0; k < s.size(); ++k)
          spec(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = s[k];
      }
      features = std::move(spec);
      break;
    }
  }

  const bool wasserstein = metric.type == Metric::Type::Wasserstein;
  const double k = metric.order;
  const double m = static_cast<double>(features.cols());
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < out.size(); ++j) {
    const auto fj = features.row(j);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < out.size(); ++i) {
      double dist;
      if (!wasserstein) {
        dist = (features.row(i) - fj).norm();
      } else if (k == 2.0) {
        dist = std::sqrt((features.row(i) - fj).squaredNorm() / m);
      } else {
        dist = std::pow((features.row(i) - fj).array().abs().pow(k).sum() / m, 1.0 / k);
      }
      acc += u(i) * dist;
    }
    out(j) = acc;
  }
  return out;
}

}  // namespace metric_sdr
