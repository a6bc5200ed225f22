#include "metric_sdr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "metric_sdr/errors.hpp"
#include "metric_sdr/parallel.hpp"

namespace metric_sdr {

std::string to_string(ResponseKind kind) {
  switch (kind) {
    case ResponseKind::Scalar: return "scalar";
    case ResponseKind::Vector: return "vector";
    case ResponseKind::DistributionSample: return "distribution";
    case ResponseKind::FunctionalSeries: return "functional";
  }
  return "unknown";
}

ResponseKind parse_response_kind(const std::string& name) {
  if (name == "scalar") return ResponseKind::Scalar;
  if (name == "vector") return ResponseKind::Vector;
  if (name == "distribution") return ResponseKind::DistributionSample;
  if (name == "functional") return ResponseKind::FunctionalSeries;
  throw ConfigurationError("unknown response kind '" + name + "'");
}

ResponseSet::ResponseSet(ResponseKind kind, RowMatrix values, std::vector<double> times)
    : kind_(kind), values_(std::move(values)), times_(std::move(times)) {
  if (values_.rows() < 2) throw InvalidInput("a response set needs at least 2 objects");
  if (!values_.allFinite()) throw InvalidInput("response values must be finite");
  const auto width = values_.cols();
  switch (kind_) {
    case ResponseKind::Scalar:
      if (width != 1) throw InvalidInput("scalar responses must have exactly one value per row");
      break;
    case ResponseKind::Vector:
      if (width < 1) throw InvalidInput("vector responses must have at least one component");
      break;
    case ResponseKind::DistributionSample:
      if (width < 2) throw InvalidInput("distribution samples need at least 2 values");
      break;
    case ResponseKind::FunctionalSeries:
      if (width < 2) throw InvalidInput("functional series need at least 2 time points");
      break;
  }
  if (!times_.empty() && static_cast<Eigen::Index>(times_.size()) != width)
    throw InvalidInput("time stamp count does not match series length");
}

ResponseSet ResponseSet::scalar(std::span<const double> values) {
  RowMatrix m(static_cast<Eigen::Index>(values.size()), 1);
  for (std::size_t i = 0; i < values.size(); ++i) m(static_cast<Eigen::Index>(i), 0) = values[i];
  return ResponseSet(ResponseKind::Scalar, std::move(m));
}

ResponseSet ResponseSet::from_rows(ResponseKind kind, const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw InvalidInput("no response rows");
  const std::size_t width = rows.front().size();
  RowMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != width)
      throw InvalidInput("response row " + std::to_string(i + 1) + " has " +
                         std::to_string(rows[i].size()) + " values, expected " +
                         std::to_string(width));
    for (std::size_t j = 0; j < width; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return ResponseSet(kind, std::move(m));
}

ResponseSet ResponseSet::subset(std::span<const std::size_t> rows) const {
  RowMatrix m(static_cast<Eigen::Index>(rows.size()), values_.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= size()) throw InvalidInput("subset row out of range");
    m.row(static_cast<Eigen::Index>(i)) = values_.row(static_cast<Eigen::Index>(rows[i]));
  }
  return ResponseSet(kind_, std::move(m), times_);
}

std::string to_string(const Metric& metric) {
  switch (metric.type) {
    case Metric::Type::Euclidean: return "euclidean";
    case Metric::Type::Wasserstein: return "wasserstein";
    case Metric::Type::Dft: return "dft";
    case Metric::Type::DftComplex: return "dft-complex";
  }
  return "unknown";
}

Metric parse_metric(const std::string& name, double wasserstein_order) {
  if (name == "euclidean") return Metric::euclidean();
  if (name == "wasserstein") return Metric::wasserstein(wasserstein_order);
  if (name == "dft") return Metric::dft();
  if (name == "dft-complex") return Metric::dft_complex();
  throw ConfigurationError("unknown metric '" + name + "'");
}

Metric default_metric(ResponseKind kind) {
  switch (kind) {
    case ResponseKind::DistributionSample: return Metric::wasserstein(2.0);
    case ResponseKind::FunctionalSeries: return Metric::dft_complex();
    default: return Metric::euclidean();
  }
}

namespace {

// Fills the upper triangle row by row and mirrors it. Each entry depends on its
// own pair only, so the row schedule cannot change any bit of the result.
template <typename PairDistance>
DistanceMatrix build_symmetric(std::size_t n, unsigned threads, PairDistance&& dist) {
  DistanceMatrix out{Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                           static_cast<Eigen::Index>(n))};
  auto& e = out.entries;
  parallel_for(n, threads, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = dist(i, j);
      e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      e(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  });
  return out;
}

double l2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    s += diff * diff;
  }
  return std::sqrt(s);
}

double sorted_wasserstein(std::span<const double> a, std::span<const double> b, double k) {
  const std::size_t m = a.size();
  double s = 0.0;
  if (k == 2.0) {
    for (std::size_t r = 0; r < m; ++r) {
      const double diff = a[r] - b[r];
      s += diff * diff;
    }
    return std::sqrt(s / static_cast<double>(m));
  }
  if (k == 1.0) {
    for (std::size_t r = 0; r < m; ++r) s += std::abs(a[r] - b[r]);
    return s / static_cast<double>(m);
  }
  for (std::size_t r = 0; r < m; ++r) s += std::pow(std::abs(a[r] - b[r]), k);
  return std::pow(s / static_cast<double>(m), 1.0 / k);
}

void check_order(double k) {
  if (!(k >= 1.0) || !std::isfinite(k))
    throw InvalidParameter("Wasserstein order must be a finite value >= 1");
}

}  // namespace

DistanceMatrix euclidean_distance_matrix(const ResponseSet& y, unsigned threads) {
  if (y.kind() == ResponseKind::DistributionSample)
    throw ConfigurationError("Euclidean metric does not apply to distribution samples");
  return build_symmetric(y.size(), threads,
                         [&](std::size_t i, std::size_t j) { return l2(y.item(i), y.item(j)); });
}

double wasserstein_distance(std::span<const double> a, std::span<const double> b, double k) {
  check_order(k);
  if (a.size() != b.size()) throw InvalidInput("Wasserstein samples must have equal size");
  if (a.size() < 2) throw InvalidInput("Wasserstein samples need at least 2 values");
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  return sorted_wasserstein(sa, sb, k);
}

DistanceMatrix wasserstein_distance_matrix(const ResponseSet& y, double k, unsigned threads) {
  check_order(k);
  if (y.kind() != ResponseKind::DistributionSample)
    throw ConfigurationError("Wasserstein metric requires distribution samples");
  RowMatrix sorted = y.values();
  for (Eigen::Index i = 0; i < sorted.rows(); ++i) {
    double* row = sorted.row(i).data();
    std::sort(row, row + sorted.cols());
  }
  const std::size_t m = y.width();
  return build_symmetric(y.size(), threads, [&](std::size_t i, std::size_t j) {
    return sorted_wasserstein({sorted.row(static_cast<Eigen::Index>(i)).data(), m},
                              {sorted.row(static_cast<Eigen::Index>(j)).data(), m}, k);
  });
}

std::vector<std::complex<double>> dft(std::span<const double> series) {
  const std::size_t t_len = series.size();
  std::vector<std::complex<double>> out(t_len);
  for (std::size_t k = 0; k < t_len; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t t = 0; t < t_len; ++t) {
      // k*t reduced mod T keeps the angle small and exact for constant inputs
      const double angle = -2.0 * std::numbers::pi * static_cast<double>((k * t) % t_len) /
                           static_cast<double>(t_len);
      acc += series[t] * std::polar(1.0, angle);
    }
    out[k] = acc;
  }
  return out;
}

std::vector<double> dft_half_spectrum(std::span<const double> series) {
  const std::size_t t_len = series.size();
  const std::size_t count = t_len / 2 + 1;
  std::vector<double> out(2 * count);
  for (std::size_t k = 0; k < count; ++k) {
    double re = 0.0, im = 0.0;
    for (std::size_t t = 0; t < t_len; ++t) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>((k * t) % t_len) /
                           static_cast<double>(t_len);
      re += series[t] * std::cos(angle);
      im += series[t] * std::sin(angle);
    }
    out[2 * k] = re;
    out[2 * k + 1] = im;
  }
  return out;
}

std::vector<double> dft_moduli(std::span<const double> series) {
  const auto spectrum = dft_half_spectrum(series);
  std::vector<double> out(spectrum.size() / 2);
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = std::hypot(spectrum[2 * k], spectrum[2 * k + 1]);
  return out;
}

DistanceMatrix dft_distance_matrix(const ResponseSet& y, unsigned threads) {
  if (y.kind() != ResponseKind::FunctionalSeries)
    throw ConfigurationError("DFT metric requires functional series");
  const std::size_t n = y.size();
  const std::size_t count = y.width() / 2 + 1;
  RowMatrix moduli(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(count));
  parallel_for(n, threads, [&](std::size_t i) {
    const auto mod = dft_moduli(y.item(i));
    for (std::size_t k = 0; k < count; ++k)
      moduli(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = mod[k];
  });
  return build_symmetric(n, threads, [&](std::size_t i, std::size_t j) {
    return l2({moduli.row(static_cast<Eigen::Index>(i)).data(), count},
              {moduli.row(static_cast<Eigen::Index>(j)).data(), count});
  });
}

DistanceMatrix dft_coefficient_distance_matrix(const ResponseSet& y, unsigned threads) {
  if (y.kind() != ResponseKind::FunctionalSeries)
    throw ConfigurationError("DFT metric requires functional series");
  const std::size_t n = y.size();
  const std::size_t width = 2 * (y.width() / 2 + 1);
  RowMatrix spectra(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(width));
  parallel_for(n, threads, [&](std::size_t i) {
    const auto s = dft_half_spectrum(y.item(i));
    for (std::size_t k = 0; k < width; ++k)
      spectra(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = s[k];
  });
  return build_symmetric(n, threads, [&](std::size_t i, std::size_t j) {
    return l2({spectra.row(static_cast<Eigen::Index>(i)).data(), width},
              {spectra.row(static_cast<Eigen::Index>(j)).data(), width});
  });
}

DistanceMatrix distance_matrix(const ResponseSet& y, const Metric& metric, unsigned threads) {
  switch (metric.type) {
    case Metric::Type::Euclidean:
      return euclidean_distance_matrix(y, threads);
    case Metric::Type::Wasserstein:
      return wasserstein_distance_matrix(y, metric.order, threads);
    case Metric::Type::Dft:
      return dft_distance_matrix(y, threads);
    case Metric::Type::DftComplex:
      return dft_coefficient_distance_matrix(y, threads);
  }
  throw ConfigurationError("unknown metric");
}

}  // namespace metric_sdr
