#include "metric_sdr/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "metric_sdr/errors.hpp"
#include "metric_sdr/linalg.hpp"
#include "metric_sdr/parallel.hpp"
#include "metric_sdr/resampling.hpp"

namespace metric_sdr {

double projection_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows()) throw InvalidInput("bases live in different dimensions");
  return (linalg::projection_matrix(a) - linalg::projection_matrix(b)).norm();
}

MeanSe mean_and_se(const std::vector<double>& values) {
  MeanSe out;
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) return out;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  return out;
}

StabilityResult stability_measure_sized(const Eigen::MatrixXd& x, const ResponseSet& y,
                                        Method method, std::size_t d, std::size_t subsample,
                                        std::size_t repeats, std::uint64_t seed,
                                        const FitOptions& opts) {
  const auto n = static_cast<std::size_t>(x.rows());
  const auto p = static_cast<std::size_t>(x.cols());
  if (subsample > n) throw InvalidParameter("subsample larger than the sample");
  if (subsample <= p)
    throw InvalidParameter("subsample size " + std::to_string(subsample) +
                           " must exceed p = " + std::to_string(p));
  if (repeats < 1) throw InvalidParameter("repeats must be >= 1");
  if (d < 1) throw InvalidParameter("stability needs an explicit d >= 1");

  const Eigen::MatrixXd full = fit(x, y, method, d, opts).basis.vectors;

  FitOptions inner = opts;
  inner.threads = 1;
  std::vector<double> deltas(repeats);
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  parallel_for(repeats, opts.threads, [&](std::size_t r) {
    Engine rng(derive_seed(seed, r, 0x57ab));
    std::vector<std::size_t> rows;
    rows.reserve(subsample);
    std::sample(all.begin(), all.end(), std::back_inserter(rows), subsample, rng);
    Eigen::MatrixXd xs(static_cast<Eigen::Index>(subsample), x.cols());
    for (std::size_t i = 0; i < subsample; ++i)
      xs.row(static_cast<Eigen::Index>(i)) = x.row(static_cast<Eigen::Index>(rows[i]));
    const auto sub = fit(xs, y.subset(rows), method, d, inner);
    deltas[r] = projection_distance(full, sub.basis.vectors);
  });

  const auto summary = mean_and_se(deltas);
  return {summary.mean, summary.se, std::move(deltas)};
}

StabilityResult stability_measure(const Eigen::MatrixXd& x, const ResponseSet& y, Method method,
                                  std::size_t d, double fraction, std::size_t repeats,
                                  std::uint64_t seed, const FitOptions& opts) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw InvalidParameter("subsample fraction must lie strictly between 0 and 1");
  const auto size = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(x.rows())));
  return stability_measure_sized(x, y, method, d, size, repeats, seed, opts);
}

void check_applicable(const SimulationSpec& spec, Method method) {
  validate(spec);
  if (!is_classical(method)) return;
  if (spec.family != Family::Euclidean && spec.family != Family::Toy)
    throw ConfigurationError(to_string(method) + " not applicable: " + to_string(spec.family) +
                             " responses are not scalar");
  const std::size_t d = true_dimension(spec);
  if (method == Method::Ols && d != 1)
    throw ConfigurationError("OLS not applicable: d_true = " + std::to_string(d));
}

BenchmarkResult run_benchmark(const SimulationSpec& spec, const std::vector<Method>& methods,
                              const BenchmarkOptions& opts) {
  if (methods.empty()) throw ConfigurationError("no methods requested");
  for (Method m : methods) check_applicable(spec, m);
  if (opts.replicates < 1) throw InvalidParameter("replicates must be >= 1");
  const std::size_t d = true_dimension(spec);

  const std::size_t count = methods.size();
  std::vector<std::optional<double>> deltas(opts.replicates * count);
  parallel_for(opts.replicates, opts.threads, [&](std::size_t r) {
    SimulationSpec rep = spec;
    rep.seed = derive_seed(opts.seed, r);
    const auto data = generate(rep);
    FitOptions fo;
    fo.metric = data.metric;
    fo.projections = opts.projections;
    fo.slices = opts.slices;
    fo.seed = derive_seed(opts.seed, r, 1);
    fo.threads = 1;
    for (std::size_t k = 0; k < count; ++k) {
      try {
        const auto result = fit(data.x, data.y, methods[k], d, fo);
        deltas[r * count + k] = projection_distance(data.b_true, result.basis.vectors);
      } catch (const NumericError&) {
        deltas[r * count + k].reset();
      }
    }
  });

  BenchmarkResult out;
  out.records.reserve(deltas.size());
  for (std::size_t r = 0; r < opts.replicates; ++r)
    for (std::size_t k = 0; k < count; ++k)
      out.records.push_back({methods[k], r, deltas[r * count + k]});

  for (std::size_t k = 0; k < count; ++k) {
    std::vector<double> ok;
    std::size_t failed = 0;
    for (std::size_t r = 0; r < opts.replicates; ++r) {
      if (const auto& v = deltas[r * count + k]) ok.push_back(*v);
      else ++failed;
    }
    const auto summary = mean_and_se(ok);
    BenchmarkCell cell;
    cell.spec = spec;
    cell.spec.seed = opts.seed;
    cell.method = methods[k];
    cell.replicates = ok.size();
    cell.failures = failed;
    cell.projections = opts.projections;
    cell.slices = opts.slices;
    cell.mean_delta = summary.mean;
    cell.se_delta = summary.se;
    out.cells.push_back(cell);
  }
  return out;
}

}  // namespace metric_sdr
