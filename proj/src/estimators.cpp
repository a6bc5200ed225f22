#include "metric_sdr/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "metric_sdr/errors.hpp"
#include "metric_sdr/linalg.hpp"
#include "metric_sdr/parallel.hpp"
#include "metric_sdr/resampling.hpp"

namespace metric_sdr {

std::string to_string(Method method) {
  switch (method) {
    case Method::Ols: return "ols";
    case Method::SaOls: return "sa-ols";
    case Method::Sir: return "sir";
    case Method::SaSir: return "sa-sir";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "ols") return Method::Ols;
  if (name == "sa-ols") return Method::SaOls;
  if (name == "sir") return Method::Sir;
  if (name == "sa-sir") return Method::SaSir;
  throw ConfigurationError("unknown method '" + name + "'");
}

Standardized standardize(const Eigen::MatrixXd& x) {
  if (x.rows() < 2 || x.cols() < 1) throw InvalidInput("predictor matrix needs n >= 2 and p >= 1");
  if (!x.allFinite()) throw InvalidInput("predictor values must be finite");
  Standardized out;
  out.mean = x.colwise().mean().transpose();
  const Eigen::MatrixXd centered = x.rowwise() - out.mean.transpose();
  Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(x.rows());
  cov = (0.5 * (cov + cov.transpose())).eval();
  out.inv_sqrt_cov = linalg::inv_sqrt(cov, -1.0, &out.floored_eigenvalues);
  out.z = centered * out.inv_sqrt_cov;
  return out;
}

SirSlicing slice_equal_frequency(std::span<const double> y, std::size_t h) {
  const std::size_t n = y.size();
  if (h < 2) throw InvalidParameter("slice count must be >= 2");
  if (n < h) throw InvalidParameter("need at least as many observations as slices");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return y[a] < y[b] || (y[a] == y[b] && a < b);
  });

  // cuts[s] is the first sorted rank of slice s + 1
  std::vector<std::size_t> cuts;
  std::size_t last = 0;
  for (std::size_t s = 1; s < h; ++s) {
    std::size_t b = std::max(s * n / h, last);
    while (b > 0 && b < n && y[order[b]] == y[order[b - 1]]) ++b;
    if (b > last && b < n) {
      cuts.push_back(b);
      last = b;
    }
  }

  SirSlicing out;
  out.slices = cuts.size() + 1;
  out.labels.assign(n, 0);
  out.counts.assign(out.slices, 0);
  std::size_t slice = 0;
  for (std::size_t r = 0; r < n; ++r) {
    while (slice < cuts.size() && r >= cuts[slice]) ++slice;
    out.labels[order[r]] = slice;
    ++out.counts[slice];
  }
  out.proportions.resize(out.slices);
  for (std::size_t s = 0; s < out.slices; ++s)
    out.proportions[s] = static_cast<double>(out.counts[s]) / static_cast<double>(n);
  return out;
}

Eigen::MatrixXd sir_term(const Eigen::MatrixXd& z, std::span<const double> y, std::size_t h,
                         bool* reduced) {
  if (static_cast<std::size_t>(z.rows()) != y.size())
    throw InvalidInput("response length does not match predictor rows");
  const auto slicing = slice_equal_frequency(y, h);
  if (slicing.slices < 2)
    throw SlicingError("response has fewer than 2 distinct slices after tie handling");
  if (reduced) *reduced = slicing.slices < h;

  const Eigen::Index p = z.cols();
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(p, static_cast<Eigen::Index>(slicing.slices));
  for (Eigen::Index i = 0; i < z.rows(); ++i)
    sums.col(static_cast<Eigen::Index>(slicing.labels[static_cast<std::size_t>(i)])) +=
        z.row(i).transpose();

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(p, p);
  for (std::size_t s = 0; s < slicing.slices; ++s) {
    const Eigen::VectorXd mu =
        sums.col(static_cast<Eigen::Index>(s)) / static_cast<double>(slicing.counts[s]);
    m.noalias() += slicing.proportions[s] * (mu * mu.transpose());
  }
  return m;
}

Eigen::VectorXd classical_ols(const Eigen::MatrixXd& z, std::span<const double> y) {
  if (static_cast<std::size_t>(z.rows()) != y.size())
    throw InvalidInput("response length does not match predictor rows");
  const Eigen::Map<const Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(y.size()));
  const Eigen::VectorXd yc = yv.array() - yv.mean();
  return z.transpose() * yc / static_cast<double>(z.rows());
}

namespace {

void check_slices(std::size_t n, std::size_t h) {
  if (h < 2) throw InvalidParameter("slice count must be >= 2");
  if (n < 2 * h)
    throw InvalidParameter("SIR needs n >= 2H (n = " + std::to_string(n) +
                           ", H = " + std::to_string(h) + ")");
}

constexpr std::size_t kChunk = 64;

// Draws projections in fixed-size chunks keyed by their global index k and
// hands each chunk's surrogate responses (one row per projection) to
// `accumulate`. Partials are combined in chunk order, so the sum is identical
// for every thread count.
template <typename Accumulate>
CandidateMatrix accumulate_projections(const Eigen::MatrixXd& z, const DistanceMatrix& d,
                                       const ProjectionOptions& opts, Accumulate&& accumulate) {
  const std::size_t n = d.size();
  if (static_cast<std::size_t>(z.rows()) != n)
    throw InvalidInput("distance matrix size " + std::to_string(n) +
                       " does not match predictor rows " + std::to_string(z.rows()));
  if (opts.count < 1) throw InvalidParameter("projection count must be >= 1");

  const ProjectionStream stream(opts.seed);
  const std::size_t chunks = (opts.count + kChunk - 1) / kChunk;
  const Eigen::Index p = z.cols();
  std::vector<Eigen::MatrixXd> partial(chunks);
  std::vector<std::size_t> reduced(chunks, 0);

  parallel_for(chunks, opts.threads, [&](std::size_t c) {
    const std::size_t first = c * kChunk;
    const std::size_t count = std::min(kChunk, opts.count - first);
    RowMatrix u(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < count; ++r) {
      Engine rng = stream.engine(first + r);
      u.row(static_cast<Eigen::Index>(r)) = sample_unit_vector(n, rng).transpose();
    }
    const RowMatrix surrogate = u * d.entries;
    partial[c] = Eigen::MatrixXd::Zero(p, p);
    accumulate(first, surrogate, partial[c], reduced[c]);
  });

  CandidateMatrix out{Eigen::MatrixXd::Zero(p, p), opts.count, 0};
  for (std::size_t c = 0; c < chunks; ++c) {
    out.m += partial[c];
    out.reduced_slicings += reduced[c];
  }
  out.m /= static_cast<double>(opts.count);
  out.m = (0.5 * (out.m + out.m.transpose())).eval();
  return out;
}

}  // namespace

CandidateMatrix classical_sir(const Eigen::MatrixXd& z, std::span<const double> y,
                              std::size_t h) {
  check_slices(y.size(), h);
  bool reduced = false;
  CandidateMatrix out{sir_term(z, y, h, &reduced), 1, 0};
  out.reduced_slicings = reduced ? 1 : 0;
  return out;
}

CandidateMatrix sa_ols_candidate(const Eigen::MatrixXd& z, const DistanceMatrix& d,
                                 const ProjectionOptions& opts) {
  const double n = static_cast<double>(z.rows());
  return accumulate_projections(
      z, d, opts,
      [&](std::size_t, const RowMatrix& surrogate, Eigen::MatrixXd& acc, std::size_t&) {
        const Eigen::VectorXd means = surrogate.rowwise().mean();
        const RowMatrix centered = surrogate.colwise() - means;
        // row r holds beta(u_r)^T = Cov(z, y^s_r)^T
        const Eigen::MatrixXd betas = centered * z / n;
        for (Eigen::Index r = 0; r < betas.rows(); ++r) {
          const Eigen::VectorXd b = betas.row(r).transpose();
          acc.noalias() += b * b.transpose();
        }
      });
}

CandidateMatrix sa_sir_candidate(const Eigen::MatrixXd& z, const DistanceMatrix& d,
                                 std::size_t h, const ProjectionOptions& opts) {
  check_slices(d.size(), h);
  return accumulate_projections(
      z, d, opts,
      [&](std::size_t first, const RowMatrix& surrogate, Eigen::MatrixXd& acc,
          std::size_t& reduced) {
        for (Eigen::Index r = 0; r < surrogate.rows(); ++r) {
          const std::span<const double> ys(surrogate.row(r).data(),
                                           static_cast<std::size_t>(surrogate.cols()));
          bool was_reduced = false;
          try {
            acc += sir_term(z, ys, h, &was_reduced);
          } catch (const SlicingError& e) {
            throw SlicingError("projection " + std::to_string(first + static_cast<std::size_t>(r)) +
                               ": " + e.what());
          }
          if (was_reduced) ++reduced;
        }
      });
}

Basis extract_basis(const CandidateMatrix& m, const Eigen::MatrixXd& inv_sqrt_cov,
                    std::size_t d) {
  const auto p = static_cast<std::size_t>(m.m.rows());
  if (d < 1 || d > p)
    throw InvalidParameter("dimension d = " + std::to_string(d) + " must lie in 1.." +
                           std::to_string(p));
  if (inv_sqrt_cov.rows() != m.m.rows() || inv_sqrt_cov.cols() != m.m.cols())
    throw InvalidInput("whitening matrix does not match candidate dimension");
  const auto eig = linalg::sym_eigen(m.m);
  return {inv_sqrt_cov * eig.vectors.leftCols(static_cast<Eigen::Index>(d)), eig.values};
}

std::size_t suggest_dimension(const Eigen::VectorXd& eigenvalues) {
  const Eigen::Index p = eigenvalues.size();
  if (p < 2) return 1;
  std::size_t best = 1;
  double best_ratio = -1.0;
  for (Eigen::Index j = 0; j + 1 < p; ++j) {
    const double ratio = std::max(eigenvalues(j), 1e-12) / std::max(eigenvalues(j + 1), 1e-12);
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best = static_cast<std::size_t>(j) + 1;
    }
  }
  return best;
}

std::size_t suggest_dimension(const CandidateMatrix& m) {
  return suggest_dimension(linalg::sym_eigen(m.m).values);
}

FitResult fit(const Eigen::MatrixXd& x, const ResponseSet& y, Method method, std::size_t d,
              const FitOptions& opts) {
  const auto n = static_cast<std::size_t>(x.rows());
  const auto p = static_cast<std::size_t>(x.cols());
  if (n != y.size())
    throw InvalidInput("predictor rows (" + std::to_string(n) + ") and responses (" +
                       std::to_string(y.size()) + ") differ");
  if (d > p)
    throw InvalidParameter("dimension d = " + std::to_string(d) + " exceeds p = " +
                           std::to_string(p));
  if (is_classical(method) && y.kind() != ResponseKind::Scalar)
    throw ConfigurationError("classical " + to_string(method) + " requires scalar responses");
  if (method == Method::Ols && d > 1)
    throw ConfigurationError("OLS not applicable: it recovers a single direction (d = " +
                             std::to_string(d) + ")");

  FitResult out;
  if (n <= p) out.warnings.push_back("n <= p: sample covariance is singular or nearly so");
  const Standardized s = standardize(x);
  if (s.floored_eigenvalues > 0)
    out.warnings.push_back(std::to_string(s.floored_eigenvalues) +
                           " covariance eigenvalue(s) floored during whitening");

  const ProjectionOptions proj{opts.projections, opts.seed, opts.threads};
  const std::span<const double> raw(y.values().data(), n);
  switch (method) {
    case Method::Ols: {
      const Eigen::VectorXd beta = classical_ols(s.z, raw);
      out.candidate = CandidateMatrix{beta * beta.transpose(), 1, 0};
      break;
    }
    case Method::Sir:
      out.candidate = classical_sir(s.z, raw, opts.slices);
      break;
    case Method::SaOls:
      out.candidate = sa_ols_candidate(s.z, distance_matrix(y, opts.metric, opts.threads), proj);
      break;
    case Method::SaSir:
      check_slices(n, opts.slices);
      out.candidate = sa_sir_candidate(s.z, distance_matrix(y, opts.metric, opts.threads),
                                       opts.slices, proj);
      break;
  }
  if (out.candidate.reduced_slicings > 0)
    out.warnings.push_back(std::to_string(out.candidate.reduced_slicings) +
                           " slicing(s) used fewer slices because of ties");

  out.suggested_d = method == Method::Ols ? 1 : suggest_dimension(out.candidate);
  out.basis = extract_basis(out.candidate, s.inv_sqrt_cov, d == 0 ? out.suggested_d : d);
  return out;
}

}  // namespace metric_sdr
