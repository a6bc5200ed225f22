#include "metric_sdr/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "metric_sdr/csv_io.hpp"
#include "metric_sdr/errors.hpp"
#include "metric_sdr/estimators.hpp"
#include "metric_sdr/evaluation.hpp"
#include "metric_sdr/parallel.hpp"
#include "metric_sdr/resampling.hpp"
#include "metric_sdr/simgen.hpp"

namespace metric_sdr::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 1;
constexpr const char* kSeedEnv = "METRIC_SDR_SEED";

struct Common {
  std::uint64_t seed = kDefaultSeed;
  CLI::Option* seed_opt = nullptr;
  unsigned threads = default_threads();
  std::string out;
};

void add_common(CLI::App& cmd, Common& c) {
  c.seed_opt = cmd.add_option("--seed", c.seed, "Master seed (overrides $METRIC_SDR_SEED)");
  cmd.add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  cmd.add_option("--out", c.out, "Output file (stdout when omitted)");
}

std::uint64_t resolve_seed(const Common& c) {
  if (c.seed_opt && c.seed_opt->count() > 0) return c.seed;
  if (const char* env = std::getenv(kSeedEnv); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw InvalidParameter(std::string(kSeedEnv) + " is not an unsigned integer");
    return v;
  }
  return c.seed;
}

// Writes to --out when given, otherwise to the command's stdout stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw InvalidInput("cannot write '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

struct ResponseInput {
  std::string path;
  bool header = false;
  std::string kind = "scalar";
  std::string metric;  // empty: default for kind
  double order = 2.0;
};

void add_response_options(CLI::App& cmd, ResponseInput& r) {
  cmd.add_option("--y", r.path, "Response CSV, one object per row")->required();
  cmd.add_flag("--header", r.header, "Response file has a header row");
  cmd.add_option("--kind", r.kind, "Response kind")
      ->check(CLI::IsMember({"scalar", "vector", "distribution", "functional"}));
  cmd.add_option("--metric", r.metric, "Distance metric")
      ->check(CLI::IsMember({"euclidean", "wasserstein", "dft", "dft-complex"}));
  cmd.add_option("--wasserstein-order", r.order, "Wasserstein order k >= 1");
}

ResponseSet load_responses(const ResponseInput& r) {
  const auto table = csv::read(r.path, r.header);
  if (table.rows.empty()) throw InvalidInput(r.path + ": no response rows");
  const auto kind = parse_response_kind(r.kind);
  const std::size_t width = table.rows.front().size();
  for (std::size_t i = 0; i < table.rows.size(); ++i)
    if (table.rows[i].size() != width)
      throw InvalidInput(r.path + ": response row " + std::to_string(i + 1) + " (line " +
                         std::to_string(table.line_numbers[i]) + ") has " +
                         std::to_string(table.rows[i].size()) + " values, expected " +
                         std::to_string(width));
  if (kind == ResponseKind::Scalar && width != 1)
    throw InvalidInput(r.path + ": scalar responses need exactly one column, found " +
                       std::to_string(width));
  return ResponseSet::from_rows(kind, table.rows);
}

Metric resolve_metric(const ResponseInput& r) {
  const auto kind = parse_response_kind(r.kind);
  return r.metric.empty() ? default_metric(kind) : parse_metric(r.metric, r.order);
}

struct Predictors {
  Eigen::MatrixXd x;
  std::vector<std::string> names;
};

Predictors load_predictors(const std::string& path, const std::string& standardize) {
  const auto table = csv::read(path, true);
  Predictors out{csv::to_matrix(table, path), table.header};
  if (out.names.size() != static_cast<std::size_t>(out.x.cols()))
    throw InvalidInput(path + ": header has " + std::to_string(out.names.size()) +
                       " names for " + std::to_string(out.x.cols()) + " columns");
  if (standardize == "marginal") {
    if (out.x.rows() < 2) throw InvalidInput(path + ": need at least 2 rows");
    for (Eigen::Index j = 0; j < out.x.cols(); ++j) {
      auto col = out.x.col(j);
      const double mean = col.mean();
      const double sd = std::sqrt((col.array() - mean).square().sum() /
                                  static_cast<double>(out.x.rows() - 1));
      if (!(sd > 0.0)) throw InvalidInput(path + ": column '" + out.names[j] + "' is constant");
      col /= sd;
    }
  }
  return out;
}

struct FitFlags {
  std::string x_path;
  std::string method = "sa-ols";
  std::size_t d = 0;
  std::size_t projections = 1000;
  std::size_t slices = 5;
  std::string standardize = "whiten";
};

void add_fit_flags(CLI::App& cmd, FitFlags& f, bool d_required) {
  cmd.add_option("--x", f.x_path, "Predictor CSV with a header row")->required();
  cmd.add_option("--method", f.method, "Estimator")
      ->check(CLI::IsMember({"ols", "sa-ols", "sir", "sa-sir"}));
  auto* d = cmd.add_option("--d", f.d, "Structural dimension");
  if (d_required) d->required();
  cmd.add_option("--projections", f.projections, "Random unit vectors N")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--slices", f.slices, "SIR slice count H")->check(CLI::Range(2, 1000000));
  cmd.add_option("--standardize", f.standardize, "whiten, or marginal to scale columns first")
      ->check(CLI::IsMember({"whiten", "marginal"}));
}

FitOptions make_fit_options(const FitFlags& f, const Metric& metric, std::uint64_t seed,
                            unsigned threads) {
  FitOptions o;
  o.metric = metric;
  o.projections = f.projections;
  o.slices = f.slices;
  o.seed = seed;
  o.threads = threads;
  return o;
}

void check_rows(const Predictors& x, const ResponseSet& y) {
  if (static_cast<std::size_t>(x.x.rows()) != y.size())
    throw InvalidInput("predictor file has " + std::to_string(x.x.rows()) +
                       " rows but response file has " + std::to_string(y.size()));
}

int simulate(const Common& c, const std::string& family, int model, std::size_t n, std::size_t p,
             std::size_t m, const std::vector<std::string>& method_names, std::size_t replicates,
             std::size_t projections, std::size_t slices, const std::string& per_replicate,
             std::ostream& out, std::ostream& err) {
  SimulationSpec spec;
  spec.family = parse_family(family);
  spec.model = model;
  spec.n = n;
  spec.p = p;
  spec.m_or_t = m;
  std::vector<Method> methods;
  for (const auto& name : method_names) methods.push_back(parse_method(name));
  BenchmarkOptions opts{replicates, projections, slices, resolve_seed(c), c.threads};
  for (Method mth : methods) {
    check_applicable(spec, mth);
    if (mth == Method::Sir || mth == Method::SaSir)
      if (n < 2 * slices) throw InvalidParameter("SIR needs n >= 2H");
  }
  const auto result = run_benchmark(spec, methods, opts);

  Sink sink(c.out, out);
  *sink << "family,model,n,p,method,replicates,N,H,mean_delta,se_delta,seed\n";
  std::size_t failed = 0;
  for (const auto& cell : result.cells) {
    failed += cell.failures;
    *sink << to_string(cell.spec.family) << ',' << cell.spec.model << ',' << cell.spec.n << ','
          << cell.spec.p << ',' << to_string(cell.method) << ',' << cell.replicates << ','
          << cell.projections << ',' << cell.slices << ',' << csv::format(cell.mean_delta) << ','
          << csv::format(cell.se_delta) << ',' << opts.seed << '\n';
  }
  if (!per_replicate.empty()) {
    Sink rep(per_replicate, out);
    *rep << "family,model,n,p,method,replicate,delta\n";
    for (const auto& r : result.records) {
      *rep << to_string(spec.family) << ',' << spec.model << ',' << n << ',' << p << ','
           << to_string(r.method) << ',' << r.replicate << ','
           << (r.delta ? csv::format(*r.delta) : std::string("NA")) << '\n';
    }
  }
  if (failed > 0) {
    const std::size_t total = replicates * methods.size();
    err << "warning: " << failed << " of " << total << " fits failed numerically\n";
    if (static_cast<double>(failed) > 0.01 * static_cast<double>(total)) return kPartialFailure;
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Surrogate-assisted sufficient dimension reduction for metric-valued responses",
               "metric-sdr"};
  app.require_subcommand(1);

  // simulate
  Common sim_common;
  std::string family = "euclidean";
  int model = 1;
  std::size_t sim_n = 500, sim_p = 10, sim_m = 0, replicates = 100, sim_projections = 1000,
              sim_slices = 5;
  std::vector<std::string> method_names{"sa-ols"};
  std::string per_replicate;
  bool full = false;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo benchmark on a synthetic model");
  add_common(*sim, sim_common);
  sim->add_option("--family", family, "Model family")
      ->check(CLI::IsMember({"toy", "euclidean", "distributional", "functional"}));
  sim->add_option("--model", model, "Model index within the family");
  sim->add_option("--n", sim_n, "Sample size")->check(CLI::Range(2ul, 100000000ul));
  sim->add_option("--p", sim_p, "Predictor dimension")->check(CLI::PositiveNumber);
  sim->add_option("--m", sim_m, "Per-object sample size / series length (0: model default)");
  sim->add_option("--methods", method_names, "Comma-separated: ols,sa-ols,sir,sa-sir")
      ->delimiter(',')
      ->check(CLI::IsMember({"ols", "sa-ols", "sir", "sa-sir"}));
  sim->add_option("--replicates", replicates, "Monte Carlo replicates")
      ->check(CLI::PositiveNumber);
  sim->add_flag("--full", full, "Use 500 replicates");
  sim->add_option("--projections", sim_projections, "Random unit vectors N")
      ->check(CLI::PositiveNumber);
  sim->add_option("--slices", sim_slices, "SIR slice count H")->check(CLI::Range(2, 1000000));
  sim->add_option("--per-replicate", per_replicate, "Long-format per-replicate CSV");

  // fit
  Common fit_common;
  ResponseInput fit_y;
  FitFlags fit_flags;
  auto* fit_cmd = app.add_subcommand("fit", "Estimate a basis of the central space");
  add_common(*fit_cmd, fit_common);
  add_response_options(*fit_cmd, fit_y);
  add_fit_flags(*fit_cmd, fit_flags, false);

  // distance
  Common dist_common;
  ResponseInput dist_y;
  auto* dist = app.add_subcommand("distance", "Pairwise response distance matrix");
  add_common(*dist, dist_common);
  add_response_options(*dist, dist_y);

  // stability
  Common stab_common;
  ResponseInput stab_y;
  FitFlags stab_flags;
  double fraction = 0.6;
  std::size_t repeats = 100;
  auto* stab = app.add_subcommand("stability", "Subsampling stability of the estimated basis");
  add_common(*stab, stab_common);
  add_response_options(*stab, stab_y);
  add_fit_flags(*stab, stab_flags, true);
  stab->add_option("--fraction", fraction, "Subsample fraction in (0, 1)");
  stab->add_option("--repeats", repeats, "Subsample repetitions")->check(CLI::PositiveNumber);

  // generate
  Common gen_common;
  std::string gen_family = "toy", x_out, y_out;
  int gen_model = 1;
  std::size_t gen_n = 100, gen_p = 2, gen_m = 0;
  double noise_scale = 1.0;
  auto* gen = app.add_subcommand("generate", "Export one synthetic dataset as CSV");
  add_common(*gen, gen_common);
  gen->add_option("--family", gen_family, "Model family")
      ->check(CLI::IsMember({"toy", "euclidean", "distributional", "functional"}));
  gen->add_option("--model", gen_model, "Model index within the family");
  gen->add_option("--n", gen_n, "Sample size")->check(CLI::Range(2ul, 100000000ul));
  gen->add_option("--p", gen_p, "Predictor dimension")->check(CLI::PositiveNumber);
  gen->add_option("--m", gen_m, "Per-object sample size / series length (0: model default)");
  gen->add_option("--noise-scale", noise_scale, "Error-term multiplier")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--x-out", x_out, "Predictor CSV")->required();
  gen->add_option("--y-out", y_out, "Response CSV")->required();

  std::vector<const char*> argv{"metric-sdr"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kSuccess;
    }
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (sim->parsed()) {
      if (full) replicates = 500;
      return simulate(sim_common, family, model, sim_n, sim_p, sim_m, method_names, replicates,
                      sim_projections, sim_slices, per_replicate, out, err);
    }

    if (fit_cmd->parsed()) {
      const auto x = load_predictors(fit_flags.x_path, fit_flags.standardize);
      const auto y = load_responses(fit_y);
      check_rows(x, y);
      const auto opts = make_fit_options(fit_flags, resolve_metric(fit_y),
                                         resolve_seed(fit_common), fit_common.threads);
      const auto result = fit(x.x, y, parse_method(fit_flags.method), fit_flags.d, opts);
      for (const auto& w : result.warnings) err << "warning: " << w << '\n';
      err << "suggested d = " << result.suggested_d << " (largest eigenvalue ratio)\n";
      Sink sink(fit_common.out, out);
      *sink << "# eigenvalues:";
      for (Eigen::Index j = 0; j < result.basis.eigenvalues.size(); ++j)
        *sink << (j ? "," : " ") << csv::format(result.basis.eigenvalues(j));
      *sink << '\n';
      const auto& b = result.basis.vectors;
      for (Eigen::Index i = 0; i < b.rows(); ++i) {
        for (Eigen::Index j = 0; j < b.cols(); ++j) *sink << csv::format(b(i, j)) << ',';
        *sink << x.names[static_cast<std::size_t>(i)] << '\n';
      }
      return kSuccess;
    }

    if (dist->parsed()) {
      const auto y = load_responses(dist_y);
      const auto d = distance_matrix(y, resolve_metric(dist_y), dist_common.threads);
      Sink sink(dist_common.out, out);
      csv::write_matrix(*sink, d.entries);
      return kSuccess;
    }

    if (stab->parsed()) {
      if (!(fraction > 0.0 && fraction < 1.0))
        throw InvalidParameter("--fraction must lie strictly between 0 and 1");
      const auto x = load_predictors(stab_flags.x_path, stab_flags.standardize);
      const auto y = load_responses(stab_y);
      check_rows(x, y);
      const std::uint64_t seed = resolve_seed(stab_common);
      const auto opts =
          make_fit_options(stab_flags, resolve_metric(stab_y), seed, stab_common.threads);
      const auto result = stability_measure(x.x, y, parse_method(stab_flags.method), stab_flags.d,
                                            fraction, repeats, derive_seed(seed, 0x5ab), opts);
      Sink sink(stab_common.out, out);
      *sink << "mean,se,repeats,fraction\n"
            << csv::format(result.mean) << ',' << csv::format(result.se) << ',' << repeats << ','
            << csv::format(fraction) << '\n';
      return kSuccess;
    }

    if (gen->parsed()) {
      SimulationSpec spec;
      spec.family = parse_family(gen_family);
      spec.model = gen_model;
      spec.n = gen_n;
      spec.p = gen_p;
      spec.m_or_t = gen_m;
      spec.seed = resolve_seed(gen_common);
      spec.noise_scale = noise_scale;
      const auto data = generate(spec);
      Sink xs(x_out, out);
      for (Eigen::Index j = 0; j < data.x.cols(); ++j) *xs << (j ? ",x" : "x") << j + 1;
      *xs << '\n';
      csv::write_matrix(*xs, data.x);
      Sink ys(y_out, out);
      if (!data.y.times().empty()) {
        *ys << "# times:";
        for (std::size_t t = 0; t < data.y.times().size(); ++t)
          *ys << (t ? "," : " ") << csv::format(data.y.times()[t]);
        *ys << '\n';
      }
      csv::write_matrix(*ys, data.y.values());
      return kSuccess;
    }
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kPartialFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace metric_sdr::cli
