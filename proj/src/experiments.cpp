#include "svmkit/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "svmkit/detail/num_text.hpp"
#include "svmkit/generators.hpp"
#include "svmkit/ovo.hpp"

namespace svmkit::experiments {

namespace {

using detail::format_real;

std::string fixed(double v, int precision = 4) {
  std::ostringstream out;
  out.precision(precision);
  out << std::fixed << v;
  return out.str();
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& xs) {
  MeanSe stats;
  const auto n = static_cast<double>(xs.size());
  if (xs.empty()) return stats;
  for (double x : xs) stats.mean += x;
  stats.mean /= n;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - stats.mean) * (x - stats.mean);
    stats.se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return stats;
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

Dataset separable_blobs(std::uint64_t seed, std::size_t per_class = 1000) {
  BlobSpec spec;
  spec.classes = {{{0.0, 0.0}, per_class, -1.0}, {{10.0, 10.0}, per_class, +1.0}};
  spec.seed = seed;
  return gen_blobs(spec);
}

Dataset overlap_blobs(std::uint64_t seed, std::size_t per_class = 500) {
  BlobSpec spec;
  spec.classes = {{{0.0, 0.0}, per_class, -1.0}, {{4.0, 0.0}, per_class, +1.0}};
  spec.seed = seed;
  return gen_blobs(spec);
}

double binary_error(const SvcModel& model, const Dataset& data) {
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (model.predict(data.samples[i]) != data.labels[i]) ++wrong;
  }
  return 100.0 * static_cast<double>(wrong) / static_cast<double>(data.size());
}

double multiclass_error(const MulticlassModel& model, const Dataset& data) {
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (model.predict(data.samples[i]) != data.labels[i]) ++wrong;
  }
  return 100.0 * static_cast<double>(wrong) / static_cast<double>(data.size());
}

struct Harness {
  ExperimentReport report;
  SolverConfig solver;
  const ExperimentConfig& cfg;

  Harness(const ExperimentConfig& config, double default_tolerance, int default_reps)
      : cfg(config) {
    report.id = config.id;
    solver.tolerance = config.tolerance.value_or(default_tolerance);
    reps = config.replications > 0 ? config.replications : default_reps;
    note("seed=" + std::to_string(config.seed));
    note("replications=" + std::to_string(reps));
    note("tolerance=" + format_real(solver.tolerance));
    note(std::string("rng=") + kRngId);
  }

  int reps = 1;

  void note(const std::string& text) { report.notes.push_back(text); }

  void check(const std::string& name, bool ok, const std::string& detail) {
    report.checks.push_back({name, ok, detail});
  }

  void check_band(const std::string& name, double value, double lo, double hi) {
    check(name, value >= lo && value <= hi,
          fixed(value) + " expected in [" + fixed(lo) + ", " + fixed(hi) + "]");
  }

  void aggregate(const std::string& name, const std::vector<double>& xs) {
    MeanSe stats = mean_se(xs);
    report.aggregates.push_back(name + ": mean=" + fixed(stats.mean) +
                                " se=" + fixed(stats.se));
  }
};

void run_blobs_separable(Harness& h) {
  const double cost = h.cfg.cost.value_or(1.0);
  const KernelSpec kernel = h.cfg.kernel.value_or(KernelSpec::linear());
  h.note("kernel=" + kernel.to_string());
  h.note("cost=" + format_real(cost));
  h.report.columns = {"rep", "seed", "nsv", "train_error_pct", "line_x", "line_y", "line_c"};

  const bool linear = kernel.kind == KernelKind::linear;
  std::vector<double> nsvs, errors, line_y, line_c;
  for (int r = 0; r < h.reps; ++r) {
    const std::uint64_t seed_r = derive_seed(h.cfg.seed, static_cast<std::uint64_t>(r));
    Dataset data = separable_blobs(seed_r);
    SvcModel model = train_svc(data, kernel, cost, h.solver);
    const double err = binary_error(model, data);
    std::string ly = "-", lc = "-";
    if (linear) {
      Line2d line = scale_x_to_one(hyperplane_line(model));
      line_y.push_back(line.b);
      line_c.push_back(line.c);
      ly = fixed(line.b, 3);
      lc = fixed(line.c, 3);
    }
    nsvs.push_back(static_cast<double>(model.sv_count()));
    errors.push_back(err);
    h.report.rows.push_back({std::to_string(r), std::to_string(seed_r),
                             std::to_string(model.sv_count()), fixed(err, 2),
                             linear ? fixed(1.0, 3) : "-", ly, lc});
    if (h.cfg.verbose) h.note("rep " + std::to_string(r) + ": " + model.info.summary());
  }
  h.aggregate("nsv", nsvs);
  h.aggregate("train_error_pct", errors);
  if (linear) {
    h.aggregate("line_y", line_y);
    h.aggregate("line_c", line_c);
  } else {
    h.note("nonlinear kernel: hyperplane reporting skipped");
  }

  h.check("train error 0% on every replication",
          std::all_of(errors.begin(), errors.end(), [](double e) { return e == 0.0; }),
          "max " + fixed(*std::max_element(errors.begin(), errors.end())) + "%");
  h.check("support vectors <= 10 on every replication",
          std::all_of(nsvs.begin(), nsvs.end(), [](double n) { return n <= 10.0; }),
          "max " + fixed(*std::max_element(nsvs.begin(), nsvs.end()), 0));
  h.check("median support-vector count <= 5", median(nsvs) <= 5.0,
          "median " + fixed(median(nsvs), 1));
  if (linear) {
    // Individual replications hang on two or three support points and
    // scatter well beyond the band; the replication mean is the stable
    // quantity to compare.
    const double mean_y = mean_se(line_y).mean;
    const double mean_c = mean_se(line_c).mean;
    h.check("x-normalized mean line within 15% of x + 0.95y - 9.9 = 0",
            std::abs(mean_y - 0.95) <= 0.15 * 0.95 && std::abs(mean_c + 9.9) <= 0.15 * 9.9,
            "mean y=" + fixed(mean_y, 3) + " c=" + fixed(mean_c, 3));
  }
}

void run_c_sweep(Harness& h) {
  const KernelSpec kernel = h.cfg.kernel.value_or(KernelSpec::linear());
  std::vector<double> costs = h.cfg.cost_sweep;
  if (costs.empty()) costs = {1.0, 0.01, 1e-5};
  h.note("kernel=" + kernel.to_string());
  {
    std::string cs = "costs=";
    for (double c : costs) cs += format_real(c) + " ";
    h.note(cs);
  }
  h.report.columns = {"cost", "nsv", "sv_fraction_pct"};

  Dataset data = separable_blobs(derive_seed(h.cfg.seed, 0));
  std::vector<double> nsvs;
  double last_fraction = 0.0;
  for (double cost : costs) {
    SvcModel model = train_svc(data, kernel, cost, h.solver);
    const double fraction =
        100.0 * static_cast<double>(model.sv_count()) / static_cast<double>(data.size());
    nsvs.push_back(static_cast<double>(model.sv_count()));
    last_fraction = fraction;
    h.report.rows.push_back(
        {format_real(cost), std::to_string(model.sv_count()), fixed(fraction, 2)});
    if (h.cfg.verbose) h.note("C=" + format_real(cost) + ": " + model.info.summary());
  }
  bool increasing = true;
  for (std::size_t k = 1; k < nsvs.size(); ++k) increasing &= nsvs[k] > nsvs[k - 1];
  h.check("support-vector count strictly increases as C shrinks", increasing, "");
  h.check_band("final support-vector fraction (%)", last_fraction, 83.0, 94.0);
}

void run_blobs_overlap(Harness& h) {
  const double cost = h.cfg.cost.value_or(2.0);
  const KernelSpec kernel = h.cfg.kernel.value_or(KernelSpec::linear());
  h.note("kernel=" + kernel.to_string());
  h.note("cost=" + format_real(cost));
  h.report.columns = {"rep", "seed", "test_error_pct", "sv_fraction_pct",
                      "line_x", "line_y"};

  std::vector<double> errors, fractions, line_x, line_y;
  for (int r = 0; r < h.reps; ++r) {
    const std::uint64_t train_seed = derive_seed(h.cfg.seed, 1000 + static_cast<std::uint64_t>(r));
    const std::uint64_t test_seed = derive_seed(h.cfg.seed, 2000 + static_cast<std::uint64_t>(r));
    Dataset train = overlap_blobs(train_seed);
    Dataset test = overlap_blobs(test_seed, 10000);
    SvcModel model = train_svc(train, kernel, cost, h.solver);
    const double err = binary_error(model, test);
    const double fraction =
        100.0 * static_cast<double>(model.sv_count()) / static_cast<double>(train.size());
    Line2d line = scale_constant_to_minus_one(hyperplane_line(model));
    errors.push_back(err);
    fractions.push_back(fraction);
    line_x.push_back(line.a);
    line_y.push_back(line.b);
    h.report.rows.push_back({std::to_string(r), std::to_string(train_seed), fixed(err, 2),
                             fixed(fraction, 2), fixed(line.a, 3), fixed(line.b, 3)});
    if (h.cfg.verbose) h.note("rep " + std::to_string(r) + ": " + model.info.summary());

    h.check_band("test error on 20000 fresh points (%)", err, 1.8, 2.9);
  }
  // Support-vector counts and the fitted line wobble with the sample
  // tails draw by draw; the replication means are the comparable
  // quantities.
  h.check_band("mean support-vector fraction (%)", mean_se(fractions).mean, 4.0, 9.0);
  const double mx = mean_se(line_x).mean, my = mean_se(line_y).mean;
  h.check("constant-normalized mean line near 0.5x + 0y - 1 = 0",
          std::abs(mx - 0.5) <= 0.05 && std::abs(my) <= 0.05,
          "x=" + fixed(mx, 3) + " y=" + fixed(my, 3));
  h.aggregate("test_error_pct", errors);
  h.aggregate("sv_fraction_pct", fractions);
}

void run_blobs_outliers(Harness& h) {
  const double cost = h.cfg.cost.value_or(2.0);
  const KernelSpec kernel = h.cfg.kernel.value_or(KernelSpec::linear());
  h.note("kernel=" + kernel.to_string());
  h.note("cost=" + format_real(cost));
  h.report.columns = {"rep", "seed", "max_decision_delta"};

  for (int r = 0; r < h.reps; ++r) {
    const std::uint64_t seed_r = derive_seed(h.cfg.seed, 3000 + static_cast<std::uint64_t>(r));
    Dataset base = overlap_blobs(seed_r);
    SvcModel before = train_svc(base, kernel, cost, h.solver);

    // Two extra points far on the correct side of the left cloud.
    Dataset augmented = base;
    augmented.push_back(FeatureVector::dense({-6.0, 3.0}), -1.0);
    augmented.push_back(FeatureVector::dense({-7.0, -2.0}), -1.0);
    SvcModel after = train_svc(augmented, kernel, cost, h.solver);

    double max_delta = 0.0;
    for (int gx = 0; gx < 10; ++gx) {
      for (int gy = 0; gy < 10; ++gy) {
        const double x = -2.0 + 8.0 * gx / 9.0;
        const double y = -4.5 + 9.0 * gy / 9.0;
        FeatureVector probe = FeatureVector::dense({x, y});
        max_delta = std::max(max_delta, std::abs(before.decision_value(probe) -
                                                 after.decision_value(probe)));
      }
    }
    h.report.rows.push_back(
        {std::to_string(r), std::to_string(seed_r), format_real(max_delta)});
    h.check("decision values unchanged by far-side outliers (<= 1e-6)",
            max_delta <= 1e-6, "max delta " + format_real(max_delta));
  }
}

void run_waveform(Harness& h) {
  const double cost = h.cfg.cost.value_or(1.0);
  const KernelSpec kernel = h.cfg.kernel.value_or(KernelSpec::gaussian(200.0));
  h.note("kernel=" + kernel.to_string());
  h.note("cost=" + format_real(cost));
  h.report.columns = {"rep", "seed", "train_error_pct", "test_error_pct"};

  std::vector<double> train_errors, test_errors;
  for (int r = 0; r < h.reps; ++r) {
    const std::uint64_t seed_r = derive_seed(h.cfg.seed, static_cast<std::uint64_t>(r));
    Dataset all = gen_waveform({5000, seed_r});
    auto [train, test] = split_count(all, 400, derive_seed(seed_r, 1));
    MulticlassModel model = train_ovo(train, kernel, cost, h.solver);
    const double train_err = multiclass_error(model, train);
    const double test_err = multiclass_error(model, test);
    train_errors.push_back(train_err);
    test_errors.push_back(test_err);
    h.report.rows.push_back({std::to_string(r), std::to_string(seed_r),
                             fixed(train_err, 2), fixed(test_err, 2)});
  }
  h.aggregate("train_error_pct", train_errors);
  h.aggregate("test_error_pct", test_errors);
  h.check_band("mean test error (%)", mean_se(test_errors).mean, 13.0, 16.5);
  h.check_band("mean train error (%)", mean_se(train_errors).mean, 9.0, 13.0);
}

}  // namespace

bool ExperimentReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.passed; });
}

std::string ExperimentReport::table() const {
  std::ostringstream out;
  for (std::size_t k = 0; k < columns.size(); ++k) {
    out << (k ? "\t" : "") << columns[k];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "\t" : "") << row[k];
    out << '\n';
  }
  return out.str();
}

std::string ExperimentReport::summary() const {
  std::ostringstream out;
  out << "experiment " << id << ": " << (passed() ? "PASS" : "FAIL") << '\n';
  for (const auto& n : notes) out << "  # " << n << '\n';
  for (const auto& a : aggregates) out << "  " << a << '\n';
  for (const auto& c : checks) {
    out << "  [" << (c.passed ? "ok" : "FAIL") << "] " << c.name;
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << '\n';
  }
  return out.str();
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  if (config.id == "blobs-separable") {
    Harness h(config, 1e-4, 20);
    run_blobs_separable(h);
    return h.report;
  }
  if (config.id == "c-sweep") {
    Harness h(config, 1e-4, 1);
    run_c_sweep(h);
    return h.report;
  }
  if (config.id == "blobs-overlap") {
    Harness h(config, 1e-3, 3);
    run_blobs_overlap(h);
    return h.report;
  }
  if (config.id == "blobs-outliers") {
    // Both solves must sit within a hair of the shared optimum for the
    // probe-grid comparison to see "unchanged" hyperplanes.
    Harness h(config, 1e-8, 1);
    run_blobs_outliers(h);
    return h.report;
  }
  if (config.id == "waveform") {
    Harness h(config, 1e-3, 10);
    run_waveform(h);
    return h.report;
  }
  throw std::invalid_argument("unknown experiment '" + config.id + "'");
}

Line2d hyperplane_line(const SvcModel& model) {
  if (model.dim != 2) throw std::invalid_argument("hyperplane line needs a 2-D model");
  std::vector<double> w = linear_weights(model);
  return {w[0], w[1], model.bias};
}

namespace {
Line2d scaled(const Line2d& line, double divisor, const char* what) {
  if (divisor == 0.0) throw std::invalid_argument(std::string("cannot normalize: ") + what);
  return {line.a / divisor, line.b / divisor, line.c / divisor};
}
}  // namespace

Line2d scale_x_to_one(const Line2d& line) { return scaled(line, line.a, "zero x coefficient"); }
Line2d scale_y_to_one(const Line2d& line) { return scaled(line, line.b, "zero y coefficient"); }
Line2d scale_constant_to_minus_one(const Line2d& line) {
  return scaled(line, -line.c, "zero constant");
}

Dataset gen_two_topic(std::size_t count, int dim, std::uint64_t seed) {
  if (dim < 7) throw std::invalid_argument("two-topic generator needs dim >= 7");
  Rng rng(seed);
  // Class-specific signal blocks at the ends, shared noise block between.
  const int block = dim * 2 / 7;
  const int noise_lo = block + 1, noise_hi = dim - block;
  Dataset data;
  for (std::size_t i = 0; i < count; ++i) {
    const double label = i % 2 == 0 ? 1.0 : -1.0;
    const int signal_lo = label > 0 ? 1 : dim - block + 1;
    std::map<int, double> counts;
    auto draw = [&](int lo, int hi) {
      const double u = rng.uniform();
      // Quadratic skew concentrates mass on the low tokens of the block.
      const int index = lo + static_cast<int>(u * u * (hi - lo + 1));
      counts[std::min(index, hi)] += 1.0;
    };
    for (int k = 0; k < 8; ++k) draw(signal_lo, signal_lo + block - 1);
    for (int k = 0; k < 22; ++k) draw(noise_lo, noise_hi);
    std::vector<int> indices;
    std::vector<double> values;
    for (const auto& [index, value] : counts) {
      indices.push_back(index);
      values.push_back(value);
    }
    data.push_back(FeatureVector::sparse(std::move(indices), std::move(values), dim), label);
  }
  data.dim = dim;
  return data;
}

double nn1_error(const Dataset& train, const Dataset& test) {
  if (train.size() == 0 || test.size() == 0) {
    throw std::invalid_argument("nearest-neighbor baseline needs nonempty sets");
  }
  std::size_t wrong = 0;
  for (std::size_t t = 0; t < test.size(); ++t) {
    double best = std::numeric_limits<double>::infinity();
    double label = 0.0;
    for (std::size_t i = 0; i < train.size(); ++i) {
      const double d2 = test.samples[t].squared_distance(train.samples[i]);
      if (d2 < best) {
        best = d2;
        label = train.labels[i];
      }
    }
    if (label != test.labels[t]) ++wrong;
  }
  return 100.0 * static_cast<double>(wrong) / static_cast<double>(test.size());
}

}  // namespace svmkit::experiments
