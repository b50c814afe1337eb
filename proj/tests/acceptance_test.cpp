// Acceptance suite: every bundled claim the toolkit must reproduce, one
// test case per criterion, each printing a PASS/FAIL line.

#include <cmath>
#include <cstdio>
#include <string>

#include "doctest.h"
#include "svmkit/experiments.hpp"
#include "svmkit/generators.hpp"
#include "svmkit/ovo.hpp"
#include "svmkit/qp.hpp"
#include "svmkit/svc.hpp"
#include "svmkit/svr.hpp"
#include "test_util.hpp"

using namespace svmkit;

namespace {

void report(int id, const char* name, bool ok) {
  std::printf("[acceptance] criterion %02d %-44s %s\n", id, name, ok ? "PASS" : "FAIL");
  CHECK_MESSAGE(ok, "criterion ", id, " (", name, ")");
}

bool run_named_experiment(const char* id, int reps = 0) {
  experiments::ExperimentConfig config;
  config.id = id;
  config.replications = reps;
  config.seed = 1;
  experiments::ExperimentReport rep = experiments::run_experiment(config);
  for (const auto& check : rep.checks) {
    if (!check.passed) {
      std::printf("    failed band: %s (%s)\n", check.name.c_str(), check.detail.c_str());
    }
  }
  return rep.passed();
}

SolverConfig tight_config(double tol = 1e-8) {
  SolverConfig config;
  config.tolerance = tol;
  return config;
}

}  // namespace

TEST_CASE("criterion 1: separable blobs") {
  report(1, "separable blobs (3-SV line)", run_named_experiment("blobs-separable", 20));
}

TEST_CASE("criterion 2: support vectors grow as C shrinks") {
  report(2, "c-sweep (88.8% support vectors at 1e-5)", run_named_experiment("c-sweep"));
}

TEST_CASE("criterion 3: overlapping blobs near the optimal rule") {
  report(3, "overlapping blobs (2.3% test error)", run_named_experiment("blobs-overlap"));
}

TEST_CASE("criterion 4: far outliers leave the hyperplane unchanged") {
  report(4, "outlier stability (1e-6 probe-grid delta)",
         run_named_experiment("blobs-outliers"));
}

TEST_CASE("criterion 5: waveform one-against-one") {
  report(5, "waveform (14.6% test error band)", run_named_experiment("waveform", 10));
}

TEST_CASE("criterion 6: pair solver matches the projected-gradient oracle") {
  Rng rng(2024);
  bool ok = true;
  for (int trial = 0; trial < 100; ++trial) {
    testutil::SmallProblem p = testutil::random_small_problem(rng);
    SvcDualProblem dual = testutil::to_dual(p);
    DualSolution fast = solve_svc_dual(dual, tight_config());
    DualSolution oracle = brute_force_dual(dual);
    ok &= std::abs(fast.objective - oracle.objective) <=
          1e-6 * (1.0 + std::abs(fast.objective));
    ok &= kkt_report(dual, fast).max_violation <= 1e-8 + 1e-12;
  }
  report(6, "dual-solver oracle equivalence (100 instances)", ok);
}

TEST_CASE("criterion 7: analytic fixtures") {
  bool ok = true;

  // Symmetric pair: multipliers 1/2, zero bias, identity decision line.
  testutil::SmallProblem pair;
  pair.kernel = KernelSpec::linear();
  pair.cost = 10.0;
  pair.data.push_back(FeatureVector::dense({-1.0}), -1.0);
  pair.data.push_back(FeatureVector::dense({+1.0}), +1.0);
  DualSolution s = solve_svc_dual(testutil::to_dual(pair), tight_config());
  ok &= std::abs(s.lambdas[0] - 0.5) <= 1e-6;
  ok &= std::abs(s.lambdas[1] - 0.5) <= 1e-6;
  ok &= std::abs(s.bias) <= 1e-6;
  for (double x : {-1.5, -0.25, 0.0, 0.4, 2.0}) {
    ok &= std::abs(testutil::decision_from(pair, s, FeatureVector::dense({x})) - x) <= 1e-6;
  }

  // Xor corners under (1 + x.y)^2: all four support vectors, correct signs.
  testutil::SmallProblem xp;
  xp.kernel = KernelSpec::polynomial(1.0, 2);
  xp.cost = 10.0;
  xp.data.push_back(testutil::vec2(1, 1), +1.0);
  xp.data.push_back(testutil::vec2(-1, -1), +1.0);
  xp.data.push_back(testutil::vec2(1, -1), -1.0);
  xp.data.push_back(testutil::vec2(-1, 1), -1.0);
  DualSolution xs = solve_svc_dual(testutil::to_dual(xp), tight_config());
  for (double l : xs.lambdas) ok &= l > 1e-8 * xp.cost;
  for (std::size_t i = 0; i < 4; ++i) {
    const double d = testutil::decision_from(xp, xs, xp.data.samples[i]);
    ok &= (d > 0) == (xp.data.labels[i] > 0);
  }
  ok &= testutil::decision_from(xp, xs, testutil::vec2(0.5, 0.5)) > 0.0;
  ok &= testutil::decision_from(xp, xs, testutil::vec2(0.5, -0.5)) < 0.0;

  report(7, "analytic two-point and xor fixtures", ok);
}

TEST_CASE("criterion 8: regression fixtures") {
  bool ok = true;

  // Flattest line through the half-width-1/2 tube around (0,1) and (1,3).
  Dataset two;
  two.push_back(FeatureVector::dense({0.0}), 1.0);
  two.push_back(FeatureVector::dense({1.0}), 3.0);
  SvrModel flat = train_svr(two, KernelSpec::linear(), 100.0, 0.5, tight_config());
  ok &= std::abs(flat.predict(FeatureVector::dense({0.0})) - 1.5) <= 1e-4;
  ok &= std::abs(flat.predict(FeatureVector::dense({1.0})) - 2.5) <= 1e-4;

  // Constant targets: empty expansion, bias equal to the constant.
  Dataset constant;
  for (int i = 0; i < 6; ++i) {
    constant.push_back(FeatureVector::dense({static_cast<double>(i)}), -1.5);
  }
  SvrModel flat0 = train_svr(constant, KernelSpec::gaussian(1.0), 10.0, 0.25);
  ok &= flat0.sv_count() == 0;
  ok &= std::abs(flat0.bias + 1.5) <= 1e-12;

  // Random linear-kernel instances against the direct primal minimizer,
  // plus tube complementarity on every trained model.
  Rng rng(4096);
  const double tol = 1e-8;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + rng.below(4);
    std::vector<std::vector<double>> coords;
    Dataset data;
    for (std::size_t i = 0; i < n; ++i) {
      coords.push_back(testutil::random_dense(rng, 2));
      data.push_back(FeatureVector::dense(coords[i]), rng.normal());
    }
    const double cost = trial % 2 ? 1.0 : 10.0;
    const double eps = trial % 3 ? 0.1 : 0.0;
    SvrModel model = train_svr(data, KernelSpec::linear(), cost, eps, tight_config(tol));

    double norm2 = 0.0, slack = 0.0;
    for (std::size_t i = 0; i < model.sv_count(); ++i) {
      for (std::size_t j = 0; j < model.sv_count(); ++j) {
        norm2 += model.coefficients[i] * model.coefficients[j] *
                 model.support_vectors[i].dot(model.support_vectors[j]);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      slack += std::max(std::abs(model.predict(data.samples[i]) - data.labels[i]) - eps, 0.0);
    }
    const double primal = 0.5 * norm2 + cost * slack;
    const double oracle = testutil::svr_primal_minimum(coords, data.labels, cost, eps);
    ok &= std::abs(primal - oracle) <= 1e-4;

    for (std::size_t i = 0; i < model.sv_count(); ++i) {
      std::size_t j = 0;
      while (j < n && !(data.samples[j] == model.support_vectors[i])) ++j;
      const double residual = std::abs(model.predict(model.support_vectors[i]) - data.labels[j]);
      ok &= residual >= eps - 10 * tol;
    }
  }

  report(8, "svr fixtures and primal-oracle agreement", ok);
}

TEST_CASE("criterion 9: regularized objective is locally minimal") {
  Rng rng(8192);
  bool ok = true;
  for (int trial = 0; trial < 20; ++trial) {
    testutil::SmallProblem p = testutil::random_small_problem(rng);
    SvcModel model = train_svc(p.data, p.kernel, p.cost, tight_config());
    RiskReport trained = empirical_risks(model, p.data);

    double scale2 = model.bias * model.bias;
    for (double c : model.coefficients) scale2 += c * c;
    const double scale = std::sqrt(scale2);
    for (int k = 0; k < 50; ++k) {
      // Direction on the unit sphere over (coefficients, bias).
      std::vector<double> dir(model.coefficients.size() + 1);
      double norm2 = 0.0;
      for (double& d : dir) {
        d = rng.normal();
        norm2 += d * d;
      }
      const double inv = 1.0 / std::sqrt(norm2);
      SvcModel perturbed = model;
      for (std::size_t i = 0; i < perturbed.coefficients.size(); ++i) {
        perturbed.coefficients[i] += 1e-2 * scale * dir[i] * inv;
      }
      perturbed.bias += 1e-2 * scale * dir.back() * inv;
      ok &= trained.regularized_objective <=
            empirical_risks(perturbed, p.data).regularized_objective + 1e-12;
    }
  }
  report(9, "hinge + ridge objective beats perturbations", ok);
}

TEST_CASE("criterion 10: sparse two-topic text stand-in") {
  Dataset corpus = experiments::gen_two_topic(1000, 700, 77);
  auto [train, test] = split(corpus, 0.8, 78);
  SvcModel model = train_svc(train, KernelSpec::linear(), 1.0);

  std::size_t train_wrong = 0, test_wrong = 0;
  for (std::size_t i = 0; i < train.size(); ++i) {
    if (model.predict(train.samples[i]) != train.labels[i]) ++train_wrong;
  }
  for (std::size_t i = 0; i < test.size(); ++i) {
    if (model.predict(test.samples[i]) != test.labels[i]) ++test_wrong;
  }
  const double svm_test_error =
      100.0 * static_cast<double>(test_wrong) / static_cast<double>(test.size());
  const double nn_test_error = experiments::nn1_error(train, test);
  std::printf("    svm train 0 errors? %zu; svm test %.2f%% vs 1-nn %.2f%%\n", train_wrong,
              svm_test_error, nn_test_error);
  report(10, "linear svm beats 1-nn on sparse topics",
         train_wrong == 0 && svm_test_error < nn_test_error);
}
