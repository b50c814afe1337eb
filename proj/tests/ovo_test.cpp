#include "svmkit/ovo.hpp"

#include <cstdio>

#include "doctest.h"
#include "svmkit/generators.hpp"
#include "svmkit/model_io.hpp"
#include "test_util.hpp"

using namespace svmkit;
using testutil::vec2;

namespace {

Dataset three_blobs(std::uint64_t seed, std::size_t per_class = 60) {
  BlobSpec spec;
  spec.classes = {{{0.0, 0.0}, per_class, 1.0},
                  {{12.0, 0.0}, per_class, 2.0},
                  {{0.0, 12.0}, per_class, 3.0}};
  spec.seed = seed;
  return gen_blobs(spec);
}

// Pairwise model with a constant decision value; lets a test pin the vote
// pattern exactly.
PairwiseModel constant_pair(double pos, double neg, double decision) {
  PairwiseModel pw;
  pw.positive_class = pos;
  pw.negative_class = neg;
  pw.model.kernel = KernelSpec::linear();
  pw.model.bias = decision;
  pw.model.dim = 2;
  return pw;
}

MulticlassModel cycle_model(double d12, double d23, double d13) {
  MulticlassModel model;
  model.classes = {1.0, 2.0, 3.0};
  model.dim = 2;
  model.pairs = {constant_pair(1, 2, d12), constant_pair(1, 3, d13),
                 constant_pair(2, 3, d23)};
  return model;
}

}  // namespace

TEST_CASE("two classes reduce to the plain binary classifier") {
  Rng rng(109);
  BlobSpec spec;
  spec.classes = {{{0.0, 0.0}, 40, -1.0}, {{5.0, 5.0}, 40, +1.0}};
  spec.seed = 7;
  Dataset data = gen_blobs(spec);
  MulticlassModel ovo = train_ovo(data, KernelSpec::linear(), 1.0);
  SvcModel svc = train_svc(data, KernelSpec::linear(), 1.0);
  CHECK(ovo.pairs.size() == 1);
  for (int k = 0; k < 1000; ++k) {
    const auto probe =
        FeatureVector::dense({10.0 * rng.uniform() - 2.0, 10.0 * rng.uniform() - 2.0});
    double vote = ovo.predict(probe);
    double binary = svc.predict(probe);
    // Classes sort ascending, so the pairwise +1 side is class -1.
    CHECK(vote == binary);
  }
}

TEST_CASE("three classes train one model per unordered pair") {
  Dataset data = three_blobs(3);
  MulticlassModel model = train_ovo(data, KernelSpec::linear(), 1.0);
  CHECK(model.classes == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(model.pairs.size() == 3);
  // Well-separated blobs classify their own training set perfectly.
  for (std::size_t i = 0; i < data.size(); ++i) {
    CHECK(model.predict(data.samples[i]) == data.labels[i]);
  }
}

TEST_CASE("every prediction casts one vote per pairwise model") {
  Dataset data = three_blobs(5);
  MulticlassModel model = train_ovo(data, KernelSpec::gaussian(30.0), 1.0);
  Rng rng(113);
  for (int k = 0; k < 50; ++k) {
    const auto probe =
        FeatureVector::dense({24.0 * rng.uniform() - 6.0, 24.0 * rng.uniform() - 6.0});
    int votes = 0;
    for (const auto& cv : model.tally(probe)) votes += cv.votes;
    CHECK(votes == 3);
  }
}

TEST_CASE("strict majorities win") {
  // 1v2 -> 1, 1v3 -> 1, 2v3 -> 2: class 1 holds two votes.
  MulticlassModel model = cycle_model(+0.4, +0.2, +0.9);
  CHECK(model.predict(vec2(0, 0)) == 1.0);
}

TEST_CASE("three-way vote cycles resolve by total confidence, then class order") {
  SUBCASE("largest summed |decision| wins") {
    // 1v2 -> 1 (0.3), 2v3 -> 2 (0.2), 1v3 -> 3 (0.4): one vote each.
    MulticlassModel model = cycle_model(+0.3, +0.2, -0.4);
    CHECK(model.predict(vec2(0, 0)) == 3.0);
    MulticlassModel other = cycle_model(+0.3, +0.2, -0.25);
    CHECK(other.predict(vec2(0, 0)) == 1.0);
  }
  SUBCASE("exact score ties fall back to class order") {
    MulticlassModel model = cycle_model(+0.3, +0.3, -0.3);
    CHECK(model.predict(vec2(0, 0)) == 1.0);
  }
  SUBCASE("the outcome is stable across repeated evaluation") {
    MulticlassModel model = cycle_model(+0.3, +0.2, -0.4);
    const double first = model.predict(vec2(0.1, -0.2));
    for (int k = 0; k < 100; ++k) CHECK(model.predict(vec2(0.1, -0.2)) == first);
  }
}

TEST_CASE("relabeling classes permutes predictions on clear points") {
  Dataset data = three_blobs(11);
  MulticlassModel base = train_ovo(data, KernelSpec::linear(), 1.0);
  // 1 -> 5, 2 -> 1, 3 -> 9.
  auto permute = [](double label) { return label == 1.0 ? 5.0 : label == 2.0 ? 1.0 : 9.0; };
  Dataset relabeled = data;
  for (double& y : relabeled.labels) y = permute(y);
  MulticlassModel mapped = train_ovo(relabeled, KernelSpec::linear(), 1.0);
  Rng rng(127);
  for (int k = 0; k < 200; ++k) {
    const auto probe =
        FeatureVector::dense({18.0 * rng.uniform() - 3.0, 18.0 * rng.uniform() - 3.0});
    auto tally = base.tally(probe);
    int best_votes = 0, runner_up = 0;
    for (const auto& cv : tally) {
      if (cv.votes >= best_votes) {
        runner_up = best_votes;
        best_votes = cv.votes;
      } else {
        runner_up = std::max(runner_up, cv.votes);
      }
    }
    if (best_votes == runner_up) continue;  // skip vote ties near boundaries
    CHECK(mapped.predict(probe) == permute(base.predict(probe)));
  }
}

TEST_CASE("a trained waveform pairwise problem meets its stopping tolerance") {
  Dataset wave = gen_waveform({300, 17});
  Dataset pair_data;
  for (std::size_t i = 0; i < wave.size(); ++i) {
    if (wave.labels[i] == 1.0) pair_data.push_back(wave.samples[i], +1.0);
    if (wave.labels[i] == 2.0) pair_data.push_back(wave.samples[i], -1.0);
  }
  SvcDualProblem dual;
  dual.gram = std::make_shared<GramMatrix>(
      gram(KernelSpec::gaussian(200.0), pair_data.samples));
  dual.labels = pair_data.labels;
  dual.cost = 1.0;
  SolverConfig config;  // default tolerance
  DualSolution s = solve_svc_dual(dual, config);
  CHECK(kkt_report(dual, s).max_violation <= config.tolerance);
}

TEST_CASE("multiclass training rejects fewer than two classes") {
  Dataset data;
  data.push_back(vec2(0, 0), 1.0);
  data.push_back(vec2(1, 1), 1.0);
  CHECK_THROWS_AS(train_ovo(data, KernelSpec::linear(), 1.0), std::invalid_argument);
}

TEST_CASE("one-against-one model files round-trip predictions") {
  Dataset data = three_blobs(13);
  MulticlassModel model = train_ovo(data, KernelSpec::gaussian(30.0), 1.0);
  const std::string path = "ovo_roundtrip_test.model";
  save_model(model, path);
  AnyModel loaded = load_model(path);
  const auto& back = std::get<MulticlassModel>(loaded);
  CHECK(back.classes == model.classes);
  CHECK(back.pairs.size() == model.pairs.size());
  Rng rng(131);
  for (int k = 0; k < 200; ++k) {
    const auto probe =
        FeatureVector::dense({24.0 * rng.uniform() - 6.0, 24.0 * rng.uniform() - 6.0});
    CHECK(back.predict(probe) == model.predict(probe));
  }
  std::remove(path.c_str());
}
