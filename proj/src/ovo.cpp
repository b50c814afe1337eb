#include "svmkit/ovo.hpp"

#include <algorithm>
#include <cmath>

namespace svmkit {

std::vector<ClassVote> MulticlassModel::tally(const FeatureVector& x) const {
  std::vector<ClassVote> result(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) result[c].label = classes[c];
  for (const PairwiseModel& pw : pairs) {
    const double d = pw.model.decision_value(x);
    const double winner = d >= 0.0 ? pw.positive_class : pw.negative_class;
    for (ClassVote& cv : result) {
      if (cv.label == winner) {
        cv.votes += 1;
        cv.score += std::abs(d);
        break;
      }
    }
  }
  return result;
}

double MulticlassModel::predict(const FeatureVector& x) const {
  if (pairs.empty()) throw std::invalid_argument("multiclass model has no pairwise models");
  std::vector<ClassVote> result = tally(x);
  const ClassVote* best = &result.front();
  for (const ClassVote& cv : result) {
    if (cv.votes > best->votes || (cv.votes == best->votes && cv.score > best->score)) {
      best = &cv;  // earlier classes win exact ties by being visited first
    }
  }
  return best->label;
}

MulticlassModel train_ovo(const Dataset& data, const KernelSpec& kernel, double cost,
                          const SolverConfig& config) {
  data.validate();
  std::vector<double> classes = data.labels;
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  if (classes.size() < 2) {
    throw std::invalid_argument("multiclass training needs at least two classes");
  }

  MulticlassModel model;
  model.classes = classes;
  model.dim = data.dim;
  for (std::size_t a = 0; a < classes.size(); ++a) {
    for (std::size_t b = a + 1; b < classes.size(); ++b) {
      Dataset pair_data;
      for (std::size_t i = 0; i < data.size(); ++i) {
        if (data.labels[i] == classes[a]) {
          pair_data.push_back(data.samples[i], 1.0);
        } else if (data.labels[i] == classes[b]) {
          pair_data.push_back(data.samples[i], -1.0);
        }
      }
      pair_data.dim = data.dim;
      PairwiseModel pw;
      pw.positive_class = classes[a];
      pw.negative_class = classes[b];
      pw.model = train_svc(pair_data, kernel, cost, config);
      model.pairs.push_back(std::move(pw));
    }
  }
  return model;
}

}  // namespace svmkit
