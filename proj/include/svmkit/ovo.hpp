#pragma once

#include <vector>

#include "svmkit/svc.hpp"

namespace svmkit {

// One-against-one multiclass classifier: one binary model per unordered
// class pair, predictions by majority vote.
struct PairwiseModel {
  double positive_class = 0.0;  // decision value > 0 votes for this class
  double negative_class = 0.0;
  SvcModel model;
};

struct ClassVote {
  double label = 0.0;
  int votes = 0;
  double score = 0.0;  // sum of |decision value| over the pairwise wins
};

struct MulticlassModel {
  std::vector<double> classes;  // distinct labels, ascending
  std::vector<PairwiseModel> pairs;
  int dim = 0;

  std::size_t class_count() const { return classes.size(); }
  // One entry per class, in class order; votes sum to pairs.size().
  std::vector<ClassVote> tally(const FeatureVector& x) const;
  // Most voted class. Ties break on the larger score, then class order.
  double predict(const FeatureVector& x) const;
};

MulticlassModel train_ovo(const Dataset& data, const KernelSpec& kernel, double cost,
                          const SolverConfig& config = {});

}  // namespace svmkit
