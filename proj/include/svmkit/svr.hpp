#pragma once

#include <vector>

#include "svmkit/dataset.hpp"
#include "svmkit/qp.hpp"
#include "svmkit/training_info.hpp"

namespace svmkit {

// Epsilon-insensitive regressor as a sparse kernel expansion
//   f(x) = sum_i coef_i K(sv_i, x) + bias
// keeping only samples with nonzero dual coefficient; points strictly
// inside the epsilon tube never carry a coefficient.
struct SvrModel {
  KernelSpec kernel;
  std::vector<FeatureVector> support_vectors;
  std::vector<double> coefficients;  // beta_i per support vector
  double bias = 0.0;
  double epsilon = 0.0;
  int dim = 0;
  TrainingInfo info;

  std::size_t sv_count() const { return support_vectors.size(); }
  double predict(const FeatureVector& x) const;
};

SvrModel train_svr(const Dataset& data, const KernelSpec& kernel, double cost,
                   double epsilon, const SolverConfig& config = {});

// (|predicted - target| - epsilon)_+ ; absolute loss at epsilon = 0.
double epsilon_loss(double target, double predicted, double epsilon);

}  // namespace svmkit
