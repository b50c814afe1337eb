#pragma once

#include <span>
#include <vector>

#include "svmkit/dataset.hpp"
#include "svmkit/qp.hpp"
#include "svmkit/training_info.hpp"

namespace svmkit {

// Binary soft-margin classifier as a sparse kernel expansion
//   D(x) = sum_i coef_i K(sv_i, x) + bias,    coef_i = lambda_i y_i,
// keeping only the support vectors.
struct SvcModel {
  KernelSpec kernel;
  std::vector<FeatureVector> support_vectors;
  std::vector<double> coefficients;
  double bias = 0.0;
  int dim = 0;
  TrainingInfo info;

  std::size_t sv_count() const { return support_vectors.size(); }
  double decision_value(const FeatureVector& x) const;
  // Sign of the decision value; an exact zero maps to +1.
  double predict(const FeatureVector& x) const;
};

// Multipliers above this fraction of C count as support vectors.
inline constexpr double kSupportThreshold = 1e-8;

SvcModel train_svc(const Dataset& data, const KernelSpec& kernel, double cost,
                   const SolverConfig& config = {});

// Bias for a feasible multiplier vector: the mean of y_i - sum_j lambda_j
// y_j K(x_j, x_i) over free support vectors; when every multiplier sits at
// a bound, the midpoint of the interval the optimality conditions admit.
double compute_bias(const SvcDualProblem& problem, std::span<const double> lambdas);

struct RiskReport {
  double hinge_risk = 0.0;             // (1/n) sum (1 - y_i f(x_i))_+
  double regularized_objective = 0.0;  // hinge risk + mu |f|^2, mu = 1/(2 C n)
  double misclassification_rate = 0.0;
};
// `cost` overrides the C recorded in the model (needed for loaded models).
RiskReport empirical_risks(const SvcModel& model, const Dataset& data, double cost = 0.0);

// Explicit weight vector of a linear-kernel model.
std::vector<double> linear_weights(const SvcModel& model);

}  // namespace svmkit
