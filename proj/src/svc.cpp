#include "svmkit/svc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

namespace svmkit {

namespace {

// Full Gram matrix up to this order; a bounded row cache beyond it.
constexpr std::size_t kMaterializeLimit = 4000;

void check_dim(int model_dim, const FeatureVector& x) {
  if (x.is_sparse() ? x.dim() > model_dim : x.dim() != model_dim) {
    throw std::invalid_argument("input dimension does not match model dimension");
  }
}

}  // namespace

std::string TrainingInfo::summary() const {
  std::ostringstream out;
  out << "iterations=" << iterations << " kkt_violation=" << kkt_violation
      << " objective=" << dual_objective;
  return out.str();
}

double SvcModel::decision_value(const FeatureVector& x) const {
  check_dim(dim, x);
  double value = 0.0;
  for (std::size_t i = 0; i < support_vectors.size(); ++i) {
    value += coefficients[i] * kernel.eval(support_vectors[i], x);
  }
  return value + bias;
}

double SvcModel::predict(const FeatureVector& x) const {
  return decision_value(x) >= 0.0 ? 1.0 : -1.0;
}

SvcModel train_svc(const Dataset& data, const KernelSpec& kernel, double cost,
                   const SolverConfig& config) {
  data.validate();
  kernel.validate();

  SvcDualProblem problem;
  problem.labels = data.labels;
  problem.cost = cost;
  std::shared_ptr<const KernelMatrix> matrix;
  if (data.size() <= kMaterializeLimit) {
    matrix = std::make_shared<GramMatrix>(gram(kernel, data.samples));
  } else {
    matrix = std::make_shared<CachedKernelMatrix>(kernel, std::span(data.samples),
                                                  config.cache_bytes);
  }
  problem.gram = matrix;

  DualSolution solution = solve_svc_dual(problem, config);

  SvcModel model;
  model.kernel = kernel;
  model.bias = solution.bias;
  model.dim = data.dim;
  const double threshold = kSupportThreshold * cost;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (solution.lambdas[i] > threshold) {
      model.support_vectors.push_back(data.samples[i]);
      model.coefficients.push_back(solution.lambdas[i] * data.labels[i]);
    }
  }
  model.info.cost = cost;
  model.info.tolerance = config.tolerance;
  model.info.sample_count = data.size();
  model.info.iterations = solution.iterations;
  model.info.kkt_violation = solution.max_kkt_violation;
  model.info.dual_objective = solution.objective;
  return model;
}

double compute_bias(const SvcDualProblem& problem, std::span<const double> lambdas) {
  problem.validate();
  const std::size_t n = problem.size();
  if (lambdas.size() != n) {
    throw std::invalid_argument("multiplier count does not match problem order");
  }
  const double threshold = kSupportThreshold * problem.cost;
  bool any_support = false;
  for (double l : lambdas) any_support |= l > threshold;
  if (!any_support) {
    throw std::invalid_argument("all multipliers are zero: degenerate fit has no bias");
  }

  // score_i = y_i - sum_j lambda_j y_j K(x_j, x_i), the per-sample bias estimate.
  std::vector<double> score(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::span<const double> row = problem.gram->row(i);
    double g = 0.0;
    for (std::size_t j = 0; j < n; ++j) g += lambdas[j] * problem.labels[j] * row[j];
    score[i] = problem.labels[i] - g;
  }

  double sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (lambdas[i] > threshold && lambdas[i] < problem.cost - threshold) {
      sum += score[i];
      ++free_count;
    }
  }
  if (free_count > 0) return sum / static_cast<double>(free_count);

  // Movable-up candidates bound the bias from below, movable-down from above.
  double upper = std::numeric_limits<double>::infinity();
  double lower = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const bool can_up = problem.labels[i] > 0 ? lambdas[i] < problem.cost - threshold
                                              : lambdas[i] > threshold;
    const bool can_down = problem.labels[i] > 0 ? lambdas[i] > threshold
                                                : lambdas[i] < problem.cost - threshold;
    if (can_up) lower = std::max(lower, score[i]);
    if (can_down) upper = std::min(upper, score[i]);
  }
  if (!std::isfinite(lower)) return upper;
  if (!std::isfinite(upper)) return lower;
  return 0.5 * (lower + upper);
}

RiskReport empirical_risks(const SvcModel& model, const Dataset& data, double cost) {
  data.validate();
  if (cost <= 0.0) cost = model.info.cost;
  if (!(cost > 0.0)) {
    throw std::invalid_argument("regularized objective needs a positive cost");
  }
  const auto n = static_cast<double>(data.size());
  RiskReport report;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double f = model.decision_value(data.samples[i]);
    const double y = data.labels[i];
    report.hinge_risk += std::max(0.0, 1.0 - y * f);
    if ((f >= 0.0 ? 1.0 : -1.0) != y) report.misclassification_rate += 1.0;
  }
  report.hinge_risk /= n;
  report.misclassification_rate /= n;

  // |f|^2 through the kernel values between support vectors.
  double norm2 = 0.0;
  for (std::size_t i = 0; i < model.support_vectors.size(); ++i) {
    for (std::size_t j = 0; j < model.support_vectors.size(); ++j) {
      norm2 += model.coefficients[i] * model.coefficients[j] *
               model.kernel.eval(model.support_vectors[i], model.support_vectors[j]);
    }
  }
  const double mu = 1.0 / (2.0 * cost * n);
  report.regularized_objective = report.hinge_risk + mu * norm2;
  return report;
}

std::vector<double> linear_weights(const SvcModel& model) {
  if (model.kernel.kind != KernelKind::linear) {
    throw std::invalid_argument("explicit weights exist only for the linear kernel");
  }
  std::vector<double> w(static_cast<std::size_t>(model.dim), 0.0);
  for (std::size_t i = 0; i < model.support_vectors.size(); ++i) {
    const FeatureVector& sv = model.support_vectors[i];
    if (sv.is_sparse()) {
      auto idx = sv.indices();
      auto val = sv.values();
      for (std::size_t k = 0; k < idx.size(); ++k) {
        w[static_cast<std::size_t>(idx[k]) - 1] += model.coefficients[i] * val[k];
      }
    } else {
      auto val = sv.values();
      for (std::size_t k = 0; k < val.size(); ++k) w[k] += model.coefficients[i] * val[k];
    }
  }
  return w;
}

}  // namespace svmkit
