#include "svmkit/svr.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "svmkit/svc.hpp"

namespace svmkit {

double SvrModel::predict(const FeatureVector& x) const {
  if (x.is_sparse() ? x.dim() > dim : x.dim() != dim) {
    throw std::invalid_argument("input dimension does not match model dimension");
  }
  double value = 0.0;
  for (std::size_t i = 0; i < support_vectors.size(); ++i) {
    value += coefficients[i] * kernel.eval(support_vectors[i], x);
  }
  return value + bias;
}

SvrModel train_svr(const Dataset& data, const KernelSpec& kernel, double cost,
                   double epsilon, const SolverConfig& config) {
  data.validate();
  kernel.validate();
  if (data.size() == 0) throw std::invalid_argument("empty regression dataset");

  std::shared_ptr<const KernelMatrix> matrix;
  if (data.size() <= 4000) {
    matrix = std::make_shared<GramMatrix>(gram(kernel, data.samples));
  } else {
    matrix = std::make_shared<CachedKernelMatrix>(kernel, std::span(data.samples),
                                                  config.cache_bytes);
  }

  SvrDualSolution solution = solve_svr_dual(*matrix, data.labels, cost, epsilon, config);

  SvrModel model;
  model.kernel = kernel;
  model.bias = solution.bias;
  model.epsilon = epsilon;
  model.dim = data.dim;
  const double threshold = kSupportThreshold * cost;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (std::abs(solution.beta[i]) > threshold) {
      model.support_vectors.push_back(data.samples[i]);
      model.coefficients.push_back(solution.beta[i]);
    }
  }
  model.info.cost = cost;
  model.info.tolerance = config.tolerance;
  model.info.epsilon = epsilon;
  model.info.sample_count = data.size();
  model.info.iterations = solution.iterations;
  model.info.kkt_violation = solution.max_kkt_violation;
  model.info.dual_objective = solution.objective;
  return model;
}

double epsilon_loss(double target, double predicted, double epsilon) {
  if (epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");
  return std::max(std::abs(predicted - target) - epsilon, 0.0);
}

}  // namespace svmkit
