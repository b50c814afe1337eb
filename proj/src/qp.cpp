#include "svmkit/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace svmkit {

namespace {

constexpr double kEtaFloor = 1e-12;

// Free-multiplier threshold relative to the box bound.
double free_threshold(double cost) { return 1e-8 * cost; }

// Box/equality QP over variables theta:
//   min 1/2 theta' (zz' . K~) theta + c' theta
//   s.t. z' theta = 0,  0 <= theta <= C
// with K~(p, q) = kernel(sample_of[p], sample_of[q]). The SVC dual is the
// identity map with z = y and c = -1; the SVR dual doubles each sample
// into an up and a down variable.
struct PairwiseQp {
  const KernelMatrix* kernel = nullptr;
  std::vector<std::size_t> sample_of;
  std::vector<double> z;
  std::vector<double> c;
  double cost = 1.0;
};

struct SmoState {
  std::vector<double> theta;
  std::vector<double> gradient;
  double bias = 0.0;
  std::uint64_t iterations = 0;
  double violation = 0.0;
  bool converged = false;
};

struct PairPick {
  std::size_t up = SIZE_MAX;
  std::size_t down = SIZE_MAX;
  double up_score = -std::numeric_limits<double>::infinity();
  double down_score = std::numeric_limits<double>::infinity();
  double gap() const { return up_score - down_score; }
};

// Maximal violating pair on the gradient. An "up" candidate can grow its
// z-weighted value, a "down" candidate can shrink it; the pair with the
// widest score gap violates optimality the most.
PairPick select_pair(const PairwiseQp& qp, const SmoState& s, SolverConfig::TieBreak tb) {
  PairPick pick;
  const std::size_t m = qp.z.size();
  const bool prefer_late = tb == SolverConfig::TieBreak::highest_index;
  for (std::size_t p = 0; p < m; ++p) {
    const double score = -qp.z[p] * s.gradient[p];
    const bool up_ok = qp.z[p] > 0 ? s.theta[p] < qp.cost : s.theta[p] > 0.0;
    const bool down_ok = qp.z[p] > 0 ? s.theta[p] > 0.0 : s.theta[p] < qp.cost;
    if (up_ok && (score > pick.up_score || (prefer_late && score == pick.up_score))) {
      pick.up_score = score;
      pick.up = p;
    }
    if (down_ok && (score < pick.down_score || (prefer_late && score == pick.down_score))) {
      pick.down_score = score;
      pick.down = p;
    }
  }
  return pick;
}

double bias_from_state(const PairwiseQp& qp, const SmoState& s, const PairPick& pick) {
  const double ft = free_threshold(qp.cost);
  double sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t p = 0; p < qp.z.size(); ++p) {
    if (s.theta[p] > ft && s.theta[p] < qp.cost - ft) {
      sum += -qp.z[p] * s.gradient[p];
      ++free_count;
    }
  }
  if (free_count > 0) return sum / static_cast<double>(free_count);
  // All multipliers at a bound: midpoint of the admissible interval. A
  // one-sided interval cannot arise from a feasible problem; guard anyway.
  if (!std::isfinite(pick.up_score)) return std::isfinite(pick.down_score) ? pick.down_score : 0.0;
  if (!std::isfinite(pick.down_score)) return pick.up_score;
  return 0.5 * (pick.up_score + pick.down_score);
}

SmoState smo_minimize(const PairwiseQp& qp, const SolverConfig& config) {
  const std::size_t m = qp.z.size();
  SmoState s;
  s.theta.assign(m, 0.0);
  s.gradient = qp.c;  // gradient at theta = 0

  while (true) {
    PairPick pick = select_pair(qp, s, config.tie_break);
    if (pick.up == SIZE_MAX || pick.down == SIZE_MAX) {
      // No movable pair exists; the feasible set is a single vertex.
      s.violation = 0.0;
      s.converged = true;
      s.bias = bias_from_state(qp, s, pick);
      return s;
    }
    s.violation = pick.gap();
    if (s.violation <= config.tolerance) {
      s.converged = true;
      s.bias = bias_from_state(qp, s, pick);
      return s;
    }
    if (s.iterations >= config.max_iterations) {
      s.converged = false;
      s.bias = bias_from_state(qp, s, pick);
      return s;
    }

    const std::size_t i = pick.up, j = pick.down;
    const std::size_t si = qp.sample_of[i], sj = qp.sample_of[j];
    // Fetch row j first so row i stays resident in a two-row cache while
    // both are read below.
    std::span<const double> row_j = qp.kernel->row(sj);
    const double kjj = row_j[sj];
    const double kij = row_j[si];
    std::span<const double> row_i = qp.kernel->row(si);
    const double kii = row_i[si];

    const double eta = std::max(kii + kjj - 2.0 * kij, kEtaFloor);
    const double limit_i = qp.z[i] > 0 ? qp.cost - s.theta[i] : s.theta[i];
    const double limit_j = qp.z[j] > 0 ? s.theta[j] : qp.cost - s.theta[j];
    const double step = std::min({pick.gap() / eta, limit_i, limit_j});

    // Land exactly on the bound when the step is limit-clipped; leftover
    // rounding dust would keep the variable movable with a vanishing
    // limit and stall progress.
    if (step >= limit_i) {
      s.theta[i] = qp.z[i] > 0 ? qp.cost : 0.0;
    } else {
      s.theta[i] = std::clamp(s.theta[i] + qp.z[i] * step, 0.0, qp.cost);
    }
    if (step >= limit_j) {
      s.theta[j] = qp.z[j] > 0 ? 0.0 : qp.cost;
    } else {
      s.theta[j] = std::clamp(s.theta[j] - qp.z[j] * step, 0.0, qp.cost);
    }
    for (std::size_t q = 0; q < m; ++q) {
      s.gradient[q] += qp.z[q] * step * (row_i[qp.sample_of[q]] - row_j[qp.sample_of[q]]);
    }
    ++s.iterations;
  }
}

PairwiseQp svc_qp(const SvcDualProblem& problem) {
  const std::size_t n = problem.size();
  PairwiseQp qp;
  qp.kernel = problem.gram.get();
  qp.sample_of.resize(n);
  std::iota(qp.sample_of.begin(), qp.sample_of.end(), std::size_t{0});
  qp.z = problem.labels;
  qp.c.assign(n, -1.0);
  qp.cost = problem.cost;
  return qp;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
    throw std::invalid_argument("solver tolerance must be positive");
  }
  if (max_iterations < 1) throw std::invalid_argument("max iterations must be >= 1");
}

void SvcDualProblem::validate() const {
  if (!gram) throw std::invalid_argument("dual problem has no kernel matrix");
  if (gram->order() != labels.size()) {
    throw std::invalid_argument("gram order does not match label count");
  }
  if (labels.empty()) throw std::invalid_argument("dual problem has no samples");
  if (!(cost > 0.0) || !std::isfinite(cost)) {
    throw std::invalid_argument("cost must be finite and positive");
  }
  bool has_pos = false, has_neg = false;
  for (double y : labels) {
    if (y == 1.0) {
      has_pos = true;
    } else if (y == -1.0) {
      has_neg = true;
    } else {
      throw std::invalid_argument("labels must be +1 or -1");
    }
  }
  if (!has_pos || !has_neg) {
    throw std::invalid_argument("both classes must be present");
  }
}

DualSolution solve_svc_dual(const SvcDualProblem& problem, const SolverConfig& config) {
  problem.validate();
  config.validate();
  SmoState s = smo_minimize(svc_qp(problem), config);
  DualSolution solution;
  solution.lambdas = std::move(s.theta);
  solution.bias = s.bias;
  solution.iterations = s.iterations;
  solution.max_kkt_violation = std::max(s.violation, 0.0);
  solution.objective = dual_objective(problem, solution.lambdas);
  if (!s.converged) {
    throw SolverError("pair-update budget exhausted at violation " +
                          std::to_string(s.violation),
                      std::move(solution));
  }
  return solution;
}

double dual_objective(const SvcDualProblem& problem, std::span<const double> lambdas) {
  if (lambdas.size() != problem.size()) {
    throw std::invalid_argument("multiplier count does not match problem order");
  }
  const std::size_t n = problem.size();
  double quad = 0.0, lin = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    lin += lambdas[i];
    if (lambdas[i] == 0.0) continue;
    std::span<const double> row = problem.gram->row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      acc += lambdas[j] * problem.labels[j] * row[j];
    }
    quad += lambdas[i] * problem.labels[i] * acc;
  }
  return 0.5 * quad - lin;
}

KktReport kkt_report(const SvcDualProblem& problem, const DualSolution& solution) {
  problem.validate();
  const std::size_t n = problem.size();
  if (solution.lambdas.size() != n) {
    throw std::invalid_argument("multiplier count does not match problem order");
  }
  const double ft = free_threshold(problem.cost);
  KktReport report;
  report.violations.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::span<const double> row = problem.gram->row(i);
    double value = solution.bias;
    for (std::size_t j = 0; j < n; ++j) {
      value += solution.lambdas[j] * problem.labels[j] * row[j];
    }
    const double margin = problem.labels[i] * value;
    double v;
    if (solution.lambdas[i] <= ft) {
      v = std::max(0.0, 1.0 - margin);
    } else if (solution.lambdas[i] >= problem.cost - ft) {
      v = std::max(0.0, margin - 1.0);
    } else {
      v = std::abs(margin - 1.0);
    }
    report.violations[i] = v;
    report.max_violation = std::max(report.max_violation, v);
  }
  return report;
}

namespace {

// Exact projection onto {0 <= lambda <= C, y'lambda = 0} by breakpoint
// search on the piecewise-linear shift equation.
std::vector<double> project_feasible(std::span<const double> point,
                                     std::span<const double> labels, double cost) {
  const std::size_t n = point.size();
  auto shifted = [&](double rho, std::size_t i) {
    return std::clamp(point[i] - rho * labels[i], 0.0, cost);
  };
  auto residual = [&](double rho) {
    double g = 0.0;
    for (std::size_t i = 0; i < n; ++i) g += labels[i] * shifted(rho, i);
    return g;  // non-increasing in rho
  };
  std::vector<double> breaks;
  breaks.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] > 0) {
      breaks.push_back(point[i] - cost);
      breaks.push_back(point[i]);
    } else {
      breaks.push_back(-point[i]);
      breaks.push_back(cost - point[i]);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  double rho = breaks.front();
  if (residual(rho) > 0.0) {
    for (std::size_t k = 1; k < breaks.size(); ++k) {
      const double g_hi = residual(breaks[k]);
      if (g_hi <= 0.0) {
        const double g_lo = residual(breaks[k - 1]);
        const double width = breaks[k] - breaks[k - 1];
        const double drop = g_lo - g_hi;
        rho = drop > 0.0 ? breaks[k - 1] + width * (g_lo / drop) : breaks[k];
        break;
      }
    }
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = shifted(rho, i);
  return out;
}

}  // namespace

DualSolution brute_force_dual(const SvcDualProblem& problem) {
  problem.validate();
  const std::size_t n = problem.size();
  if (n > 8) throw std::invalid_argument("brute-force oracle accepts at most 8 samples");

  std::vector<double> q(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    std::span<const double> row = problem.gram->row(i);
    for (std::size_t j = 0; j < n; ++j) {
      q[i * n + j] = problem.labels[i] * problem.labels[j] * row[j];
    }
  }
  auto grad_at = [&](const std::vector<double>& x, std::vector<double>& g) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = -1.0;
      for (std::size_t j = 0; j < n; ++j) acc += q[i * n + j] * x[j];
      g[i] = acc;
    }
  };
  auto value_at = [&](const std::vector<double>& x) {
    double quad = 0.0, lin = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      lin += x[i];
      for (std::size_t j = 0; j < n; ++j) quad += x[i] * q[i * n + j] * x[j];
    }
    return 0.5 * quad - lin;
  };

  double lipschitz = kEtaFloor;
  for (std::size_t i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) row_sum += std::abs(q[i * n + j]);
    lipschitz = std::max(lipschitz, row_sum);
  }

  constexpr double kMappingTol = 1e-9;
  constexpr std::uint64_t kMaxSteps = 20'000'000;
  double step = 1.0 / lipschitz;
  std::vector<double> lambda(n, 0.0), grad(n), trial(n), moved(n);
  grad_at(lambda, grad);
  double value = value_at(lambda);
  std::uint64_t iterations = 0;
  bool converged = false;
  while (iterations < kMaxSteps) {
    ++iterations;
    for (std::size_t i = 0; i < n; ++i) trial[i] = lambda[i] - step * grad[i];
    moved = project_feasible(trial, problem.labels, problem.cost);
    double mapping = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = (lambda[i] - moved[i]) / step;
      mapping += d * d;
    }
    if (std::sqrt(mapping) <= kMappingTol) {
      converged = true;
      break;
    }
    const double moved_value = value_at(moved);
    // A step of 1/L cannot increase a convex quadratic; the slack absorbs
    // rounding so float noise near the optimum cannot stall progress.
    if (moved_value <= value + 1e-12 * (1.0 + std::abs(value))) {
      lambda.swap(moved);
      value = std::min(value, moved_value);
      grad_at(lambda, grad);
    } else {
      step *= 0.5;  // steps only ever shrink
    }
  }

  // Bias and violation from the same scoring rule as the pair solver.
  PairwiseQp qp = svc_qp(problem);
  SmoState s;
  s.theta = lambda;
  s.gradient = grad;
  s.iterations = iterations;
  PairPick pick = select_pair(qp, s, SolverConfig::TieBreak::lowest_index);
  DualSolution solution;
  solution.lambdas = std::move(lambda);
  solution.bias = bias_from_state(qp, s, pick);
  solution.iterations = iterations;
  solution.max_kkt_violation =
      pick.up == SIZE_MAX || pick.down == SIZE_MAX ? 0.0 : std::max(pick.gap(), 0.0);
  solution.objective = value;
  if (!converged) {
    throw SolverError("projected-gradient oracle failed to reach mapping tolerance",
                      std::move(solution));
  }
  return solution;
}

SvrDualSolution solve_svr_dual(const KernelMatrix& gram, std::span<const double> targets,
                               double cost, double epsilon, const SolverConfig& config) {
  config.validate();
  const std::size_t n = targets.size();
  if (gram.order() != n) throw std::invalid_argument("gram order does not match target count");
  if (n == 0) throw std::invalid_argument("regression problem has no samples");
  if (!(cost > 0.0) || !std::isfinite(cost)) {
    throw std::invalid_argument("cost must be finite and positive");
  }
  if (epsilon < 0.0 || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be finite and >= 0");
  }
  for (double y : targets) {
    if (!std::isfinite(y)) throw std::invalid_argument("non-finite regression target");
  }

  // Split each coefficient beta_i into up/down parts, both boxed in [0, C].
  PairwiseQp qp;
  qp.kernel = &gram;
  qp.cost = cost;
  qp.sample_of.resize(2 * n);
  qp.z.resize(2 * n);
  qp.c.resize(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    qp.sample_of[i] = i;
    qp.sample_of[n + i] = i;
    qp.z[i] = 1.0;
    qp.z[n + i] = -1.0;
    qp.c[i] = epsilon - targets[i];
    qp.c[n + i] = epsilon + targets[i];
  }

  SmoState s = smo_minimize(qp, config);
  SvrDualSolution solution;
  solution.beta.resize(n);
  for (std::size_t i = 0; i < n; ++i) solution.beta[i] = s.theta[i] - s.theta[n + i];
  solution.bias = s.bias;
  solution.iterations = s.iterations;
  solution.max_kkt_violation = std::max(s.violation, 0.0);
  double value = 0.0;
  for (std::size_t p = 0; p < 2 * n; ++p) {
    value += 0.5 * s.theta[p] * (s.gradient[p] + qp.c[p]);
  }
  solution.objective = value;
  if (!s.converged) {
    DualSolution best;
    best.lambdas = std::move(s.theta);
    best.bias = s.bias;
    best.iterations = s.iterations;
    best.max_kkt_violation = s.violation;
    best.objective = value;
    throw SolverError("pair-update budget exhausted at violation " +
                          std::to_string(s.violation),
                      std::move(best));
  }
  return solution;
}

}  // namespace svmkit
