#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "svmkit/kernel.hpp"

namespace svmkit {

struct SolverConfig {
  // Stop once the maximal violating pair gap drops to this value.
  double tolerance = 1e-3;
  // Budget in pair updates.
  std::uint64_t max_iterations = 10'000'000;
  // Row-cache budget used when the Gram matrix is not materialized.
  std::size_t cache_bytes = 64ull << 20;
  // Index preferred when several candidates violate equally. Exists so
  // callers can check that distinct deterministic orderings reach the
  // same decision function.
  enum class TieBreak { lowest_index, highest_index };
  TieBreak tie_break = TieBreak::lowest_index;

  void validate() const;
};

// Soft-margin dual over multipliers lambda:
//   min  1/2 sum_ij lambda_i lambda_j y_i y_j K(x_i, x_j) - sum_i lambda_i
//   s.t. sum_i y_i lambda_i = 0,  0 <= lambda_i <= C.
struct SvcDualProblem {
  std::shared_ptr<const KernelMatrix> gram;
  std::vector<double> labels;  // +/-1, both classes present
  double cost = 1.0;           // box bound C

  std::size_t size() const { return labels.size(); }
  void validate() const;
};

struct DualSolution {
  std::vector<double> lambdas;
  double bias = 0.0;
  double objective = 0.0;  // dual objective in the minimization form above
  std::uint64_t iterations = 0;
  double max_kkt_violation = 0.0;
};

// Raised when the iteration budget runs out; carries the best iterate and
// its residual violation.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, DualSolution best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const DualSolution& best() const { return best_; }

 private:
  DualSolution best_;
};

DualSolution solve_svc_dual(const SvcDualProblem& problem, const SolverConfig& config = {});

double dual_objective(const SvcDualProblem& problem, std::span<const double> lambdas);

// Per-sample optimality violations at tolerance tau:
//   lambda_i = 0      requires y_i D(x_i) >= 1
//   0 < lambda_i < C  requires y_i D(x_i) == 1
//   lambda_i = C      requires y_i D(x_i) <= 1
// Each entry is the amount by which its condition fails; zero when met.
struct KktReport {
  std::vector<double> violations;
  double max_violation = 0.0;
};
KktReport kkt_report(const SvcDualProblem& problem, const DualSolution& solution);

// Independent oracle for tiny instances (order <= 8): projected-gradient
// descent with monotonically shrinking steps and exact projection onto
// {sum y_i lambda_i = 0, 0 <= lambda_i <= C}, run to a 1e-9
// gradient-mapping norm. Deterministic.
DualSolution brute_force_dual(const SvcDualProblem& problem);

// Epsilon-insensitive regression dual, reported in the collapsed
// coefficients beta_i with sum_i beta_i = 0 and |beta_i| <= C. The fitted
// function is f(x) = sum_i beta_i K(x_i, x) + bias.
struct SvrDualSolution {
  std::vector<double> beta;
  double bias = 0.0;
  double objective = 0.0;
  std::uint64_t iterations = 0;
  double max_kkt_violation = 0.0;
};
SvrDualSolution solve_svr_dual(const KernelMatrix& gram, std::span<const double> targets,
                               double cost, double epsilon, const SolverConfig& config = {});

}  // namespace svmkit
