#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "svmkit/dataset.hpp"
#include "svmkit/feature_vector.hpp"
#include "svmkit/generators.hpp"
#include "svmkit/kernel.hpp"
#include "svmkit/qp.hpp"

namespace testutil {

inline svmkit::FeatureVector vec2(double x, double y) {
  return svmkit::FeatureVector::dense({x, y});
}

inline std::vector<double> random_dense(svmkit::Rng& rng, int dim, double scale = 2.0) {
  std::vector<double> v(static_cast<std::size_t>(dim));
  for (double& x : v) x = scale * (rng.uniform() - 0.5);
  return v;
}

// Smallest eigenvalue of a symmetric matrix by cyclic Jacobi rotations.
// Independent of any library code; used to spot-check positive
// semidefiniteness of small Gram matrices.
inline double smallest_eigenvalue(std::vector<double> a, std::size_t n) {
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
    if (off < 1e-24) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p], aqq = a[q * n + q];
        const double theta = 0.5 * std::atan2(2.0 * apq, aqq - app);
        const double c = std::cos(theta), s = std::sin(theta);
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
      }
    }
  }
  double smallest = a[0];
  for (std::size_t k = 1; k < n; ++k) smallest = std::min(smallest, a[k * n + k]);
  return smallest;
}

// Random small classification instance with both classes present.
struct SmallProblem {
  svmkit::Dataset data;
  svmkit::KernelSpec kernel;
  double cost = 1.0;
};

inline SmallProblem random_small_problem(svmkit::Rng& rng, std::size_t max_n = 8) {
  SmallProblem p;
  const std::size_t n = 2 + rng.below(max_n - 1);
  const int dim = 1 + static_cast<int>(rng.below(3));
  switch (rng.below(4)) {
    case 0: p.kernel = svmkit::KernelSpec::linear(); break;
    case 1: p.kernel = svmkit::KernelSpec::polynomial(1.0, 2); break;
    case 2: p.kernel = svmkit::KernelSpec::polynomial(0.5, 3); break;
    default: p.kernel = svmkit::KernelSpec::gaussian(1.0 + 4.0 * rng.uniform()); break;
  }
  const double costs[] = {0.1, 1.0, 10.0};
  p.cost = costs[rng.below(3)];
  for (std::size_t i = 0; i < n; ++i) {
    double label = i == 0 ? 1.0 : (i == 1 ? -1.0 : (rng.uniform() < 0.5 ? 1.0 : -1.0));
    p.data.push_back(svmkit::FeatureVector::dense(random_dense(rng, dim)), label);
  }
  return p;
}

inline svmkit::SvcDualProblem to_dual(const SmallProblem& p) {
  svmkit::SvcDualProblem problem;
  problem.gram = std::make_shared<svmkit::GramMatrix>(svmkit::gram(p.kernel, p.data.samples));
  problem.labels = p.data.labels;
  problem.cost = p.cost;
  return problem;
}

// Decision function value reconstructed from raw multipliers.
inline double decision_from(const SmallProblem& p, const svmkit::DualSolution& s,
                            const svmkit::FeatureVector& x) {
  double value = s.bias;
  for (std::size_t i = 0; i < p.data.size(); ++i) {
    value += s.lambdas[i] * p.data.labels[i] * p.kernel.eval(p.data.samples[i], x);
  }
  return value;
}

// Independent recomputation of the dual objective straight from kernel
// evaluations, bypassing the Gram matrix plumbing.
inline double naive_dual_objective(const SmallProblem& p, const std::vector<double>& lambdas) {
  double quad = 0.0, lin = 0.0;
  for (std::size_t i = 0; i < p.data.size(); ++i) {
    lin += lambdas[i];
    for (std::size_t j = 0; j < p.data.size(); ++j) {
      quad += lambdas[i] * lambdas[j] * p.data.labels[i] * p.data.labels[j] *
              p.kernel.eval(p.data.samples[i], p.data.samples[j]);
    }
  }
  return 0.5 * quad - lin;
}

// Soft-margin primal value at the multipliers' reconstructed (w, b, xi).
inline double svc_primal_value(const SmallProblem& p, const svmkit::DualSolution& s) {
  double norm2 = 0.0;
  for (std::size_t i = 0; i < p.data.size(); ++i) {
    for (std::size_t j = 0; j < p.data.size(); ++j) {
      norm2 += s.lambdas[i] * s.lambdas[j] * p.data.labels[i] * p.data.labels[j] *
               p.kernel.eval(p.data.samples[i], p.data.samples[j]);
    }
  }
  double slack = 0.0;
  for (std::size_t i = 0; i < p.data.size(); ++i) {
    slack += std::max(0.0, 1.0 - p.data.labels[i] * decision_from(p, s, p.data.samples[i]));
  }
  return 0.5 * norm2 + p.cost * slack;
}

// Direct minimizer of the linear-kernel regression primal
//   1/2 |w|^2 + C sum (|w.x_i + b - y_i| - eps)_+
// by damped Newton descent on a softplus smoothing, tightened over a
// decreasing smoothing schedule. Returns the exact primal value at the
// final iterate. Independent of the dual solver.
inline double svr_primal_minimum(const std::vector<std::vector<double>>& xs,
                                 const std::vector<double>& ys, double cost, double eps) {
  const std::size_t n = xs.size();
  const std::size_t d = xs.front().size() + 1;  // weights plus bias
  std::vector<double> v(d, 0.0);                // v = (w, b)

  auto residual = [&](const std::vector<double>& vv, std::size_t i) {
    double r = vv[d - 1] - ys[i];
    for (std::size_t k = 0; k + 1 < d; ++k) r += vv[k] * xs[i][k];
    return r;
  };
  auto true_value = [&](const std::vector<double>& vv) {
    double f = 0.0;
    for (std::size_t k = 0; k + 1 < d; ++k) f += 0.5 * vv[k] * vv[k];
    for (std::size_t i = 0; i < n; ++i) {
      f += cost * std::max(std::abs(residual(vv, i)) - eps, 0.0);
    }
    return f;
  };
  auto softplus = [](double t) {
    return t > 30.0 ? t : std::log1p(std::exp(t));
  };
  auto smooth_value = [&](const std::vector<double>& vv, double mu) {
    double f = 0.0;
    for (std::size_t k = 0; k + 1 < d; ++k) f += 0.5 * vv[k] * vv[k];
    for (std::size_t i = 0; i < n; ++i) {
      const double r = residual(vv, i);
      f += cost * mu * (softplus((r - eps) / mu) + softplus((-r - eps) / mu));
    }
    return f;
  };

  std::vector<double> grad(d), dir(d), h(d * d);
  for (double mu = 1.0; mu >= 1e-9; mu *= 0.1) {
    for (int iter = 0; iter < 200; ++iter) {
      std::fill(grad.begin(), grad.end(), 0.0);
      std::fill(h.begin(), h.end(), 0.0);
      for (std::size_t k = 0; k + 1 < d; ++k) {
        grad[k] = v[k];
        h[k * d + k] = 1.0;
      }
      h[(d - 1) * d + (d - 1)] = 1e-10;  // keep the bias block invertible
      for (std::size_t i = 0; i < n; ++i) {
        const double r = residual(v, i);
        const double sp = 1.0 / (1.0 + std::exp(-(r - eps) / mu));
        const double sm = 1.0 / (1.0 + std::exp(-(-r - eps) / mu));
        const double g1 = cost * (sp - sm);
        const double curv = cost * (sp * (1 - sp) + sm * (1 - sm)) / mu;
        auto coord = [&](std::size_t k) { return k + 1 < d ? xs[i][k] : 1.0; };
        for (std::size_t a = 0; a < d; ++a) {
          grad[a] += g1 * coord(a);
          for (std::size_t b = 0; b < d; ++b) h[a * d + b] += curv * coord(a) * coord(b);
        }
      }
      double gnorm = 0.0;
      for (double g : grad) gnorm += g * g;
      if (std::sqrt(gnorm) <= 1e-11 * (1.0 + cost * static_cast<double>(n))) break;

      // Solve h * dir = -grad by Gaussian elimination with partial pivoting.
      std::vector<double> m = h;
      dir = grad;
      for (double& x : dir) x = -x;
      for (std::size_t col = 0; col < d; ++col) {
        std::size_t pivot = col;
        for (std::size_t r2 = col + 1; r2 < d; ++r2) {
          if (std::abs(m[r2 * d + col]) > std::abs(m[pivot * d + col])) pivot = r2;
        }
        for (std::size_t k = 0; k < d; ++k) std::swap(m[col * d + k], m[pivot * d + k]);
        std::swap(dir[col], dir[pivot]);
        const double diag = m[col * d + col];
        for (std::size_t r2 = col + 1; r2 < d; ++r2) {
          const double factor = m[r2 * d + col] / diag;
          for (std::size_t k = col; k < d; ++k) m[r2 * d + k] -= factor * m[col * d + k];
          dir[r2] -= factor * dir[col];
        }
      }
      for (std::size_t col = d; col-- > 0;) {
        for (std::size_t k = col + 1; k < d; ++k) dir[col] -= m[col * d + k] * dir[k];
        dir[col] /= m[col * d + col];
      }

      const double base = smooth_value(v, mu);
      double t = 1.0;
      std::vector<double> trial(d);
      for (int bt = 0; bt < 60; ++bt, t *= 0.5) {
        for (std::size_t k = 0; k < d; ++k) trial[k] = v[k] + t * dir[k];
        if (smooth_value(trial, mu) <= base + 1e-18) break;
      }
      v = trial;
    }
  }
  return true_value(v);
}

}  // namespace testutil
