#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "svmkit/feature_vector.hpp"

namespace svmkit {

enum class KernelKind { linear, polynomial, gaussian };

// Closed-form Mercer kernel selection.
//
// The Gaussian width uses the divisor convention
//   K(x, y) = exp(-|x - y|^2 / c),
// so the common gamma parameterization maps to gamma = 1/c.
struct KernelSpec {
  KernelKind kind = KernelKind::linear;
  double offset = 0.0;  // polynomial: K(x, y) = (offset + x.y)^degree
  int degree = 1;
  double width = 1.0;   // gaussian divisor c

  static KernelSpec linear();
  static KernelSpec polynomial(double offset, int degree);
  static KernelSpec gaussian(double width);

  // Textual form used by the CLI and model files:
  //   linear | poly:c=<real>,d=<int> | gauss:c=<real>
  static KernelSpec parse(const std::string& text);
  std::string to_string() const;

  void validate() const;

  double eval(const FeatureVector& x, const FeatureVector& y) const;

  bool operator==(const KernelSpec& other) const = default;
};

// Read-only row access to kernel values K(x_i, x_j) between training
// samples. Implementations either hold the full matrix or fill rows on
// demand.
class KernelMatrix {
 public:
  virtual ~KernelMatrix() = default;
  virtual std::size_t order() const = 0;
  // Row i of the matrix; the span stays valid until the next row() call.
  virtual std::span<const double> row(std::size_t i) const = 0;
  double at(std::size_t i, std::size_t j) const { return row(i)[j]; }
};

// Fully materialized symmetric Gram matrix.
class GramMatrix final : public KernelMatrix {
 public:
  GramMatrix() = default;
  GramMatrix(KernelSpec source, std::size_t order, std::vector<double> values);

  std::size_t order() const override { return order_; }
  std::span<const double> row(std::size_t i) const override;
  double operator()(std::size_t i, std::size_t j) const { return values_[i * order_ + j]; }
  const KernelSpec& source() const { return source_; }

 private:
  KernelSpec source_;
  std::size_t order_ = 0;
  std::vector<double> values_;  // row-major, order x order
};

GramMatrix gram(const KernelSpec& spec, std::span<const FeatureVector> samples);

// Least-recently-used row cache over kernel evaluations, for sample sets
// too large to materialize. Keeps at least two rows resident so a solver
// can hold a working pair simultaneously. The referenced samples must
// outlive the cache.
class CachedKernelMatrix final : public KernelMatrix {
 public:
  CachedKernelMatrix(KernelSpec spec, std::span<const FeatureVector> samples,
                     std::size_t budget_bytes);

  std::size_t order() const override { return samples_.size(); }
  std::span<const double> row(std::size_t i) const override;
  std::size_t rows_resident() const { return resident_; }

 private:
  KernelSpec spec_;
  std::span<const FeatureVector> samples_;
  std::size_t max_rows_;
  mutable std::size_t resident_ = 0;
  mutable std::uint64_t clock_ = 0;
  struct Slot {
    std::vector<double> data;
    std::uint64_t last_use = 0;
  };
  mutable std::vector<Slot> slots_;
};

}  // namespace svmkit
