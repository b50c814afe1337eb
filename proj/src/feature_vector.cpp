#include "svmkit/feature_vector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace svmkit {

namespace {

void require_finite(const std::vector<double>& values) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("feature vector has a non-finite component");
    }
  }
}

}  // namespace

FeatureVector FeatureVector::dense(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("dense feature vector must have dimension >= 1");
  }
  require_finite(values);
  FeatureVector v;
  v.sparse_ = false;
  v.dim_ = static_cast<int>(values.size());
  v.values_ = std::move(values);
  return v;
}

FeatureVector FeatureVector::sparse(std::vector<int> indices, std::vector<double> values,
                                    int dim) {
  if (indices.size() != values.size()) {
    throw std::invalid_argument("sparse index/value lists differ in length");
  }
  require_finite(values);
  int prev = 0;
  for (int idx : indices) {
    if (idx < 1) throw std::invalid_argument("sparse indices are 1-based");
    if (idx <= prev) throw std::invalid_argument("sparse indices must be strictly increasing");
    prev = idx;
  }
  FeatureVector v;
  v.sparse_ = true;
  // Drop explicit zeros so equal vectors have equal representations.
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (values[k] != 0.0) {
      v.indices_.push_back(indices[k]);
      v.values_.push_back(values[k]);
    }
  }
  int max_index = v.indices_.empty() ? 0 : v.indices_.back();
  v.dim_ = std::max(dim, max_index);
  return v;
}

double FeatureVector::component(int index) const {
  if (index < 1 || index > dim_) {
    throw std::out_of_range("component index " + std::to_string(index) + " out of range");
  }
  if (!sparse_) return values_[static_cast<std::size_t>(index) - 1];
  auto it = std::lower_bound(indices_.begin(), indices_.end(), index);
  if (it == indices_.end() || *it != index) return 0.0;
  return values_[static_cast<std::size_t>(it - indices_.begin())];
}

std::vector<double> FeatureVector::to_dense(int min_dim) const {
  std::vector<double> out(static_cast<std::size_t>(std::max(dim_, min_dim)), 0.0);
  if (!sparse_) {
    std::copy(values_.begin(), values_.end(), out.begin());
  } else {
    for (std::size_t k = 0; k < indices_.size(); ++k) {
      out[static_cast<std::size_t>(indices_[k]) - 1] = values_[k];
    }
  }
  return out;
}

double FeatureVector::dot(const FeatureVector& other) const {
  if (!sparse_ && !other.sparse_) {
    if (dim_ != other.dim_) {
      throw std::invalid_argument("dense feature vectors differ in dimension (" +
                                  std::to_string(dim_) + " vs " +
                                  std::to_string(other.dim_) + ")");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < values_.size(); ++k) sum += values_[k] * other.values_[k];
    return sum;
  }
  if (sparse_ && other.sparse_) {
    // Index-merge over the two ascending index lists.
    double sum = 0.0;
    std::size_t a = 0, b = 0;
    while (a < indices_.size() && b < other.indices_.size()) {
      if (indices_[a] == other.indices_[b]) {
        sum += values_[a] * other.values_[b];
        ++a;
        ++b;
      } else if (indices_[a] < other.indices_[b]) {
        ++a;
      } else {
        ++b;
      }
    }
    return sum;
  }
  // Mixed: gather from the dense side at the sparse indices.
  const FeatureVector& sp = sparse_ ? *this : other;
  const FeatureVector& de = sparse_ ? other : *this;
  if (sp.dim_ > de.dim_) {
    throw std::invalid_argument("sparse vector index exceeds dense dimension");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < sp.indices_.size(); ++k) {
    sum += sp.values_[k] * de.values_[static_cast<std::size_t>(sp.indices_[k]) - 1];
  }
  return sum;
}

double FeatureVector::squared_distance(const FeatureVector& other) const {
  // Associated so the result is bit-identical under argument swap.
  double d2 = (dot(*this) + other.dot(other)) - 2.0 * dot(other);
  return std::max(d2, 0.0);
}

}  // namespace svmkit
