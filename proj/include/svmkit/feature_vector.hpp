#pragma once

#include <span>
#include <vector>

namespace svmkit {

// Dense or sparse real-valued sample vector.
//
// Sparse vectors store (index, value) pairs with strictly increasing
// 1-based indices and no explicit zero entries; missing indices are
// implicitly zero, so sparse vectors of different nominal dimension are
// comparable. Dense vectors must agree on dimension exactly.
class FeatureVector {
 public:
  FeatureVector() = default;

  static FeatureVector dense(std::vector<double> values);
  // `dim` may extend the nominal dimension past the largest index.
  static FeatureVector sparse(std::vector<int> indices, std::vector<double> values,
                              int dim = 0);

  bool is_sparse() const { return sparse_; }
  int dim() const { return dim_; }
  std::size_t nnz() const { return values_.size(); }

  // 1-based component access; implicit zeros for sparse vectors.
  double component(int index) const;

  std::span<const int> indices() const { return indices_; }
  std::span<const double> values() const { return values_; }

  // Densified copy padded with zeros up to max(dim(), min_dim).
  std::vector<double> to_dense(int min_dim = 0) const;

  double dot(const FeatureVector& other) const;
  // dot(x,x) - 2 dot(x,y) + dot(y,y), clamped at zero so rounding can
  // never produce a negative squared distance.
  double squared_distance(const FeatureVector& other) const;

  bool operator==(const FeatureVector& other) const = default;

 private:
  bool sparse_ = false;
  int dim_ = 0;
  std::vector<int> indices_;  // empty for dense vectors
  std::vector<double> values_;
};

}  // namespace svmkit
