#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "svmkit/feature_vector.hpp"

namespace svmkit {

// Samples plus one real label per sample. Classification tasks read the
// labels as +/-1 (binary) or class ids; regression reads them as targets.
struct Dataset {
  std::vector<FeatureVector> samples;
  std::vector<double> labels;
  int dim = 0;  // max nominal dimension over samples

  std::size_t size() const { return samples.size(); }
  void push_back(FeatureVector sample, double label);
  void validate() const;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& path, std::size_t line, const std::string& message);
  std::size_t line_number;
};

// Line-oriented sparse text format, one sample per line:
//   <label> <idx>:<val> <idx>:<val> ...
// with 1-based strictly ascending indices. Lines starting with '#' and
// blank lines are ignored. A bare label is a legal all-zeros sample.
Dataset read_sparse(const std::string& path);
void write_sparse(const Dataset& data, const std::string& path,
                  const std::string& metadata = "");

// Dense CSV rows `label,v1,...,vd`; '#' comment lines are ignored.
Dataset read_csv(const std::string& path);
void write_csv(const Dataset& data, const std::string& path,
               const std::string& metadata = "");

// Reads either format, picking by file extension (.csv -> dense CSV).
Dataset read_dataset(const std::string& path);

// Deterministic shuffled partition; both sides nonempty.
std::pair<Dataset, Dataset> split(const Dataset& data, double train_fraction,
                                  std::uint64_t seed);
std::pair<Dataset, Dataset> split_count(const Dataset& data, std::size_t train_count,
                                        std::uint64_t seed);

}  // namespace svmkit
