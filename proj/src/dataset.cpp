#include "svmkit/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "svmkit/detail/num_text.hpp"

namespace svmkit {

using detail::format_real;
using detail::try_parse_real;

void Dataset::push_back(FeatureVector sample, double label) {
  dim = std::max(dim, sample.dim());
  samples.push_back(std::move(sample));
  labels.push_back(label);
}

void Dataset::validate() const {
  if (samples.size() != labels.size()) {
    throw std::invalid_argument("sample and label counts differ");
  }
  for (double y : labels) {
    if (!std::isfinite(y)) throw std::invalid_argument("non-finite label");
  }
}

ParseError::ParseError(const std::string& path, std::size_t line, const std::string& message)
    : std::runtime_error(path + ":" + std::to_string(line) + ": " + message),
      line_number(line) {}

namespace {

bool is_comment_or_blank(const std::string& line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

std::string label_text(double label) {
  if (label == 1.0) return "+1";
  if (label == -1.0) return "-1";
  return format_real(label);
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

}  // namespace

Dataset read_sparse(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  Dataset data;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_comment_or_blank(line)) continue;
    std::istringstream fields(line);
    std::string token;
    fields >> token;
    auto label = try_parse_real(token);
    if (!label) throw ParseError(path, lineno, "bad label '" + token + "'");
    std::vector<int> indices;
    std::vector<double> values;
    int prev_index = 0;
    while (fields >> token) {
      auto colon = token.find(':');
      if (colon == std::string::npos) {
        throw ParseError(path, lineno, "expected <idx>:<val>, got '" + token + "'");
      }
      auto idx = detail::try_parse_int(token.substr(0, colon));
      auto val = try_parse_real(token.substr(colon + 1));
      if (!idx || *idx < 1 || !val) {
        throw ParseError(path, lineno, "bad feature entry '" + token + "'");
      }
      if (*idx <= prev_index) {
        throw ParseError(path, lineno, "feature indices must be strictly ascending");
      }
      prev_index = *idx;
      indices.push_back(*idx);
      values.push_back(*val);
    }
    try {
      data.push_back(FeatureVector::sparse(std::move(indices), std::move(values)), *label);
    } catch (const std::invalid_argument& e) {
      throw ParseError(path, lineno, e.what());
    }
  }
  return data;
}

void write_sparse(const Dataset& data, const std::string& path, const std::string& metadata) {
  data.validate();
  auto out = open_for_write(path);
  if (!metadata.empty()) out << "# " << metadata << "\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    out << label_text(data.labels[i]);
    const FeatureVector& x = data.samples[i];
    if (x.is_sparse()) {
      auto idx = x.indices();
      auto val = x.values();
      for (std::size_t k = 0; k < idx.size(); ++k) {
        out << ' ' << idx[k] << ':' << format_real(val[k]);
      }
    } else {
      auto val = x.values();
      for (std::size_t k = 0; k < val.size(); ++k) {
        if (val[k] != 0.0) out << ' ' << k + 1 << ':' << format_real(val[k]);
      }
    }
    out << '\n';
  }
}

Dataset read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  Dataset data;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_comment_or_blank(line)) continue;
    std::vector<double> cells;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) {
      auto value = try_parse_real(cell);
      if (!value) throw ParseError(path, lineno, "bad numeric cell '" + cell + "'");
      cells.push_back(*value);
    }
    if (cells.size() < 2) throw ParseError(path, lineno, "expected label,v1,...,vd");
    double label = cells.front();
    cells.erase(cells.begin());
    try {
      data.push_back(FeatureVector::dense(std::move(cells)), label);
    } catch (const std::invalid_argument& e) {
      throw ParseError(path, lineno, e.what());
    }
  }
  return data;
}

void write_csv(const Dataset& data, const std::string& path, const std::string& metadata) {
  data.validate();
  auto out = open_for_write(path);
  if (!metadata.empty()) out << "# " << metadata << "\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    out << format_real(data.labels[i]);
    for (double v : data.samples[i].to_dense(data.dim)) out << ',' << format_real(v);
    out << '\n';
  }
}

Dataset read_dataset(const std::string& path) {
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) {
    return read_csv(path);
  }
  return read_sparse(path);
}

namespace {

std::pair<Dataset, Dataset> split_at(const Dataset& data, std::size_t train_count,
                                     std::uint64_t seed) {
  const std::size_t n = data.size();
  if (train_count == 0 || train_count >= n) {
    throw std::invalid_argument("split leaves one side empty");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 engine(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::size_t j = static_cast<std::size_t>(engine() % (i + 1));
    std::swap(order[i], order[j]);
  }
  Dataset train, test;
  for (std::size_t k = 0; k < n; ++k) {
    Dataset& side = k < train_count ? train : test;
    side.push_back(data.samples[order[k]], data.labels[order[k]]);
  }
  // Preserve the dataset-level dimension even if one side lacks the widest sample.
  train.dim = test.dim = data.dim;
  return {std::move(train), std::move(test)};
}

}  // namespace

std::pair<Dataset, Dataset> split(const Dataset& data, double train_fraction,
                                  std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("train fraction must lie strictly between 0 and 1");
  }
  data.validate();
  auto train_count = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(data.size())));
  return split_at(data, train_count, seed);
}

std::pair<Dataset, Dataset> split_count(const Dataset& data, std::size_t train_count,
                                        std::uint64_t seed) {
  data.validate();
  return split_at(data, train_count, seed);
}

}  // namespace svmkit
