#include "svmkit/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "svmkit/detail/num_text.hpp"

namespace svmkit {

using detail::format_real;

namespace {

double powi(double base, int times) {
  double tmp = base, ret = 1.0;
  for (int t = times; t > 0; t /= 2) {
    if (t % 2 == 1) ret *= tmp;
    tmp *= tmp;
  }
  return ret;
}

double parse_real(std::string_view text, const std::string& what) {
  auto value = detail::try_parse_real(text);
  if (!value) {
    throw std::invalid_argument("bad " + what + " in kernel spec: '" + std::string(text) + "'");
  }
  return *value;
}

int parse_int(std::string_view text, const std::string& what) {
  auto value = detail::try_parse_int(text);
  if (!value) {
    throw std::invalid_argument("bad " + what + " in kernel spec: '" + std::string(text) + "'");
  }
  return *value;
}

}  // namespace

KernelSpec KernelSpec::linear() { return KernelSpec{KernelKind::linear, 0.0, 1, 1.0}; }

KernelSpec KernelSpec::polynomial(double offset, int degree) {
  KernelSpec spec{KernelKind::polynomial, offset, degree, 1.0};
  spec.validate();
  return spec;
}

KernelSpec KernelSpec::gaussian(double width) {
  KernelSpec spec{KernelKind::gaussian, 0.0, 1, width};
  spec.validate();
  return spec;
}

void KernelSpec::validate() const {
  switch (kind) {
    case KernelKind::linear:
      break;
    case KernelKind::polynomial:
      if (!std::isfinite(offset) || offset < 0.0) {
        throw std::invalid_argument("polynomial offset must be finite and >= 0");
      }
      if (degree < 1) throw std::invalid_argument("polynomial degree must be >= 1");
      break;
    case KernelKind::gaussian:
      if (!std::isfinite(width) || width <= 0.0) {
        throw std::invalid_argument("gaussian width must be finite and > 0");
      }
      break;
  }
}

KernelSpec KernelSpec::parse(const std::string& text) {
  if (text == "linear") return linear();
  if (text.rfind("poly:", 0) == 0) {
    std::string_view args(text);
    args.remove_prefix(5);
    auto comma = args.find(',');
    if (comma == std::string_view::npos || args.substr(0, 2) != "c=" ||
        args.substr(comma + 1, 2) != "d=") {
      throw std::invalid_argument("expected poly:c=<real>,d=<int>, got '" + text + "'");
    }
    double c = parse_real(args.substr(2, comma - 2), "polynomial offset");
    int d = parse_int(args.substr(comma + 3), "polynomial degree");
    return polynomial(c, d);
  }
  if (text.rfind("gauss:", 0) == 0) {
    std::string_view args(text);
    args.remove_prefix(6);
    if (args.substr(0, 2) != "c=") {
      throw std::invalid_argument("expected gauss:c=<real>, got '" + text + "'");
    }
    return gaussian(parse_real(args.substr(2), "gaussian width"));
  }
  throw std::invalid_argument("unknown kernel spec '" + text + "'");
}

std::string KernelSpec::to_string() const {
  switch (kind) {
    case KernelKind::linear:
      return "linear";
    case KernelKind::polynomial:
      return "poly:c=" + format_real(offset) + ",d=" + std::to_string(degree);
    case KernelKind::gaussian:
      return "gauss:c=" + format_real(width);
  }
  throw std::logic_error("unreachable kernel kind");
}

double KernelSpec::eval(const FeatureVector& x, const FeatureVector& y) const {
  switch (kind) {
    case KernelKind::linear:
      return x.dot(y);
    case KernelKind::polynomial:
      return powi(offset + x.dot(y), degree);
    case KernelKind::gaussian:
      return std::exp(-x.squared_distance(y) / width);
  }
  throw std::logic_error("unreachable kernel kind");
}

GramMatrix::GramMatrix(KernelSpec source, std::size_t order, std::vector<double> values)
    : source_(source), order_(order), values_(std::move(values)) {
  if (values_.size() != order_ * order_) {
    throw std::invalid_argument("gram value count does not match order");
  }
}

std::span<const double> GramMatrix::row(std::size_t i) const {
  return std::span<const double>(values_).subspan(i * order_, order_);
}

GramMatrix gram(const KernelSpec& spec, std::span<const FeatureVector> samples) {
  if (samples.empty()) throw std::invalid_argument("gram of an empty sample list");
  spec.validate();
  const std::size_t n = samples.size();
  std::vector<double> values(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double v = spec.eval(samples[i], samples[j]);
      values[i * n + j] = v;
      values[j * n + i] = v;
    }
  }
  return GramMatrix(spec, n, std::move(values));
}

CachedKernelMatrix::CachedKernelMatrix(KernelSpec spec, std::span<const FeatureVector> samples,
                                       std::size_t budget_bytes)
    : spec_(spec), samples_(samples) {
  if (samples.empty()) throw std::invalid_argument("kernel cache over an empty sample list");
  spec_.validate();
  std::size_t row_bytes = samples.size() * sizeof(double);
  max_rows_ = std::max<std::size_t>(2, row_bytes ? budget_bytes / row_bytes : 2);
  slots_.resize(samples.size());
}

std::span<const double> CachedKernelMatrix::row(std::size_t i) const {
  Slot& slot = slots_[i];
  if (slot.data.empty()) {
    if (resident_ >= max_rows_) {
      // Evict the least recently used resident row.
      std::size_t victim = slots_.size();
      std::uint64_t oldest = UINT64_MAX;
      for (std::size_t k = 0; k < slots_.size(); ++k) {
        if (!slots_[k].data.empty() && slots_[k].last_use < oldest) {
          oldest = slots_[k].last_use;
          victim = k;
        }
      }
      slots_[victim].data = {};
      --resident_;
    }
    slot.data.resize(samples_.size());
    for (std::size_t j = 0; j < samples_.size(); ++j) {
      slot.data[j] = spec_.eval(samples_[i], samples_[j]);
    }
    ++resident_;
  }
  slot.last_use = ++clock_;
  return slot.data;
}

}  // namespace svmkit
