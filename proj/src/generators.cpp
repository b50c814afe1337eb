#include "svmkit/generators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace svmkit {

double Rng::uniform() {
  // Top 53 bits of the engine output.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller on (0,1] x [0,1) uniforms; two deviates per pair of draws.
  double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double angle = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(angle);
  has_spare_ = true;
  return r * std::cos(angle);
}

std::uint64_t Rng::below(std::uint64_t n) {
  return static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finalizer over (master, index); spreads nearby seeds apart.
  std::uint64_t z = master + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Dataset gen_blobs(const BlobSpec& spec) {
  if (spec.classes.empty()) throw std::invalid_argument("blob spec has no classes");
  std::size_t dim = spec.classes.front().mean.size();
  for (const BlobClass& cls : spec.classes) {
    if (cls.count < 1) throw std::invalid_argument("blob class count must be >= 1");
    if (cls.mean.size() != dim || dim == 0) {
      throw std::invalid_argument("blob class means must share a dimension >= 1");
    }
    for (double m : cls.mean) {
      if (!std::isfinite(m)) throw std::invalid_argument("blob class mean is not finite");
    }
  }
  Rng rng(spec.seed);
  Dataset data;
  for (const BlobClass& cls : spec.classes) {
    for (std::size_t k = 0; k < cls.count; ++k) {
      std::vector<double> point(dim);
      for (std::size_t d = 0; d < dim; ++d) {
        point[d] = cls.mean[d] + spec.noise_sigma * rng.normal();
      }
      data.push_back(FeatureVector::dense(std::move(point)), cls.label);
    }
  }
  return data;
}

std::array<double, 3> waveform_basis(int i) {
  if (i < 1 || i > 21) throw std::out_of_range("waveform index must lie in 1..21");
  auto h1 = [](int t) { return std::max(6.0 - std::abs(t - 11), 0.0); };
  return {h1(i), h1(i - 4), h1(i + 4)};
}

Dataset gen_waveform(const WaveformSpec& spec, const WaveformHooks& hooks) {
  if (spec.count < 3) throw std::invalid_argument("waveform sample count must be >= 3");
  if (hooks.fixed_class && (*hooks.fixed_class < 1 || *hooks.fixed_class > 3)) {
    throw std::invalid_argument("waveform class must lie in 1..3");
  }
  Rng rng(spec.seed);
  Dataset data;
  for (std::size_t k = 0; k < spec.count; ++k) {
    int cls = hooks.fixed_class ? *hooks.fixed_class : 1 + static_cast<int>(rng.below(3));
    double u = hooks.fixed_u ? *hooks.fixed_u : rng.uniform();
    std::vector<double> point(21);
    for (int i = 1; i <= 21; ++i) {
      auto [h1, h2, h3] = waveform_basis(i);
      double base = 0.0;
      switch (cls) {
        case 1: base = u * h1 + (1.0 - u) * h2; break;
        case 2: base = u * h1 + (1.0 - u) * h3; break;
        case 3: base = u * h2 + (1.0 - u) * h3; break;
      }
      double noise = hooks.fixed_noise ? *hooks.fixed_noise : rng.normal();
      point[static_cast<std::size_t>(i) - 1] = base + noise;
    }
    data.push_back(FeatureVector::dense(std::move(point)), static_cast<double>(cls));
  }
  return data;
}

}  // namespace svmkit
