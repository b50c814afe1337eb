#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "svmkit/dataset.hpp"

namespace svmkit {

// Deterministic random stream: mt19937_64 bits mapped to [0,1) uniforms,
// normal deviates by the Box-Muller transform. The identifier below is
// recorded in generated artifacts so runs can be replayed.
inline constexpr const char* kRngId = "mt19937_64/box-muller/v1";

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // [0, 1)
  double normal();   // standard normal
  std::uint64_t below(std::uint64_t n);  // uniform draw from {0, ..., n-1}

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Stream seed for replication `index` derived from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Point cloud around each class mean with isotropic normal noise.
struct BlobClass {
  std::vector<double> mean;
  std::size_t count = 0;
  double label = 0.0;
};
struct BlobSpec {
  std::vector<BlobClass> classes;
  std::uint64_t seed = 0;
  double noise_sigma = 1.0;  // 0 is a test hook: every sample equals its mean
};
Dataset gen_blobs(const BlobSpec& spec);

// Triangular basis waveforms sampled at i in {1, ..., 21}:
//   h1(i) = max(6 - |i - 11|, 0), h2(i) = h1(i - 4), h3(i) = h1(i + 4).
std::array<double, 3> waveform_basis(int i);

// Three-class waveform mixture: a class-dependent convex combination
// u*h_a + (1-u)*h_b of two basis waveforms plus unit normal noise per
// coordinate, one u per sample, equal class priors. Labels are 1, 2, 3.
struct WaveformSpec {
  std::size_t count = 0;
  std::uint64_t seed = 0;
};
struct WaveformHooks {
  std::optional<double> fixed_u;      // force the mixing weight
  std::optional<double> fixed_noise;  // force every noise coordinate
  std::optional<int> fixed_class;     // force the class label (1..3)
};
Dataset gen_waveform(const WaveformSpec& spec, const WaveformHooks& hooks = {});

}  // namespace svmkit
