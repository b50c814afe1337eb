#pragma once

#include <cstdint>
#include <string>

namespace svmkit {

// Provenance and solver diagnostics attached to trained models. Not
// persisted in model files; loaded models carry defaults.
struct TrainingInfo {
  double cost = 0.0;
  double tolerance = 0.0;
  double epsilon = 0.0;         // regression only
  std::uint64_t seed = 0;       // training-data seed when known
  std::size_t sample_count = 0;
  std::uint64_t iterations = 0;
  double kkt_violation = 0.0;
  double dual_objective = 0.0;

  std::string summary() const;  // one line for --verbose output
};

}  // namespace svmkit
