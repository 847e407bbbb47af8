#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mixsmooth {

struct PropertyOutcome {
  std::string name;
  bool passed = false;
  /// The statistic compared against the threshold (worst case over the corpus).
  double worst = 0;
  double threshold = 0;
  /// Where the worst case occurred.
  std::string witness;
};

struct PropertySuiteConfig {
  std::uint64_t seed = 20240601;
  int corpus_size = 50;
  /// Properties to run, by name. Empty runs nothing.
  std::vector<std::string> names;
  /// Test mode: conjugates the Weyl phase inside the conjugate-phase identity
  /// check so the suite must report a failure.
  bool inject_sign_flip = false;
};

std::vector<std::string> all_property_names();
std::vector<PropertyOutcome> run_properties(const PropertySuiteConfig& config);

}  // namespace mixsmooth
