#pragma once

#include <string>
#include <vector>

#include "mixsmooth/harness.hpp"
#include "mixsmooth/properties.hpp"

namespace mixsmooth {

/// %.17g formatting used for every number in CSV output.
std::string format_number(double x);

struct ModulusRow {
  double delta1 = 0;
  double delta2 = 0;
  double omega = 0;
  /// Relative change when the step grid is refined; negative when not requested.
  double refinement_change = -1;
};

std::string modulus_csv(const std::vector<ModulusRow>& rows);
std::string modulus_json(const std::vector<ModulusRow>& rows);
std::string ulyanov_csv(const UlyanovReport& report);
std::string ulyanov_json(const UlyanovReport& report);
std::string rate_fit_json(const RateFit& fit);
std::string separation_json(const Separation& sep);
std::string properties_csv(const std::vector<PropertyOutcome>& outcomes);
std::string properties_json(const std::vector<PropertyOutcome>& outcomes);

}  // namespace mixsmooth
