#pragma once

#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "radiuslab/chains.hpp"

namespace radiuslab {

struct SampleStats {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double q05 = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double q95 = 0.0;
  std::size_t count = 0;  // finite samples only
};

/// Linear-interpolation quantiles. Non-finite values are dropped.
SampleStats sample_stats(std::vector<double> values);

struct PairTightness {
  SampleStats margin;
  SampleStats ratio;
};

struct TightnessReport {
  ChainId id;
  std::size_t samples = 0;
  std::size_t violations = 0;
  std::vector<PairTightness> pairs;  // one per adjacent pair of terms
  /// Mean of (right − middle)/right for THM_MAIN and COR_POWER_R.
  std::optional<double> refinement_mean;
};

/// Requires a nonempty list with a single chain id.
TightnessReport tightness_report(std::span<const ChainResult> results);

nlohmann::json tightness_to_json(const TightnessReport& r);

}  // namespace radiuslab
