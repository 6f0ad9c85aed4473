#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "trial.hpp"

namespace nucleeg {

// Restrict a trial to a region's channels, preserving the region's column
// order. Label, subject and id carry through.
inline Trial region_select(const Trial& trial, const RegionSpec& region) {
  validate_region(region, trial.samples.cols());
  Matrix out(trial.samples.rows(), region.channels.size());
  for (std::size_t r = 0; r < trial.samples.rows(); ++r)
    for (std::size_t c = 0; c < region.channels.size(); ++c)
      out(r, c) = trial.samples(r, region.channels[c]);
  return Trial{trial.id, trial.label, trial.subject, std::move(out)};
}

struct RejectionResult {
  std::vector<Trial> kept;
  std::vector<std::string> rejected;  // trial ids, input order
};

// A trial is dropped iff any sample magnitude strictly exceeds the
// threshold; values exactly at the threshold stay in.
inline RejectionResult amplitude_reject(std::vector<Trial> trials, double threshold) {
  if (!(threshold > 0.0)) throw ConfigError("rejection threshold must be positive");
  RejectionResult result;
  for (auto& trial : trials) {
    bool exceeds = false;
    for (std::size_t r = 0; r < trial.samples.rows() && !exceeds; ++r)
      for (double v : trial.samples.row(r))
        if (std::abs(v) > threshold) {
          exceeds = true;
          break;
        }
    if (exceeds)
      result.rejected.push_back(trial.id);
    else
      result.kept.push_back(std::move(trial));
  }
  return result;
}

// Per time sample: remove the cross-channel mean, then divide by the
// cross-channel population standard deviation (divisor n). A row whose
// spread falls below epsilon carries no cross-channel information and is
// zeroed instead of divided.
inline NormalizedTrial normalize(const Trial& trial, double epsilon = 1e-12) {
  if (!(epsilon > 0.0)) throw ConfigError("normalization epsilon must be positive");
  if (!trial.samples.all_finite())
    throw DataError("trial " + trial.id + ": non-finite sample value");
  const std::size_t d = trial.samples.rows();
  const std::size_t n = trial.samples.cols();
  Matrix phi(d, n);
  for (std::size_t t = 0; t < d; ++t) {
    const auto src = trial.samples.row(t);
    double mean = 0.0;
    for (double v : src) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : src) var += (v - mean) * (v - mean);
    const double std_dev = std::sqrt(var / static_cast<double>(n));
    if (std_dev < epsilon) continue;  // row stays zero
    for (std::size_t c = 0; c < n; ++c) phi(t, c) = (src[c] - mean) / std_dev;
  }
  return NormalizedTrial{trial.id, std::move(phi)};
}

}  // namespace nucleeg
