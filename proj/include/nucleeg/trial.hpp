#pragma once

#include <cstddef>
#include <string>
#include <unordered_set>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace nucleeg {

// One event's worth of multichannel samples: rows are time points, columns
// are channels in the dataset's manifest order.
struct Trial {
  std::string id;
  std::string label;
  std::string subject;
  Matrix samples;  // d x n
};

// Result of the per-sample standardization. Every row sums to zero; rows
// whose source had a non-degenerate cross-channel spread have mean square
// one per channel.
struct NormalizedTrial {
  std::string source;  // trial id
  Matrix phi;          // d x n
};

// Named, ordered channel subset.
struct RegionSpec {
  std::string name;
  std::vector<std::size_t> channels;
};

// One manifest entry; `path` is relative to the manifest file.
struct TrialRef {
  std::string path;
  std::string label;
  std::string subject;
};

struct DatasetManifest {
  std::vector<std::string> channel_names;
  std::vector<RegionSpec> regions;
  std::vector<TrialRef> trials;
  std::size_t samples_per_trial = 0;
};

inline void validate_trial(const Trial& t) {
  if (t.samples.rows() < 2 || t.samples.cols() < 2)
    throw DataError("trial " + t.id + ": needs at least 2 samples and 2 channels, has " +
                    std::to_string(t.samples.rows()) + "x" +
                    std::to_string(t.samples.cols()));
  if (!t.samples.all_finite())
    throw DataError("trial " + t.id + ": non-finite sample value");
}

inline void validate_region(const RegionSpec& region, std::size_t channel_count) {
  if (region.channels.empty())
    throw DataError("region " + region.name + ": empty channel list");
  std::unordered_set<std::size_t> seen;
  for (std::size_t idx : region.channels) {
    if (idx >= channel_count)
      throw DataError("region " + region.name + ": channel index " + std::to_string(idx) +
                      " out of range (dataset has " + std::to_string(channel_count) +
                      " channels)");
    if (!seen.insert(idx).second)
      throw DataError("region " + region.name + ": duplicate channel index " +
                      std::to_string(idx));
  }
}

}  // namespace nucleeg
