#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "jacobi.hpp"
#include "parallel.hpp"
#include "signal.hpp"

namespace nucleeg {

// Gram matrix of the standardized channel signals: n x n, symmetric,
// positive semidefinite.
struct NuclearMatrix {
  std::string source;  // trial id
  Matrix entries;
};

// All singular values, descending, round-off negatives clamped to zero.
struct SingularSpectrum {
  std::vector<double> values;
};

inline NuclearMatrix nuclear_matrix(const NormalizedTrial& normalized) {
  return NuclearMatrix{normalized.source, gram(normalized.phi)};
}

// For a symmetric PSD matrix the singular values coincide with the
// eigenvalues. Negative round-off down to -1e-9 * trace is clamped to zero;
// anything more negative means the input was not PSD.
inline SingularSpectrum singular_values(const NuclearMatrix& nuclear,
                                        const JacobiOptions& opts = {}) {
  const Matrix& m = nuclear.entries;
  if (m.rows() != m.cols())
    throw DataError("singular_values: nuclear matrix not square (" + nuclear.source + ")");
  const double scale = m.max_abs();
  Matrix sym(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - m(j, i)) > 1e-10 * scale)
        throw DataError("singular_values: matrix not symmetric (" + nuclear.source + ")");
      sym(i, j) = 0.5 * (m(i, j) + m(j, i));
    }

  std::vector<double> values = symmetric_eigenvalues(sym, opts);
  const double floor = -1e-9 * std::max(sym.trace(), 0.0);
  for (double& v : values) {
    if (v < floor)
      throw DataError("singular_values: matrix not positive semidefinite (" +
                      nuclear.source + ", eigenvalue " + std::to_string(v) + ")");
    if (v < 0.0) v = 0.0;
  }
  return SingularSpectrum{std::move(values)};
}

struct ExtractOptions {
  std::size_t k = 2;
  double epsilon = 1e-12;
  // Escape hatch: take the singular values of the standardized signal matrix
  // itself instead of its Gram matrix (they differ by a squaring).
  bool spectrum_of_signal = false;
  JacobiOptions jacobi{};
};

// The whole per-trial pipeline: region selection, standardization, Gram
// matrix, spectrum, then the k dominant values.
inline std::vector<double> extract_features(const Trial& trial, const RegionSpec& region,
                                            const ExtractOptions& opts = {}) {
  if (opts.k < 1 || opts.k > region.channels.size())
    throw ConfigError("feature count k=" + std::to_string(opts.k) +
                      " out of range for region " + region.name + " (" +
                      std::to_string(region.channels.size()) + " channels)");
  const Trial selected = region_select(trial, region);
  const NormalizedTrial normalized = normalize(selected, opts.epsilon);
  std::vector<double> values;
  if (opts.spectrum_of_signal)
    values = singular_values_of(normalized.phi, opts.jacobi);
  else
    values = singular_values(nuclear_matrix(normalized), opts.jacobi).values;
  values.resize(opts.k);
  return values;
}

// Sum of all singular values; the input may be rectangular.
inline double nuclear_norm(const Matrix& m, const JacobiOptions& opts = {}) {
  if (!m.all_finite()) throw DataError("nuclear_norm: non-finite entries");
  double sum = 0.0;
  for (double s : singular_values_of(m, opts)) sum += s;
  return sum;
}

// One row of the feature table the CLI dumps and the evaluation consumes.
struct FeatureRow {
  std::string trial_id;
  std::string label;
  std::string subject;
  std::vector<double> values;
};

// Per-trial extraction is independent; each row is written by index, so the
// table is identical to the serial result.
inline std::vector<FeatureRow> extract_feature_table(const std::vector<Trial>& trials,
                                                     const RegionSpec& region,
                                                     const ExtractOptions& opts = {}) {
  std::vector<FeatureRow> rows(trials.size());
  parallel_for(trials.size(), [&](std::size_t i) {
    rows[i] = FeatureRow{trials[i].id, trials[i].label, trials[i].subject,
                         extract_features(trials[i], region, opts)};
  });
  return rows;
}

// Full spectra (one value per region channel), for spectrum plots.
inline std::vector<FeatureRow> extract_spectrum_table(const std::vector<Trial>& trials,
                                                      const RegionSpec& region,
                                                      const ExtractOptions& opts = {}) {
  ExtractOptions full = opts;
  full.k = region.channels.size();
  return extract_feature_table(trials, region, full);
}

}  // namespace nucleeg
