#pragma once

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"

namespace nucleeg {

using LabeledFeature = std::pair<std::vector<double>, std::string>;

// Class-means minimum-distance model: the two labels (in first-appearance
// order) and their feature-space means. Nothing else is retained from the
// training set.
struct CMMDCModel {
  std::array<std::string, 2> class_labels;
  std::array<std::vector<double>, 2> means;

  std::size_t dim() const { return means[0].size(); }
};

inline CMMDCModel fit(const std::vector<LabeledFeature>& samples) {
  if (samples.empty()) throw DataError("fit: no training samples");
  const std::size_t dim = samples.front().first.size();
  if (dim == 0) throw DataError("fit: zero-dimensional features");

  std::array<std::string, 2> labels;
  std::array<std::vector<double>, 2> sums{std::vector<double>(dim, 0.0),
                                          std::vector<double>(dim, 0.0)};
  std::array<std::size_t, 2> counts{0, 0};
  std::size_t n_labels = 0;
  for (const auto& [features, label] : samples) {
    if (features.size() != dim)
      throw DataError("fit: mixed feature dimensions (" + std::to_string(features.size()) +
                      " vs " + std::to_string(dim) + ")");
    std::size_t c = n_labels;
    for (std::size_t i = 0; i < n_labels; ++i)
      if (labels[i] == label) {
        c = i;
        break;
      }
    if (c == n_labels) {
      if (n_labels == 2)
        throw DataError("fit: more than two classes (extra label '" + label + "')");
      labels[n_labels++] = label;
    }
    for (std::size_t i = 0; i < dim; ++i) sums[c][i] += features[i];
    ++counts[c];
  }
  if (n_labels < 2) throw DataError("fit: need samples from exactly two classes");

  CMMDCModel model{labels, {}};
  for (std::size_t c = 0; c < 2; ++c) {
    model.means[c].resize(dim);
    for (std::size_t i = 0; i < dim; ++i)
      model.means[c][i] = sums[c][i] / static_cast<double>(counts[c]);
  }
  return model;
}

namespace detail {

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline void check_dim(const CMMDCModel& model, std::span<const double> x) {
  if (x.size() != model.dim())
    throw DataError("query dimension " + std::to_string(x.size()) +
                    " does not match model dimension " + std::to_string(model.dim()));
}

}  // namespace detail

// Label of the nearer class mean; an exact tie goes to the first class.
inline const std::string& predict(const CMMDCModel& model, std::span<const double> x) {
  detail::check_dim(model, x);
  const double d1 = detail::squared_distance(x, model.means[0]);
  const double d2 = detail::squared_distance(x, model.means[1]);
  return d1 <= d2 ? model.class_labels[0] : model.class_labels[1];
}

// Signed margin d(x, mean1) - d(x, mean2) in Euclidean distance. Positive
// favors the second class; used as the ranking score for ROC curves.
inline double score(const CMMDCModel& model, std::span<const double> x) {
  detail::check_dim(model, x);
  return std::sqrt(detail::squared_distance(x, model.means[0])) -
         std::sqrt(detail::squared_distance(x, model.means[1]));
}

inline void save_model(const CMMDCModel& model, const std::filesystem::path& path) {
  nlohmann::json j;
  j["class_labels"] = model.class_labels;
  j["means"] = model.means;
  j["k"] = model.dim();
  j["metric"] = "euclidean";
  std::ofstream out(path);
  if (!out) throw IoError("cannot write model file " + path.string());
  out << j.dump(2) << '\n';
}

inline CMMDCModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read model file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("model file " + path.string() + ": " + e.what());
  }
  CMMDCModel model;
  try {
    j.at("class_labels").get_to(model.class_labels);
    j.at("means").get_to(model.means);
    if (j.at("metric").get<std::string>() != "euclidean")
      throw DataError("model file " + path.string() + ": unsupported metric");
    if (j.at("k").get<std::size_t>() != model.means[0].size())
      throw DataError("model file " + path.string() + ": k does not match means");
  } catch (const nlohmann::json::exception& e) {
    throw DataError("model file " + path.string() + ": " + e.what());
  }
  if (model.class_labels[0] == model.class_labels[1])
    throw DataError("model file " + path.string() + ": class labels not distinct");
  if (model.means[0].size() != model.means[1].size() || model.means[0].empty())
    throw DataError("model file " + path.string() + ": malformed means");
  return model;
}

}  // namespace nucleeg
