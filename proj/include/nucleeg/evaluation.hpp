#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "classifier.hpp"
#include "nuclear.hpp"
#include "rng.hpp"

namespace nucleeg {

struct ConfusionCounts {
  std::size_t tp = 0, tn = 0, fp = 0, fn = 0;

  std::size_t total() const { return tp + tn + fp + fn; }
};

// Percentages in [0,100] and AUC in [0,1]. A ratio whose denominator is
// zero stays unset rather than being coerced to 0 or 100.
struct MetricsReport {
  std::optional<double> accuracy;
  std::optional<double> sensitivity;
  std::optional<double> specificity;
  std::optional<double> auc;
};

struct FoldPlan {
  std::vector<std::vector<std::size_t>> folds;
  std::uint64_t seed = 0;
  bool stratified = true;
};

// Deterministic stratified k-fold assignment: per class, a seeded shuffle
// followed by round-robin dealing, so per-fold class counts differ by at
// most one.
inline FoldPlan kfold_split(const std::vector<std::string>& labels, std::size_t folds,
                            std::uint64_t seed, bool stratified = true) {
  if (folds < 2) throw ConfigError("kfold_split: need at least 2 folds");
  if (labels.size() < folds)
    throw ConfigError("kfold_split: more folds (" + std::to_string(folds) +
                      ") than samples (" + std::to_string(labels.size()) + ")");

  std::vector<std::vector<std::size_t>> groups;
  if (stratified) {
    std::vector<std::string> seen;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      auto it = std::find(seen.begin(), seen.end(), labels[i]);
      if (it == seen.end()) {
        seen.push_back(labels[i]);
        groups.emplace_back();
        it = seen.end() - 1;
      }
      groups[static_cast<std::size_t>(it - seen.begin())].push_back(i);
    }
    for (std::size_t g = 0; g < groups.size(); ++g)
      if (groups[g].size() < folds)
        throw ConfigError("kfold_split: class '" + seen[g] + "' has " +
                          std::to_string(groups[g].size()) + " samples, fewer than " +
                          std::to_string(folds) + " folds");
  } else {
    groups.emplace_back(labels.size());
    std::iota(groups[0].begin(), groups[0].end(), std::size_t{0});
  }

  FoldPlan plan;
  plan.folds.resize(folds);
  plan.seed = seed;
  plan.stratified = stratified;
  Rng rng(seed);
  for (auto& group : groups) {
    rng.shuffle(group);
    for (std::size_t i = 0; i < group.size(); ++i) plan.folds[i % folds].push_back(group[i]);
  }
  for (auto& fold : plan.folds) std::sort(fold.begin(), fold.end());
  return plan;
}

struct SubjectSplit {
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;
  std::vector<std::string> train_subjects;
  std::vector<std::string> test_subjects;
};

// Splits at the subject level so nobody contributes to both sides. The test
// side gets max(1, round(fraction * subjects)) whole subjects.
inline SubjectSplit subject_split(const std::vector<Trial>& trials, double test_fraction,
                                  std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw ConfigError("subject_split: test fraction must be in (0,1)");
  std::vector<std::string> subjects;
  for (const auto& t : trials)
    if (std::find(subjects.begin(), subjects.end(), t.subject) == subjects.end())
      subjects.push_back(t.subject);
  if (subjects.size() < 2) throw ConfigError("subject_split: need at least 2 subjects");

  const auto n_test = static_cast<std::size_t>(std::max<long long>(
      1, std::llround(test_fraction * static_cast<double>(subjects.size()))));
  if (n_test >= subjects.size())
    throw ConfigError("subject_split: fraction leaves no training subjects");

  Rng rng(seed);
  rng.shuffle(subjects);
  SubjectSplit split;
  split.test_subjects.assign(subjects.begin(), subjects.begin() + n_test);
  split.train_subjects.assign(subjects.begin() + n_test, subjects.end());
  const std::unordered_set<std::string> test_set(split.test_subjects.begin(),
                                                 split.test_subjects.end());
  for (std::size_t i = 0; i < trials.size(); ++i) {
    if (test_set.count(trials[i].subject))
      split.test_indices.push_back(i);
    else
      split.train_indices.push_back(i);
  }
  return split;
}

// Standard 2x2 counts against a declared positive class.
inline ConfusionCounts confusion(const std::vector<std::string>& predictions,
                                 const std::vector<std::string>& truth,
                                 const std::string& positive, const std::string& negative) {
  if (predictions.size() != truth.size())
    throw DataError("confusion: " + std::to_string(predictions.size()) +
                    " predictions vs " + std::to_string(truth.size()) + " truth labels");
  ConfusionCounts c;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool actual_pos = truth[i] == positive;
    const bool predicted_pos = predictions[i] == positive;
    if (!actual_pos && truth[i] != negative)
      throw DataError("confusion: unknown truth label '" + truth[i] + "'");
    if (!predicted_pos && predictions[i] != negative)
      throw DataError("confusion: unknown predicted label '" + predictions[i] + "'");
    if (actual_pos)
      predicted_pos ? ++c.tp : ++c.fn;
    else
      predicted_pos ? ++c.fp : ++c.tn;
  }
  return c;
}

inline MetricsReport metrics(const ConfusionCounts& c) {
  if (c.total() == 0) throw DataError("metrics: empty confusion counts");
  MetricsReport m;
  m.accuracy = 100.0 * static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
  if (c.tp + c.fn > 0)
    m.sensitivity = 100.0 * static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  if (c.tn + c.fp > 0)
    m.specificity = 100.0 * static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
  return m;
}

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocResult {
  std::vector<RocPoint> points;
  double auc = 0.0;
};

// Threshold sweep over descending scores; higher score means more positive.
// Tied scores advance as one group, which gives ties half credit in the
// trapezoid area.
inline RocResult roc_auc(const std::vector<double>& scores,
                         const std::vector<std::string>& truth,
                         const std::string& positive) {
  if (scores.size() != truth.size())
    throw DataError("roc_auc: " + std::to_string(scores.size()) + " scores vs " +
                    std::to_string(truth.size()) + " truth labels");
  std::size_t pos = 0;
  for (const auto& t : truth) pos += (t == positive);
  const std::size_t neg = truth.size() - pos;
  if (pos == 0 || neg == 0)
    throw DataError("roc_auc: need both classes present in the truth labels");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  RocResult result;
  result.points.push_back({0.0, 0.0});
  std::size_t tp = 0, fp = 0;
  double area = 0.0;  // in count units, normalized at the end
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    std::size_t group_tp = 0, group_fp = 0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      (truth[order[j]] == positive) ? ++group_tp : ++group_fp;
      ++j;
    }
    area += static_cast<double>(group_fp) *
            (static_cast<double>(tp) + static_cast<double>(group_tp) / 2.0);
    tp += group_tp;
    fp += group_fp;
    result.points.push_back({static_cast<double>(fp) / static_cast<double>(neg),
                             static_cast<double>(tp) / static_cast<double>(pos)});
    i = j;
  }
  result.auc = area / (static_cast<double>(pos) * static_cast<double>(neg));
  return result;
}

// Scatter matrices with prior-weighted population covariances, plus the
// trace and determinant separation criteria.
struct ScatterAnalysis {
  Matrix sw, sb, sm;  // within, between, mixture
  std::optional<double> j1;
  std::optional<double> j2;
  double trace_sw = 0.0, trace_sm = 0.0;
  double det_sw = 0.0, det_sm = 0.0;
};

inline ScatterAnalysis scatter_analysis(const std::vector<LabeledFeature>& samples) {
  if (samples.empty()) throw DataError("scatter_analysis: no samples");
  const std::size_t dim = samples.front().first.size();
  if (dim == 0) throw DataError("scatter_analysis: zero-dimensional features");

  std::array<std::string, 2> labels;
  std::array<std::vector<const std::vector<double>*>, 2> classes;
  std::size_t n_labels = 0;
  for (const auto& [features, label] : samples) {
    if (features.size() != dim) throw DataError("scatter_analysis: mixed feature dimensions");
    std::size_t c = n_labels;
    for (std::size_t i = 0; i < n_labels; ++i)
      if (labels[i] == label) {
        c = i;
        break;
      }
    if (c == n_labels) {
      if (n_labels == 2) throw DataError("scatter_analysis: more than two classes");
      labels[n_labels++] = label;
    }
    classes[c].push_back(&features);
  }
  if (n_labels < 2) throw DataError("scatter_analysis: need exactly two classes");
  for (std::size_t c = 0; c < 2; ++c)
    if (classes[c].size() < 2)
      throw DataError("scatter_analysis: class '" + labels[c] +
                      "' has fewer than 2 samples");

  const double n_total = static_cast<double>(samples.size());
  std::array<std::vector<double>, 2> mean{std::vector<double>(dim, 0.0),
                                          std::vector<double>(dim, 0.0)};
  for (std::size_t c = 0; c < 2; ++c) {
    for (const auto* x : classes[c])
      for (std::size_t i = 0; i < dim; ++i) mean[c][i] += (*x)[i];
    for (double& v : mean[c]) v /= static_cast<double>(classes[c].size());
  }
  std::vector<double> global(dim, 0.0);
  for (std::size_t c = 0; c < 2; ++c) {
    const double prior = static_cast<double>(classes[c].size()) / n_total;
    for (std::size_t i = 0; i < dim; ++i) global[i] += prior * mean[c][i];
  }

  ScatterAnalysis out;
  out.sw = Matrix(dim, dim);
  out.sb = Matrix(dim, dim);
  for (std::size_t c = 0; c < 2; ++c) {
    const double prior = static_cast<double>(classes[c].size()) / n_total;
    const double inv_count = 1.0 / static_cast<double>(classes[c].size());
    for (const auto* x : classes[c])
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
          out.sw(i, j) +=
              prior * inv_count * ((*x)[i] - mean[c][i]) * ((*x)[j] - mean[c][j]);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        out.sb(i, j) += prior * (mean[c][i] - global[i]) * (mean[c][j] - global[j]);
  }
  out.sm = out.sb + out.sw;
  out.trace_sw = out.sw.trace();
  out.trace_sm = out.sm.trace();
  out.det_sw = determinant(out.sw);
  out.det_sm = determinant(out.sm);
  if (out.trace_sw > 0.0) out.j1 = out.trace_sm / out.trace_sw;
  if (out.det_sw > 0.0) out.j2 = out.det_sm / out.det_sw;
  return out;
}

struct FoldResult {
  std::size_t index = 0;
  std::size_t test_size = 0;
  ConfusionCounts counts;
  MetricsReport metrics;
};

struct EvaluationReport {
  std::map<std::string, std::string> provenance;  // flat key=value pairs, hashed
  std::string protocol;                           // "kfold" or "subject-holdout"
  std::array<std::string, 2> labels;
  std::string positive, negative;
  std::string region_name;
  std::size_t region_channels = 0;
  std::size_t k = 0;
  std::vector<FoldResult> folds;
  ConfusionCounts pooled;
  MetricsReport fold_mean;        // unweighted mean across folds
  MetricsReport pooled_metrics;   // from pooled counts; auc from pooled scores
  RocResult roc;                  // pooled held-out scores
  ScatterAnalysis scatter;        // whole feature table
  std::vector<std::string> train_subjects, test_subjects;  // holdout only
  CMMDCModel model;  // kfold: refit on all rows; holdout: the train-side model
};

namespace detail {

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::optional<double> mean_of(const std::vector<std::optional<double>>& values) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& v : values)
    if (v) {
      sum += *v;
      ++count;
    }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

struct LabelPair {
  std::array<std::string, 2> labels;
  std::string positive, negative;
};

inline LabelPair resolve_labels(const std::vector<FeatureRow>& rows,
                                const std::string& requested_positive) {
  std::vector<std::string> seen;
  for (const auto& row : rows)
    if (std::find(seen.begin(), seen.end(), row.label) == seen.end())
      seen.push_back(row.label);
  if (seen.size() != 2)
    throw DataError("evaluation: need exactly 2 classes, found " +
                    std::to_string(seen.size()));
  LabelPair pair{{seen[0], seen[1]}, "", ""};
  if (requested_positive.empty()) {
    pair.positive = seen[1];  // second label in manifest order
    pair.negative = seen[0];
  } else if (requested_positive == seen[0]) {
    pair.positive = seen[0];
    pair.negative = seen[1];
  } else if (requested_positive == seen[1]) {
    pair.positive = seen[1];
    pair.negative = seen[0];
  } else {
    throw ConfigError("positive class '" + requested_positive +
                      "' not among dataset labels ('" + seen[0] + "', '" + seen[1] + "')");
  }
  return pair;
}

inline std::vector<LabeledFeature> to_labeled(const std::vector<FeatureRow>& rows) {
  std::vector<LabeledFeature> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.emplace_back(row.values, row.label);
  return out;
}

inline std::string format_u64(std::uint64_t v) { return std::to_string(v); }

}  // namespace detail

struct EvalConfig {
  std::size_t k = 2;
  std::size_t folds = 10;
  std::uint64_t seed = 1;
  std::string positive;  // empty: second label in first-appearance order
  double epsilon = 1e-12;
  bool spectrum_of_signal = false;
};

// Stratified k-fold cross-validation over the extracted feature table.
// Per-fold metrics plus their unweighted mean, pooled confusion/metrics,
// pooled-score ROC/AUC and the scatter criteria of the full table.
inline EvaluationReport crossval(const std::vector<Trial>& trials, const RegionSpec& region,
                                 const EvalConfig& cfg) {
  ExtractOptions opts{cfg.k, cfg.epsilon, cfg.spectrum_of_signal, {}};
  const std::vector<FeatureRow> rows = extract_feature_table(trials, region, opts);
  const auto pair = detail::resolve_labels(rows, cfg.positive);

  std::vector<std::string> labels(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) labels[i] = rows[i].label;
  const FoldPlan plan = kfold_split(labels, cfg.folds, cfg.seed);

  EvaluationReport report;
  report.protocol = "kfold";
  report.labels = pair.labels;
  report.positive = pair.positive;
  report.negative = pair.negative;
  report.region_name = region.name;
  report.region_channels = region.channels.size();
  report.k = cfg.k;

  std::vector<double> pooled_scores;
  std::vector<std::string> pooled_truth;
  std::vector<std::optional<double>> acc, sens, spec, aucs;
  for (std::size_t f = 0; f < plan.folds.size(); ++f) {
    const auto& test = plan.folds[f];
    std::vector<std::size_t> in_test(rows.size(), 0);
    for (std::size_t idx : test) in_test[idx] = 1;
    std::vector<LabeledFeature> train;
    train.reserve(rows.size() - test.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (!in_test[i]) train.emplace_back(rows[i].values, rows[i].label);
    const CMMDCModel model = fit(train);

    std::vector<std::string> predictions, truth;
    std::vector<double> fold_scores;
    predictions.reserve(test.size());
    for (std::size_t idx : test) {
      predictions.push_back(predict(model, rows[idx].values));
      truth.push_back(rows[idx].label);
      fold_scores.push_back(score(model, rows[idx].values));
    }

    FoldResult fr;
    fr.index = f;
    fr.test_size = test.size();
    fr.counts = confusion(predictions, truth, pair.positive, pair.negative);
    fr.metrics = metrics(fr.counts);
    fr.metrics.auc = roc_auc(fold_scores, truth, pair.positive).auc;
    report.folds.push_back(fr);

    report.pooled.tp += fr.counts.tp;
    report.pooled.tn += fr.counts.tn;
    report.pooled.fp += fr.counts.fp;
    report.pooled.fn += fr.counts.fn;
    acc.push_back(fr.metrics.accuracy);
    sens.push_back(fr.metrics.sensitivity);
    spec.push_back(fr.metrics.specificity);
    aucs.push_back(fr.metrics.auc);
    for (std::size_t i = 0; i < test.size(); ++i) {
      pooled_scores.push_back(fold_scores[i]);
      pooled_truth.push_back(truth[i]);
    }
  }

  report.fold_mean.accuracy = detail::mean_of(acc);
  report.fold_mean.sensitivity = detail::mean_of(sens);
  report.fold_mean.specificity = detail::mean_of(spec);
  report.fold_mean.auc = detail::mean_of(aucs);
  report.roc = roc_auc(pooled_scores, pooled_truth, pair.positive);
  report.pooled_metrics = metrics(report.pooled);
  report.pooled_metrics.auc = report.roc.auc;
  report.scatter = scatter_analysis(detail::to_labeled(rows));
  report.model = fit(detail::to_labeled(rows));

  report.provenance["protocol"] = "kfold";
  report.provenance["region"] = region.name;
  report.provenance["k"] = std::to_string(cfg.k);
  report.provenance["folds"] = std::to_string(cfg.folds);
  report.provenance["seed"] = detail::format_u64(cfg.seed);
  report.provenance["positive"] = pair.positive;
  report.provenance["n_trials"] = std::to_string(trials.size());
  return report;
}

// Subject-held-out evaluation: whole subjects go to one side or the other,
// one model is fit on the training side and scored on the held-out side.
inline EvaluationReport subject_holdout(const std::vector<Trial>& trials,
                                        const RegionSpec& region, double test_fraction,
                                        const EvalConfig& cfg) {
  const SubjectSplit split = subject_split(trials, test_fraction, cfg.seed);
  ExtractOptions opts{cfg.k, cfg.epsilon, cfg.spectrum_of_signal, {}};
  const std::vector<FeatureRow> rows = extract_feature_table(trials, region, opts);
  const auto pair = detail::resolve_labels(rows, cfg.positive);

  std::vector<LabeledFeature> train;
  for (std::size_t idx : split.train_indices) train.emplace_back(rows[idx].values, rows[idx].label);
  const CMMDCModel model = fit(train);

  std::vector<std::string> predictions, truth;
  std::vector<double> scores;
  for (std::size_t idx : split.test_indices) {
    predictions.push_back(predict(model, rows[idx].values));
    truth.push_back(rows[idx].label);
    scores.push_back(score(model, rows[idx].values));
  }

  EvaluationReport report;
  report.protocol = "subject-holdout";
  report.labels = pair.labels;
  report.positive = pair.positive;
  report.negative = pair.negative;
  report.region_name = region.name;
  report.region_channels = region.channels.size();
  report.k = cfg.k;
  report.train_subjects = split.train_subjects;
  report.test_subjects = split.test_subjects;

  FoldResult fr;
  fr.index = 0;
  fr.test_size = split.test_indices.size();
  fr.counts = confusion(predictions, truth, pair.positive, pair.negative);
  fr.metrics = metrics(fr.counts);
  report.roc = roc_auc(scores, truth, pair.positive);
  fr.metrics.auc = report.roc.auc;
  report.folds.push_back(fr);
  report.pooled = fr.counts;
  report.fold_mean = fr.metrics;
  report.pooled_metrics = fr.metrics;
  report.scatter = scatter_analysis(detail::to_labeled(rows));
  report.model = model;

  report.provenance["protocol"] = "subject-holdout";
  report.provenance["region"] = region.name;
  report.provenance["k"] = std::to_string(cfg.k);
  report.provenance["test_fraction"] = std::to_string(test_fraction);
  report.provenance["seed"] = detail::format_u64(cfg.seed);
  report.provenance["positive"] = pair.positive;
  report.provenance["n_trials"] = std::to_string(trials.size());
  return report;
}

namespace detail {

inline nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline nlohmann::json opt_to_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

inline nlohmann::json metrics_to_json(const MetricsReport& m) {
  return {{"accuracy", opt_to_json(m.accuracy)},
          {"sensitivity", opt_to_json(m.sensitivity)},
          {"specificity", opt_to_json(m.specificity)},
          {"auc", opt_to_json(m.auc)}};
}

inline nlohmann::json confusion_to_json(const ConfusionCounts& c) {
  return {{"tp", c.tp}, {"tn", c.tn}, {"fp", c.fp}, {"fn", c.fn}};
}

}  // namespace detail

// The provenance hash covers every provenance entry (sorted by key), so any
// config change shows up as a different hash.
inline std::string config_hash(const std::map<std::string, std::string>& provenance) {
  std::string canonical;
  for (const auto& [key, value] : provenance) {
    if (key == "config_hash") continue;
    canonical += key;
    canonical += '=';
    canonical += value;
    canonical += ';';
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(detail::fnv1a(canonical)));
  return buf;
}

inline nlohmann::json report_to_json(const EvaluationReport& report) {
  nlohmann::json j;
  j["provenance"] = report.provenance;
  j["provenance"]["config_hash"] = config_hash(report.provenance);
  j["protocol"] = report.protocol;
  j["labels"] = report.labels;
  j["positive"] = report.positive;
  j["negative"] = report.negative;
  j["region"] = {{"name", report.region_name}, {"channels", report.region_channels}};
  j["k"] = report.k;

  nlohmann::json folds = nlohmann::json::array();
  for (const auto& fr : report.folds)
    folds.push_back({{"fold", fr.index},
                     {"test_size", fr.test_size},
                     {"confusion", detail::confusion_to_json(fr.counts)},
                     {"metrics", detail::metrics_to_json(fr.metrics)}});
  j["folds"] = std::move(folds);

  j["aggregate"] = {{"fold_mean", detail::metrics_to_json(report.fold_mean)},
                    {"pooled_confusion", detail::confusion_to_json(report.pooled)},
                    {"pooled_metrics", detail::metrics_to_json(report.pooled_metrics)},
                    {"auc", report.roc.auc}};

  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : report.roc.points) points.push_back({p.fpr, p.tpr});
  j["roc"] = {{"points", std::move(points)}, {"auc", report.roc.auc}};

  j["scatter"] = {{"sw", detail::matrix_to_json(report.scatter.sw)},
                  {"sb", detail::matrix_to_json(report.scatter.sb)},
                  {"sm", detail::matrix_to_json(report.scatter.sm)},
                  {"j1", detail::opt_to_json(report.scatter.j1)},
                  {"j2", detail::opt_to_json(report.scatter.j2)},
                  {"j1_defined", report.scatter.j1.has_value()},
                  {"j2_defined", report.scatter.j2.has_value()},
                  {"trace_sw", report.scatter.trace_sw},
                  {"trace_sm", report.scatter.trace_sm},
                  {"det_sw", report.scatter.det_sw},
                  {"det_sm", report.scatter.det_sm}};

  if (report.protocol == "subject-holdout")
    j["subjects"] = {{"train", report.train_subjects}, {"test", report.test_subjects}};
  return j;
}

inline void write_report(const EvaluationReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write report file " + path.string());
  out << report_to_json(report).dump(2) << '\n';
}

}  // namespace nucleeg
