#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "nuclear.hpp"
#include "trial.hpp"

namespace nucleeg {

// Shortest representation that round-trips a double exactly.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline double parse_double(std::string_view field, const std::string& where) {
  // trim spaces so hand-edited files are accepted
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t'))
    field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t'))
    field.remove_suffix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    throw DataError(where + ": cannot parse '" + std::string(field) + "' as a number");
  return value;
}

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      fields.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return fields;
}

}  // namespace detail

// Trial files: one row per time sample, one column per channel, '.' decimal,
// no header.
inline Matrix read_trial_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trial file " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = detail::split_csv_line(line);
    std::vector<double> row;
    row.reserve(fields.size());
    const std::string where = path.string() + ":" + std::to_string(line_no);
    for (const auto f : fields) row.push_back(detail::parse_double(f, where));
    if (!rows.empty() && row.size() != rows.front().size())
      throw DataError(where + ": row has " + std::to_string(row.size()) +
                      " columns, expected " + std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("trial file " + path.string() + " is empty");
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  return m;
}

inline void write_trial_csv(const Matrix& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write trial file " + path.string());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << format_double(m(r, c));
    }
    out << '\n';
  }
}

inline DatasetManifest parse_manifest(const nlohmann::json& j) {
  DatasetManifest m;
  try {
    j.at("channels").get_to(m.channel_names);
    m.samples_per_trial = j.at("samples_per_trial").get<std::size_t>();
    for (const auto& r : j.at("regions")) {
      RegionSpec spec;
      r.at("name").get_to(spec.name);
      r.at("channel_indices").get_to(spec.channels);
      m.regions.push_back(std::move(spec));
    }
    for (const auto& t : j.at("trials")) {
      TrialRef ref;
      t.at("path").get_to(ref.path);
      t.at("label").get_to(ref.label);
      t.at("subject").get_to(ref.subject);
      m.trials.push_back(std::move(ref));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("manifest: ") + e.what());
  }
  return m;
}

inline nlohmann::json manifest_to_json(const DatasetManifest& m) {
  nlohmann::json j;
  j["channels"] = m.channel_names;
  j["samples_per_trial"] = m.samples_per_trial;
  j["regions"] = nlohmann::json::array();
  for (const auto& r : m.regions)
    j["regions"].push_back({{"name", r.name}, {"channel_indices", r.channels}});
  j["trials"] = nlohmann::json::array();
  for (const auto& t : m.trials)
    j["trials"].push_back({{"path", t.path}, {"label", t.label}, {"subject", t.subject}});
  return j;
}

inline DatasetManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("manifest " + path.string() + ": " + e.what());
  }
  return parse_manifest(j);
}

// The two class labels in first-appearance (manifest) order.
inline std::array<std::string, 2> dataset_labels(const DatasetManifest& m) {
  std::vector<std::string> seen;
  for (const auto& t : m.trials)
    if (std::find(seen.begin(), seen.end(), t.label) == seen.end()) seen.push_back(t.label);
  if (seen.size() != 2)
    throw DataError("manifest: need exactly 2 distinct labels, found " +
                    std::to_string(seen.size()));
  return {seen[0], seen[1]};
}

struct Dataset {
  DatasetManifest manifest;
  std::vector<Trial> trials;
};

// Loads and validates every trial listed by the manifest, in manifest order.
// Trial ids are the file stems, which must be unique within the dataset.
inline Dataset load_dataset(const std::filesystem::path& manifest_path) {
  Dataset ds;
  ds.manifest = read_manifest(manifest_path);
  if (ds.manifest.channel_names.size() < 2)
    throw DataError("manifest: need at least 2 channels");
  if (ds.manifest.samples_per_trial < 2)
    throw DataError("manifest: samples_per_trial must be at least 2");
  if (ds.manifest.trials.empty()) throw DataError("manifest lists no trials");
  for (const auto& r : ds.manifest.regions)
    validate_region(r, ds.manifest.channel_names.size());
  dataset_labels(ds.manifest);  // exactly-two-classes check

  const auto base = manifest_path.parent_path();
  std::unordered_set<std::string> ids;
  ds.trials.reserve(ds.manifest.trials.size());
  for (const auto& ref : ds.manifest.trials) {
    Trial trial;
    trial.id = std::filesystem::path(ref.path).stem().string();
    trial.label = ref.label;
    trial.subject = ref.subject;
    if (!ids.insert(trial.id).second)
      throw DataError("duplicate trial id '" + trial.id + "' in manifest");
    trial.samples = read_trial_csv(base / ref.path);
    if (trial.samples.rows() != ds.manifest.samples_per_trial)
      throw DataError("trial " + trial.id + ": expected " +
                      std::to_string(ds.manifest.samples_per_trial) + " rows, found " +
                      std::to_string(trial.samples.rows()));
    if (trial.samples.cols() != ds.manifest.channel_names.size())
      throw DataError("trial " + trial.id + ": expected " +
                      std::to_string(ds.manifest.channel_names.size()) +
                      " channels, found " + std::to_string(trial.samples.cols()));
    validate_trial(trial);
    ds.trials.push_back(std::move(trial));
  }
  return ds;
}

// Writes manifest.json plus one CSV per trial at the manifest's relative
// paths. Inverse of load_dataset.
inline void write_dataset(const Dataset& ds, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string());
  if (ds.trials.size() != ds.manifest.trials.size())
    throw DataError("write_dataset: manifest and trial list sizes differ");
  for (std::size_t i = 0; i < ds.trials.size(); ++i) {
    const auto path = dir / ds.manifest.trials[i].path;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string());
    write_trial_csv(ds.trials[i].samples, path);
  }
  std::ofstream out(dir / "manifest.json");
  if (!out) throw IoError("cannot write manifest in " + dir.string());
  out << manifest_to_json(ds.manifest).dump(2) << '\n';
}

// Region lookup by name. ALL falls back to the full channel list when the
// manifest does not define it explicitly.
inline RegionSpec find_region(const DatasetManifest& m, const std::string& name) {
  for (const auto& r : m.regions)
    if (r.name == name) return r;
  if (name == "ALL") {
    RegionSpec all{"ALL", {}};
    all.channels.resize(m.channel_names.size());
    std::iota(all.channels.begin(), all.channels.end(), std::size_t{0});
    return all;
  }
  std::string known;
  for (const auto& r : m.regions) known += (known.empty() ? "" : ", ") + r.name;
  throw ConfigError("unknown region '" + name + "' (manifest defines: " +
                    (known.empty() ? std::string("none") : known) + ", plus ALL)");
}

// Contiguous-block layout for the five named scalp regions (8, 16, 20, 18
// and 18 channels); available once a dataset has at least 80 channels. ALL
// always spans the dataset.
inline std::vector<RegionSpec> scalp_region_preset(std::size_t n_channels) {
  std::vector<RegionSpec> regions;
  auto block = [](std::string name, std::size_t from, std::size_t to) {
    RegionSpec r{std::move(name), {}};
    for (std::size_t i = from; i < to; ++i) r.channels.push_back(i);
    return r;
  };
  if (n_channels >= 80) {
    regions.push_back(block("TEMP", 0, 8));
    regions.push_back(block("FRONT", 8, 24));
    regions.push_back(block("CENT", 24, 44));
    regions.push_back(block("PERI", 44, 62));
    regions.push_back(block("OCCIP", 62, 80));
  } else {
    // desk-scale sets still get a FRONT-sized handle
    regions.push_back(block("FRONT", 0, std::min<std::size_t>(16, n_channels)));
  }
  regions.push_back(block("ALL", 0, n_channels));
  return regions;
}

// Feature table CSV: trial_id,label,subject,f1..fk (or s1..sn for spectra).
// The column count is explicit so an empty table still gets a full header.
inline void write_feature_csv(const std::vector<FeatureRow>& rows,
                              const std::filesystem::path& path, std::size_t columns,
                              const std::string& value_prefix = "f") {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write feature file " + path.string());
  out << "trial_id,label,subject";
  for (std::size_t i = 1; i <= columns; ++i) out << ',' << value_prefix << i;
  out << '\n';
  for (const auto& row : rows) {
    if (row.values.size() != columns)
      throw DataError("feature row " + row.trial_id + " has " +
                      std::to_string(row.values.size()) + " values, expected " +
                      std::to_string(columns));
    out << row.trial_id << ',' << row.label << ',' << row.subject;
    for (double v : row.values) out << ',' << format_double(v);
    out << '\n';
  }
}

inline std::vector<FeatureRow> read_feature_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open feature file " + path.string());
  std::string line;
  if (!std::getline(in, line))
    throw DataError("feature file " + path.string() + " is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = detail::split_csv_line(line);
  if (header.size() < 3 || header[0] != "trial_id" || header[1] != "label" ||
      header[2] != "subject")
    throw DataError("feature file " + path.string() +
                    ": expected header trial_id,label,subject,f1,...");
  const std::size_t k = header.size() - 3;

  std::vector<FeatureRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = detail::split_csv_line(line);
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (fields.size() != header.size())
      throw DataError(where + ": expected " + std::to_string(header.size()) + " fields");
    FeatureRow row{std::string(fields[0]), std::string(fields[1]), std::string(fields[2]), {}};
    row.values.reserve(k);
    for (std::size_t i = 3; i < fields.size(); ++i)
      row.values.push_back(detail::parse_double(fields[i], where));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace nucleeg
