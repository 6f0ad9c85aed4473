// Command-line front end: synth -> extract -> crossval -> plot.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <nucleeg/nucleeg.hpp>

namespace {

// Exit codes: 0 success, 2 configuration, 3 data, 4 I/O.
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitIo = 4;

namespace fs = std::filesystem;
using namespace nucleeg;

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string());
}

struct LoadFlags {
  std::string manifest;
  std::optional<double> reject_threshold;
};

struct LoadedTrials {
  Dataset dataset;
  std::vector<Trial> trials;  // after optional rejection
  std::vector<std::string> rejected;
};

LoadedTrials load_trials(const LoadFlags& flags) {
  LoadedTrials out;
  out.dataset = load_dataset(flags.manifest);
  if (flags.reject_threshold) {
    auto result = amplitude_reject(std::move(out.dataset.trials), *flags.reject_threshold);
    out.trials = std::move(result.kept);
    out.rejected = std::move(result.rejected);
    out.dataset.trials.clear();
  } else {
    out.trials = std::move(out.dataset.trials);
    out.dataset.trials.clear();
  }
  return out;
}

std::string format_metric(const std::optional<double>& v, const char* fmt) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, fmt, *v);
  return buf;
}

std::string summary_table(const EvaluationReport& report) {
  char line[256];
  std::string text = "region  k  channels  accuracy  sensitivity  specificity  auc\n";
  std::snprintf(line, sizeof line, "%-7s %-2zu %-9zu %-9s %-12s %-12s %s\n",
                report.region_name.c_str(), report.k, report.region_channels,
                format_metric(report.fold_mean.accuracy, "%.2f").c_str(),
                format_metric(report.fold_mean.sensitivity, "%.2f").c_str(),
                format_metric(report.fold_mean.specificity, "%.2f").c_str(),
                format_metric(report.roc.auc, "%.4f").c_str());
  text += line;
  return text;
}

int cmd_synth(const GeneratorConfig& gen, const ArtifactConfig& art, bool with_artifacts,
              const std::string& out_dir) {
  Dataset ds = generate_dataset(gen);
  if (with_artifacts) ds.trials = inject_artifacts(std::move(ds.trials), art);
  write_dataset(ds, out_dir);
  std::cout << "wrote " << ds.trials.size() << " trials + manifest to " << out_dir
            << " (seed " << gen.seed << ", separation " << gen.separation << ")\n";
  return 0;
}

int cmd_extract(const LoadFlags& flags, const std::string& region_name, std::size_t k,
                double epsilon, const std::string& out_dir) {
  LoadedTrials loaded = load_trials(flags);
  const RegionSpec region = find_region(loaded.dataset.manifest, region_name);
  ExtractOptions opts;
  opts.k = k;
  opts.epsilon = epsilon;
  const auto features = extract_feature_table(loaded.trials, region, opts);
  const auto spectra = extract_spectrum_table(loaded.trials, region, opts);

  ensure_dir(out_dir);
  const fs::path out(out_dir);
  write_feature_csv(features, out / "features.csv", k, "f");
  write_feature_csv(spectra, out / "spectra.csv", region.channels.size(), "s");
  if (flags.reject_threshold) {
    std::ofstream log(out / "rejected.txt");
    if (!log) throw IoError("cannot write rejection log in " + out_dir);
    for (const auto& id : loaded.rejected) log << id << '\n';
  }
  std::cout << "extracted " << features.size() << " trials (region " << region.name
            << ", k=" << k << ", " << loaded.rejected.size() << " rejected) to " << out_dir
            << '\n';
  return 0;
}

int cmd_crossval(const LoadFlags& flags, const std::string& region_name,
                 const EvalConfig& cfg, std::optional<double> subject_fraction,
                 const std::string& out_dir) {
  LoadedTrials loaded = load_trials(flags);
  const RegionSpec region = find_region(loaded.dataset.manifest, region_name);

  EvaluationReport report =
      subject_fraction ? subject_holdout(loaded.trials, region, *subject_fraction, cfg)
                       : crossval(loaded.trials, region, cfg);
  report.provenance["manifest"] = flags.manifest;
  if (flags.reject_threshold) {
    report.provenance["reject_threshold"] = format_double(*flags.reject_threshold);
    report.provenance["rejected"] = std::to_string(loaded.rejected.size());
  }

  ensure_dir(out_dir);
  const fs::path out(out_dir);
  write_report(report, out / "report.json");
  save_model(report.model, out / "model.json");
  const std::string table = summary_table(report);
  std::ofstream summary(out / "summary.txt");
  if (!summary) throw IoError("cannot write summary in " + out_dir);
  summary << table;
  std::cout << table;
  return 0;
}

int cmd_plot(const std::string& features_path, const std::string& spectra_path,
             const std::string& out_dir) {
  const auto rows = read_feature_csv(features_path);
  if (rows.empty()) throw DataError("feature file " + features_path + " has no data rows");
  ensure_dir(out_dir);
  const fs::path out(out_dir);

  if (rows.front().values.size() >= 2) {
    write_scatter_svg(rows, out / "scatter.svg");
    write_scatter_csv(rows, out / "scatter.csv");
  } else {
    std::cerr << "plot: fewer than 2 features per row, skipping the scatter plot\n";
  }
  const HistogramBins bins = histogram_first_feature(rows);
  write_histogram_svg(bins, out / "hist_f1.svg");
  write_histogram_csv(bins, out / "hist_f1.csv");
  if (!spectra_path.empty()) {
    const auto spectra = read_feature_csv(spectra_path);
    if (spectra.empty())
      throw DataError("spectrum file " + spectra_path + " has no data rows");
    write_spectrum_svg(spectra, out / "spectrum.svg");
    write_spectrum_csv(spectra, out / "spectrum.csv");
  }
  std::cout << "wrote plot data for " << rows.size() << " trials to " << out_dir << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gram-spectrum features and class-means classification for "
               "multichannel trials"};
  app.require_subcommand(1);

  // synth
  GeneratorConfig gen;
  ArtifactConfig art;
  std::string synth_out;
  bool artifact_seed_set = false;
  auto* synth = app.add_subcommand("synth", "generate a seeded synthetic dataset");
  synth->add_option("--channels", gen.n_channels, "channel count")->capture_default_str();
  synth->add_option("--samples", gen.d_samples, "samples per trial")->capture_default_str();
  synth->add_option("--trials", gen.trials_per_class, "trials per class")
      ->capture_default_str();
  synth->add_option("--subjects", gen.subjects, "subject count")->capture_default_str();
  synth->add_option("--separation", gen.separation, "class separation, 0 = identical")
      ->capture_default_str();
  synth->add_option("--rank-a", gen.class_factor_ranks.first, "latent rank of class A")
      ->capture_default_str();
  synth->add_option("--rank-b", gen.class_factor_ranks.second, "latent rank of class B")
      ->capture_default_str();
  synth->add_option("--seed", gen.seed, "generator seed")->capture_default_str();
  synth->add_option("--artifact-rate", art.rate, "fraction of trials pulsed")
      ->capture_default_str();
  synth->add_option("--artifact-amplitude", art.amplitude, "pulse peak")
      ->capture_default_str();
  synth->add_option("--artifact-width", art.width, "pulse width in samples")
      ->capture_default_str();
  synth->add_option("--artifact-seed", art.seed, "pulse seed (defaults to --seed)")
      ->each([&](const std::string&) { artifact_seed_set = true; });
  synth->add_option("--out", synth_out, "output directory")->required();

  // extract
  LoadFlags extract_flags;
  std::string extract_region = "ALL";
  std::size_t extract_k = 2;
  double extract_epsilon = 1e-12;
  std::string extract_out;
  double extract_threshold = 0.0;
  auto* extract = app.add_subcommand("extract", "dump feature and spectrum tables");
  extract->add_option("--manifest", extract_flags.manifest, "dataset manifest")->required();
  extract->add_option("--region", extract_region, "region name")->capture_default_str();
  extract->add_option("--k", extract_k, "feature count")->capture_default_str();
  auto* ethr = extract->add_option("--reject-threshold", extract_threshold,
                                   "enable amplitude rejection at this threshold");
  extract->add_option("--epsilon", extract_epsilon, "degenerate-spread cutoff")
      ->capture_default_str();
  extract->add_option("--out", extract_out, "output directory")->required();

  // crossval
  LoadFlags cv_flags;
  std::string cv_region = "ALL";
  EvalConfig cv_cfg;
  double cv_threshold = 0.0;
  double cv_subject_fraction = 0.0;
  std::string cv_out;
  auto* cv = app.add_subcommand("crossval", "cross-validated evaluation report");
  cv->add_option("--manifest", cv_flags.manifest, "dataset manifest")->required();
  cv->add_option("--region", cv_region, "region name")->capture_default_str();
  cv->add_option("--k", cv_cfg.k, "feature count")->capture_default_str();
  cv->add_option("--folds", cv_cfg.folds, "fold count")->capture_default_str();
  cv->add_option("--seed", cv_cfg.seed, "fold/split seed")->capture_default_str();
  cv->add_option("--positive", cv_cfg.positive,
                 "positive class (default: second label in manifest order)");
  auto* cthr = cv->add_option("--reject-threshold", cv_threshold,
                              "enable amplitude rejection at this threshold");
  auto* csub = cv->add_option("--subject-split", cv_subject_fraction,
                              "hold out this fraction of subjects instead of k-fold");
  cv->add_option("--epsilon", cv_cfg.epsilon, "degenerate-spread cutoff")
      ->capture_default_str();
  cv->add_option("--out", cv_out, "output directory")->required();

  // plot
  std::string plot_features, plot_spectra, plot_out;
  auto* plot = app.add_subcommand("plot", "scatter/histogram/spectrum plot data");
  plot->add_option("--features", plot_features, "feature CSV from extract")->required();
  plot->add_option("--spectra", plot_spectra, "spectrum CSV from extract");
  plot->add_option("--out", plot_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (synth->parsed()) {
      if (!artifact_seed_set) art.seed = gen.seed;
      return cmd_synth(gen, art, art.rate > 0.0, synth_out);
    }
    if (extract->parsed()) {
      if (*ethr) extract_flags.reject_threshold = extract_threshold;
      return cmd_extract(extract_flags, extract_region, extract_k, extract_epsilon,
                         extract_out);
    }
    if (cv->parsed()) {
      if (*cthr) cv_flags.reject_threshold = cv_threshold;
      std::optional<double> fraction;
      if (*csub) fraction = cv_subject_fraction;
      return cmd_crossval(cv_flags, cv_region, cv_cfg, fraction, cv_out);
    }
    if (plot->parsed()) return cmd_plot(plot_features, plot_spectra, plot_out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
