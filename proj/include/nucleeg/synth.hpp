#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "dataset.hpp"
#include "rng.hpp"

namespace nucleeg {

struct GeneratorConfig {
  std::size_t n_channels = 16;
  std::size_t d_samples = 150;
  std::size_t trials_per_class = 300;
  std::size_t subjects = 10;
  double separation = 1.0;  // 0 = identical class distributions
  std::uint64_t seed = 1;
  std::pair<std::size_t, std::size_t> class_factor_ranks{2, 8};
};

struct ArtifactConfig {
  double rate = 0.0;  // fraction of trials receiving a pulse
  double amplitude = 90.0;
  std::size_t width = 20;  // samples
  std::uint64_t seed = 1;
};

namespace detail {

inline void validate_generator(const GeneratorConfig& cfg) {
  if (cfg.n_channels < 2) throw ConfigError("generator: need at least 2 channels");
  if (cfg.d_samples < 2) throw ConfigError("generator: need at least 2 samples per trial");
  if (cfg.trials_per_class < 1) throw ConfigError("generator: need at least 1 trial per class");
  if (cfg.subjects < 1) throw ConfigError("generator: need at least 1 subject");
  if (cfg.subjects > 2 * cfg.trials_per_class)
    throw ConfigError("generator: more subjects than trials");
  if (cfg.class_factor_ranks.first < 1 || cfg.class_factor_ranks.second < 1 ||
      cfg.class_factor_ranks.first > cfg.n_channels ||
      cfg.class_factor_ranks.second > cfg.n_channels)
    throw ConfigError("generator: factor ranks must be in [1, n_channels]");
  if (!(cfg.separation >= 0.0)) throw ConfigError("generator: separation must be >= 0");
}

inline std::string zero_padded(std::size_t v, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*zu", width, v);
  return buf;
}

}  // namespace detail

// Two-class latent-factor generator. Each class c owns a channel-mixing
// matrix B_c (n x r_c); a trial is (B_c Z)^T plus small sensor noise, with
// fresh standard-normal latents Z per trial. The class matrices are blended
// toward a shared matrix as separation drops; the shared matrix is active
// only in its first min(r_1, r_2) columns, so at separation zero both
// classes draw from exactly the same distribution even when the ranks
// differ. Class structure lives in the channel correlations, which is what
// survives the per-sample standardization downstream.
inline Dataset generate_dataset(const GeneratorConfig& cfg) {
  detail::validate_generator(cfg);
  constexpr double sensor_noise = 0.1;
  const std::array<std::size_t, 2> ranks{cfg.class_factor_ranks.first,
                                         cfg.class_factor_ranks.second};
  const std::size_t shared_rank = std::min(ranks[0], ranks[1]);
  const double s = cfg.separation;

  Rng rng(cfg.seed);
  // Draw order is fixed: shared mixing, the two class mixings, then trials.
  Matrix shared(cfg.n_channels, std::max(ranks[0], ranks[1]));
  for (std::size_t i = 0; i < shared.rows(); ++i)
    for (std::size_t j = 0; j < shared_rank; ++j) shared(i, j) = rng.normal();
  std::array<Matrix, 2> mixing;
  for (std::size_t c = 0; c < 2; ++c) {
    mixing[c] = Matrix(cfg.n_channels, ranks[c]);
    for (std::size_t i = 0; i < cfg.n_channels; ++i)
      for (std::size_t j = 0; j < ranks[c]; ++j)
        mixing[c](i, j) = (1.0 - s) * shared(i, j) + s * rng.normal();
  }

  const std::array<std::string, 2> labels{"A", "B"};
  Dataset ds;
  ds.manifest.samples_per_trial = cfg.d_samples;
  for (std::size_t i = 0; i < cfg.n_channels; ++i)
    ds.manifest.channel_names.push_back("ch" + detail::zero_padded(i, 3));
  ds.manifest.regions = scalp_region_preset(cfg.n_channels);

  std::size_t global_index = 0;
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t t = 0; t < cfg.trials_per_class; ++t, ++global_index) {
      Matrix latent(ranks[c], cfg.d_samples);
      for (std::size_t i = 0; i < latent.rows(); ++i)
        for (std::size_t j = 0; j < latent.cols(); ++j) latent(i, j) = rng.normal();

      Trial trial;
      trial.id = labels[c] + "_" + detail::zero_padded(t, 4);
      trial.label = labels[c];
      trial.subject = "s" + detail::zero_padded(global_index % cfg.subjects, 3);
      trial.samples = Matrix(cfg.d_samples, cfg.n_channels);
      for (std::size_t tau = 0; tau < cfg.d_samples; ++tau)
        for (std::size_t ch = 0; ch < cfg.n_channels; ++ch) {
          double v = 0.0;
          for (std::size_t f = 0; f < ranks[c]; ++f) v += mixing[c](ch, f) * latent(f, tau);
          trial.samples(tau, ch) = v + sensor_noise * rng.normal();
        }

      ds.manifest.trials.push_back(
          TrialRef{"trials/" + trial.id + ".csv", trial.label, trial.subject});
      ds.trials.push_back(std::move(trial));
    }
  }
  return ds;
}

// Adds a half-cosine pulse to a seeded subset of round(rate * N) trials, on
// roughly a quarter of the channels, at a seeded onset. Everything outside
// the pulse support is bit-identical to the input.
inline std::vector<Trial> inject_artifacts(std::vector<Trial> trials,
                                           const ArtifactConfig& cfg) {
  if (!(cfg.rate >= 0.0 && cfg.rate <= 1.0))
    throw ConfigError("artifacts: rate must be in [0,1]");
  if (cfg.width < 1) throw ConfigError("artifacts: width must be at least 1");
  const auto n_hit = static_cast<std::size_t>(
      std::llround(cfg.rate * static_cast<double>(trials.size())));
  if (n_hit == 0) return trials;

  Rng rng(cfg.seed);
  std::vector<std::size_t> order(trials.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);
  std::vector<std::size_t> chosen(order.begin(), order.begin() + n_hit);
  std::sort(chosen.begin(), chosen.end());  // fixed processing order

  for (std::size_t idx : chosen) {
    Trial& trial = trials[idx];
    const std::size_t d = trial.samples.rows();
    const std::size_t n = trial.samples.cols();
    if (cfg.width >= d)
      throw ConfigError("artifacts: width " + std::to_string(cfg.width) +
                        " must be smaller than trial length " + std::to_string(d));
    std::vector<std::size_t> channels(n);
    std::iota(channels.begin(), channels.end(), std::size_t{0});
    rng.shuffle(channels);
    const std::size_t affected = std::max<std::size_t>(1, (n + 3) / 4);
    const std::size_t onset = rng.below(d - cfg.width + 1);
    for (std::size_t u = 0; u < cfg.width; ++u) {
      const double pulse =
          cfg.amplitude *
          std::sin(std::numbers::pi * (static_cast<double>(u) + 0.5) /
                   static_cast<double>(cfg.width));
      for (std::size_t a = 0; a < affected; ++a)
        trial.samples(onset + u, channels[a]) += pulse;
    }
  }
  return trials;
}

}  // namespace nucleeg
