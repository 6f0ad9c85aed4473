// Acceptance suite: every release criterion as one pass/fail line. Runs the
// whole pipeline on synthetic data (the reference datasets are not
// redistributable) plus property checks against independent oracles.

#include <Eigen/Dense>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nucleeg/nucleeg.hpp>

using namespace nucleeg;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, double seconds) {
  std::printf("[%s] %2d. %s (%.2fs)\n", pass ? "PASS" : "FAIL", number, name.c_str(),
              seconds);
  std::fflush(stdout);
  failures += !pass;
}

template <typename Fn>
void criterion(int number, const std::string& name, Fn&& fn) {
  const auto start = Clock::now();
  bool pass = false;
  try {
    pass = fn();
  } catch (const std::exception& e) {
    std::printf("       exception: %s\n", e.what());
    pass = false;
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  report(number, name, pass, seconds);
}

Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.normal();
  return m;
}

Eigen::MatrixXd to_eigen(const Matrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c);
  return out;
}

// The shared random corpus for criteria 1 and 2: 1000 trials, n in [2,32],
// d in [10,300], standard-normal entries (rows are non-degenerate almost
// surely).
std::vector<Trial> random_corpus() {
  Rng rng(0xACCE9);
  std::vector<Trial> corpus;
  corpus.reserve(1000);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 2 + rng.below(31);
    const std::size_t d = 10 + rng.below(291);
    corpus.push_back(Trial{"r" + std::to_string(i), "A", "s", random_matrix(d, n, rng)});
  }
  return corpus;
}

double pair_count_auc(const std::vector<double>& scores,
                      const std::vector<std::string>& truth,
                      const std::string& positive) {
  double u = 0.0;
  std::size_t pos = 0, neg = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] != positive) continue;
    ++pos;
    for (std::size_t j = 0; j < truth.size(); ++j) {
      if (truth[j] == positive) continue;
      if (scores[i] > scores[j])
        u += 1.0;
      else if (scores[i] == scores[j])
        u += 0.5;
    }
  }
  for (const auto& t : truth) neg += (t != positive);
  return u / (static_cast<double>(pos) * static_cast<double>(neg));
}

GeneratorConfig reference_generator(double separation) {
  GeneratorConfig cfg;
  cfg.n_channels = 16;
  cfg.d_samples = 150;
  cfg.trials_per_class = 300;
  cfg.subjects = 10;
  cfg.separation = separation;
  cfg.seed = 20240811;
  cfg.class_factor_ranks = {2, 8};
  return cfg;
}

double reference_accuracy(const std::vector<Trial>& trials, const DatasetManifest& manifest,
                          double* auc_out = nullptr) {
  EvalConfig cfg;
  cfg.k = 2;
  cfg.folds = 10;
  cfg.seed = 7;
  const auto report = crossval(trials, find_region(manifest, "FRONT"), cfg);
  if (auc_out) *auc_out = report.roc.auc;
  return report.fold_mean.accuracy.value_or(0.0);
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(NUCLEEG_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  if (status < 0) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  setenv("NUCLEEG_THREADS", "1", 1);  // the budgets below assume one thread
  const auto corpus = random_corpus();

  criterion(1, "normalization invariants on 1000 random trials, < 5 s", [&] {
    const auto start = Clock::now();
    bool ok = true;
    for (const auto& trial : corpus) {
      const auto norm = normalize(trial);
      const auto n = static_cast<double>(norm.phi.cols());
      for (std::size_t r = 0; r < norm.phi.rows(); ++r) {
        double sum = 0.0, sq = 0.0;
        for (double v : norm.phi.row(r)) {
          sum += v;
          sq += v * v;
        }
        ok &= std::abs(sum) <= 1e-9 * n;
        ok &= std::abs(sq - n) <= 1e-9 * n;  // corpus rows are non-degenerate
      }
    }
    // the degenerate-row rule, exercised explicitly
    Trial flat{"flat", "A", "s", Matrix(3, 4, 2.5)};
    flat.samples(0, 0) = 1.0;  // row 0 stays live, rows 1..2 are degenerate
    const auto norm = normalize(flat);
    for (std::size_t c = 0; c < 4; ++c) {
      ok &= norm.phi(1, c) == 0.0;
      ok &= norm.phi(2, c) == 0.0;
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (secs >= 5.0) std::printf("       runtime %.2fs exceeds the 5 s budget\n", secs);
    return ok && secs < 5.0;
  });

  criterion(2, "nuclear-matrix invariants on the same corpus", [&] {
    bool ok = true;
    for (const auto& trial : corpus) {
      const auto norm = normalize(trial);
      const auto nuclear = nuclear_matrix(norm);
      const Matrix& m = nuclear.entries;
      const auto n = static_cast<double>(m.rows());
      const auto d = static_cast<double>(norm.phi.rows());

      for (std::size_t i = 0; i < m.rows() && ok; ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
          if (m(i, j) != m(j, i)) {
            ok = false;
            break;
          }

      double null_norm = 0.0;
      for (std::size_t i = 0; i < m.rows(); ++i) {
        double row_sum = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) row_sum += m(i, j);
        null_norm += row_sum * row_sum;
      }
      ok &= std::sqrt(null_norm) <= 1e-8 * m.frobenius_norm();
      ok &= std::abs(m.trace() - n * d) <= 1e-8 * n * d;

      // PSD within tolerance (clamping would throw otherwise) and the
      // spectrum resolves the trace
      const auto spectrum = singular_values(nuclear);
      double sum = 0.0;
      for (double v : spectrum.values) {
        ok &= v >= 0.0;
        sum += v;
      }
      ok &= std::abs(sum - m.trace()) <= 1e-7 * std::abs(m.trace());
    }
    return ok;
  });

  criterion(3, "eigen-duality of A^T A and A A^T against the brute-force oracle", [&] {
    Rng rng(0xD0A1);
    bool ok = true;
    for (int rep = 0; rep < 500; ++rep) {
      const std::size_t d = 2 + rng.below(11);  // <= 12
      const std::size_t n = 2 + rng.below(5);   // <= 6
      const Matrix a = random_matrix(d, n, rng);
      const Eigen::MatrixXd ae = to_eigen(a);

      const auto mine = symmetric_eigenvalues(gram(a));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> big(ae * ae.transpose());
      std::vector<double> oracle(big.eigenvalues().data(),
                                 big.eigenvalues().data() + big.eigenvalues().size());
      std::sort(oracle.begin(), oracle.end(), std::greater<>());
      const Eigen::VectorXd sv = ae.jacobiSvd().singularValues();

      const double scale = std::max(mine[0], 1e-30);
      for (std::size_t i = 0; i < std::min(n, d); ++i) {
        ok &= std::abs(mine[i] - oracle[i]) <= 1e-8 * scale;
        const double squared =
            sv[static_cast<Eigen::Index>(i)] * sv[static_cast<Eigen::Index>(i)];
        ok &= std::abs(mine[i] - squared) <= 1e-8 * scale;
      }
      for (std::size_t i = std::min(n, d); i < oracle.size(); ++i)
        ok &= std::abs(oracle[i]) <= 1e-8 * scale;  // the big side has only zeros left
    }
    return ok;
  });

  criterion(4, "fixture exactness: [[10,14],[14,20]] spectrum and nuclear norm", [] {
    Matrix fixture(2, 2);
    fixture(0, 0) = 10;
    fixture(0, 1) = 14;
    fixture(1, 0) = 14;
    fixture(1, 1) = 20;
    const auto spectrum = singular_values(NuclearMatrix{"fx", fixture});
    const double root = std::sqrt(884.0);
    bool ok = spectrum.values.size() == 2;
    ok &= std::abs(spectrum.values[0] - (30.0 + root) / 2.0) <= 1e-10;
    ok &= std::abs(spectrum.values[1] - (30.0 - root) / 2.0) <= 1e-10;
    ok &= std::abs(nuclear_norm(fixture) - 30.0) <= 1e-10;
    return ok;
  });

  criterion(5, "CMMDC equals brute-force nearest-mean on 10000 random pairs", [] {
    Rng rng(0xC33D);
    bool ok = true;
    for (int rep = 0; rep < 10000; ++rep) {
      const std::size_t k = 1 + rng.below(6);
      CMMDCModel model{{"one", "two"}, {}};
      for (auto& mean : model.means) {
        mean.resize(k);
        for (double& v : mean) v = 4.0 * rng.normal();
      }
      std::vector<double> x(k);
      for (double& v : x) v = 4.0 * rng.normal();

      // brute force
      double d0 = 0.0, d1 = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        d0 += (x[i] - model.means[0][i]) * (x[i] - model.means[0][i]);
        d1 += (x[i] - model.means[1][i]) * (x[i] - model.means[1][i]);
      }
      const std::string expected = d0 <= d1 ? "one" : "two";
      const std::string label = predict(model, x);
      ok &= label == expected;

      // translation and positive uniform scaling leave predictions alone
      // (up to floating-point-equal argmin, which the margin guard skips)
      const double margin = std::abs(d0 - d1);
      if (margin > 1e-9 * (d0 + d1)) {
        CMMDCModel shifted = model;
        std::vector<double> tx = x;
        const double t = 8.0 * rng.normal();
        for (std::size_t i = 0; i < k; ++i) {
          shifted.means[0][i] += t;
          shifted.means[1][i] += t;
          tx[i] += t;
        }
        ok &= predict(shifted, tx) == label;

        CMMDCModel scaled = model;
        std::vector<double> sx = x;
        const double factor = std::exp(rng.normal());
        for (std::size_t i = 0; i < k; ++i) {
          scaled.means[0][i] *= factor;
          scaled.means[1][i] *= factor;
          sx[i] *= factor;
        }
        ok &= predict(scaled, sx) == label;
      }
    }
    return ok;
  });

  criterion(6, "metrics: the 482/551 case and the 20-sample case are exact", [] {
    const auto perfect = metrics(ConfusionCounts{482, 551, 0, 0});
    bool ok = perfect.accuracy == 100.0 && perfect.sensitivity == 100.0 &&
              perfect.specificity == 100.0;
    const auto derived = metrics(ConfusionCounts{8, 9, 1, 2});
    ok &= derived.sensitivity == 80.0;
    ok &= derived.specificity == 90.0;
    ok &= derived.accuracy == 85.0;
    return ok;
  });

  criterion(7, "trapezoid AUC equals tie-adjusted pair counting, 1e-12", [] {
    Rng rng(0xA0C);
    bool ok = true;
    for (int rep = 0; rep < 1000; ++rep) {
      const std::size_t n = 2 + rng.below(499);
      std::vector<double> scores(n);
      std::vector<std::string> truth(n);
      bool has_p = false, has_n = false;
      for (std::size_t i = 0; i < n; ++i) {
        scores[i] = rng.below(2) ? static_cast<double>(rng.below(9)) / 3.0 : rng.normal();
        truth[i] = rng.below(2) ? "p" : "n";
        (truth[i] == "p" ? has_p : has_n) = true;
      }
      if (!has_p) truth[0] = "p";
      if (!has_n) truth[n - 1] = "n";
      ok &= std::abs(roc_auc(scores, truth, "p").auc -
                     pair_count_auc(scores, truth, "p")) <= 1e-12;
    }
    ok &= roc_auc({5, 4, 2, 1}, {"p", "p", "n", "n"}, "p").auc == 1.0;
    ok &= roc_auc({3, 3, 3, 3}, {"p", "p", "n", "n"}, "p").auc == 0.5;
    return ok;
  });

  criterion(8, "scatter identities on 1000 random feature sets", [] {
    Rng rng(0x5CA7);
    bool ok = true;
    for (int rep = 0; rep < 1000; ++rep) {
      const std::size_t k = 1 + rng.below(4);
      std::vector<LabeledFeature> samples;
      for (int c = 0; c < 2; ++c) {
        const std::size_t count = k + 2 + rng.below(25);  // keeps Sw generically full rank
        const double shift = 1.5 * rng.normal();
        for (std::size_t i = 0; i < count; ++i) {
          std::vector<double> x(k);
          for (double& v : x) v = rng.normal() + c * shift;
          samples.push_back({x, c ? "B" : "A"});
        }
      }
      const auto s = scatter_analysis(samples);
      const double scale = std::max(1.0, s.sm.max_abs());
      ok &= (s.sm - (s.sb + s.sw)).max_abs() <= 1e-10 * scale;

      // independent identity: Sm equals the pooled covariance
      const std::size_t dim = samples.front().first.size();
      std::vector<double> mean(dim, 0.0);
      for (const auto& [x, label] : samples)
        for (std::size_t i = 0; i < dim; ++i) mean[i] += x[i];
      for (double& v : mean) v /= static_cast<double>(samples.size());
      Matrix pooled(dim, dim);
      for (const auto& [x, label] : samples)
        for (std::size_t i = 0; i < dim; ++i)
          for (std::size_t j = 0; j < dim; ++j)
            pooled(i, j) +=
                (x[i] - mean[i]) * (x[j] - mean[j]) / static_cast<double>(samples.size());
      ok &= (s.sm - pooled).max_abs() <= 1e-10 * scale;

      ok &= s.j1.has_value() && *s.j1 >= 1.0 - 1e-9;
      if (s.j2) ok &= *s.j2 >= 1.0 - 1e-9;
    }

    // equal means: J1 = J2 = 1 (the points span both dimensions)
    std::vector<LabeledFeature> equal;
    for (int c = 0; c < 2; ++c) {
      equal.push_back({{0.0, 0.0}, c ? "B" : "A"});
      equal.push_back({{2.0, 0.0}, c ? "B" : "A"});
      equal.push_back({{0.0, 2.0}, c ? "B" : "A"});
      equal.push_back({{2.0, 2.0}, c ? "B" : "A"});
    }
    const auto eq = scatter_analysis(equal);
    ok &= eq.j1 && std::abs(*eq.j1 - 1.0) <= 1e-9;
    ok &= eq.j2 && std::abs(*eq.j2 - 1.0) <= 1e-9;

    // the 1-D derived case: J1 = J2 = 5
    const auto oned = scatter_analysis(
        {{{0.0}, "A"}, {{2.0}, "A"}, {{4.0}, "B"}, {{6.0}, "B"}});
    ok &= oned.j1 && std::abs(*oned.j1 - 5.0) <= 1e-12;
    ok &= oned.j2 && std::abs(*oned.j2 - 5.0) <= 1e-12;
    return ok;
  });

  Dataset reference;  // shared between criteria 9 and 10
  double clean_accuracy = 0.0;

  criterion(9, "end-to-end synthetic: separable >= 99%/0.99, chance in [40,60], < 30 s", [&] {
    const auto start = Clock::now();
    reference = generate_dataset(reference_generator(1.0));
    double auc = 0.0;
    clean_accuracy = reference_accuracy(reference.trials, reference.manifest, &auc);
    bool ok = clean_accuracy >= 99.0;
    ok &= auc >= 0.99;
    if (!ok)
      std::printf("       separable run: accuracy %.2f auc %.4f\n", clean_accuracy, auc);

    const Dataset chance = generate_dataset(reference_generator(0.0));
    const double chance_accuracy = reference_accuracy(chance.trials, chance.manifest);
    if (chance_accuracy < 40.0 || chance_accuracy > 60.0) {
      std::printf("       chance run: accuracy %.2f outside [40,60]\n", chance_accuracy);
      ok = false;
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (secs >= 30.0) std::printf("       runtime %.2fs exceeds the 30 s budget\n", secs);
    return ok && secs < 30.0;
  });

  criterion(10, "artifacts at rate 0.3 cost at most 5 accuracy points", [&] {
    ArtifactConfig art;
    art.rate = 0.3;
    art.amplitude = 90.0;
    art.width = 20;
    art.seed = 4242;
    const auto noisy = inject_artifacts(reference.trials, art);
    const double noisy_accuracy = reference_accuracy(noisy, reference.manifest);
    const double drop = clean_accuracy - noisy_accuracy;
    if (drop > 5.0)
      std::printf("       accuracy dropped %.2f points (%.2f -> %.2f)\n", drop,
                  clean_accuracy, noisy_accuracy);
    return drop <= 5.0;
  });

  criterion(11, "seeded CLI commands re-run byte-identically", [] {
    const fs::path dir = fs::temp_directory_path() / "nucleeg_acceptance_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string synth =
        "synth --channels 8 --samples 60 --trials 20 --subjects 4 --separation 1.0 "
        "--artifact-rate 0.2 --artifact-width 10 --seed 99 --out ";
    bool ok = run_cli(synth + (dir / "a").string()) == 0;
    ok &= run_cli(synth + (dir / "b").string()) == 0;
    for (const auto& entry : fs::recursive_directory_iterator(dir / "a")) {
      if (!entry.is_regular_file()) continue;
      const auto rel = fs::relative(entry.path(), dir / "a");
      ok &= slurp(entry.path()) == slurp(dir / "b" / rel);
    }

    const std::string cv = "crossval --manifest " + (dir / "a" / "manifest.json").string() +
                           " --region ALL --k 2 --folds 5 --seed 3 --out ";
    ok &= run_cli(cv + (dir / "r1").string()) == 0;
    ok &= run_cli(cv + (dir / "r2").string()) == 0;
    ok &= slurp(dir / "r1" / "report.json") == slurp(dir / "r2" / "report.json");
    ok &= !slurp(dir / "r1" / "report.json").empty();

    const std::string extract = "extract --manifest " +
                                (dir / "a" / "manifest.json").string() +
                                " --region ALL --k 2 --out ";
    ok &= run_cli(extract + (dir / "e1").string()) == 0;
    ok &= run_cli(extract + (dir / "e2").string()) == 0;
    ok &= slurp(dir / "e1" / "features.csv") == slurp(dir / "e2" / "features.csv");
    fs::remove_all(dir);
    return ok;
  });

  criterion(12, "subject split: 34 subjects at 0.1 give 3 held-out, disjoint, 100 seeds", [] {
    std::vector<Trial> trials;
    for (int s = 0; s < 34; ++s)
      for (int i = 0; i < 2; ++i)
        trials.push_back(Trial{"t" + std::to_string(s) + "_" + std::to_string(i),
                               i % 2 ? "A" : "B", "subj" + std::to_string(s),
                               Matrix(2, 2)});
    bool ok = true;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto split = subject_split(trials, 0.1, seed);
      ok &= split.test_subjects.size() == 3;
      ok &= split.train_subjects.size() == 31;
      std::set<std::string> train(split.train_subjects.begin(), split.train_subjects.end());
      for (const auto& s : split.test_subjects) ok &= !train.count(s);
      ok &= split.train_indices.size() + split.test_indices.size() == trials.size();
    }
    return ok;
  });

  if (failures == 0)
    std::printf("all 12 acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
