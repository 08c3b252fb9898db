// Copyright 2026 The UniEdit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "support/fixtures.h"
#include "support/golden.h"
#include "support/oracles.h"
#include "uniedit/audio/manifest.h"
#include "uniedit/audio/wav.h"
#include "uniedit/cli/cli.h"
#include "uniedit/compressor/compressor.h"
#include "uniedit/dsp/framing.h"
#include "uniedit/dsp/stft.h"
#include "uniedit/flow/flow_matching.h"
#include "uniedit/flow/toy_training.h"
#include "uniedit/forge/benchmark.h"
#include "uniedit/forge/pairs.h"
#include "uniedit/metrics/metrics.h"
#include "uniedit/stop/stop_detector.h"
#include "uniedit/text/edit.h"
#include "uniedit/text/instruction.h"
#include "uniedit/vae/latent.h"
#include "uniedit/vae/losses.h"

namespace uniedit {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

// Collects failure descriptions for one criterion.
class Findings {
 public:
  void Require(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++count_;
  }
  bool ok() const { return count_ == 0; }
  std::string Summary() const {
    std::ostringstream s;
    s << count_ << " failure(s)";
    for (const auto& f : failures_) s << "; " << f;
    return s.str();
  }

 private:
  std::vector<std::string> failures_;
  int count_ = 0;
};

// Returns a detail string on success; throws or fills findings on failure.
using Criterion = std::function<std::string(Findings&)>;

std::string Framing(Findings& f) {
  const audio::Waveform clip{std::vector<double>(16000, 0.1), 16000};
  const auto start = Clock::now();
  const auto one = dsp::FrameWaveform(clip);
  const double ms = Seconds(start) * 1e3;
  f.Require(one.num_frames() == 50, "1 s clip frame count");
  f.Require(one.frame_rate == 50.0, "frame rate");
  for (long n : {0L, 1L, 319L, 320L, 639L, 640L, 16001L, 47999L}) {
    const auto seq = dsp::FrameWaveform(audio::Waveform{std::vector<double>(n, 0.0), 16000});
    f.Require(seq.num_frames() == n / 320, "N=" + std::to_string(n));
  }
  f.Require(ms < 1.0, "runtime " + std::to_string(ms) + " ms");
  return "50 frames for 1 s; " + std::to_string(ms) + " ms";
}

std::string StftRoundTrip(Findings& f) {
  const auto start = Clock::now();
  Rng rng(2);
  double worst = 1e9;
  int configs = 0;
  for (const auto& cfg : dsp::ShippedColaConfigs()) {
    ++configs;
    for (int trial = 0; trial < 100; ++trial) {
      audio::Waveform w = trial % 2 ? uniedit::testing::WhiteNoise(16000, 0.5, rng)
                                    : uniedit::testing::SpeechLike(1.0, rng);
      const auto back = dsp::IstftSynthesize(dsp::Stft(w, cfg, true));
      const double snr =
          dsp::SnrDb(w.samples, back.samples, cfg.fft_size, w.size() - cfg.fft_size);
      worst = std::min(worst, snr);
      f.Require(snr > 60.0, "fft " + std::to_string(cfg.fft_size) + " trial " +
                                std::to_string(trial) + " snr " + std::to_string(snr));
    }
  }
  const double s = Seconds(start);
  f.Require(s < 10.0, "runtime " + std::to_string(s) + " s");
  std::ostringstream d;
  d << configs << " configs x 100 signals, min interior SNR " << worst << " dB, " << s
    << " s";
  return d.str();
}

double BruteForceAlign(const Matrix& logits, const std::vector<int>& y) {
  double total = 0.0;
  for (Eigen::Index t = 0; t < logits.rows(); ++t) {
    double z = 0.0;
    for (Eigen::Index v = 0; v < logits.cols(); ++v) z += std::exp(logits(t, v));
    total -= std::log(std::exp(logits(t, y[t])) / z);
  }
  return total;
}

vae::LatentDistribution Single(double mean, double logvar) {
  vae::LatentDistribution d;
  d.mean = Matrix::Constant(1, 1, mean);
  d.logvar = Matrix::Constant(1, 1, logvar);
  return d;
}

std::string LossStack(Findings& f) {
  const double g = vae::GeneratorLoss({1.0, 1.0, 1.0, 1.0});
  f.Require(std::abs(g - 17.0001) <= 1e-9, "generator loss " + std::to_string(g));
  f.Require(std::abs(vae::KlLoss(Single(0.0, 0.0))) <= 1e-12, "kl N(0,1)");
  f.Require(std::abs(vae::KlLoss(Single(1.0, 0.0)) - 0.5) <= 1e-12, "kl mean 1");
  f.Require(std::abs(vae::KlLoss(Single(0.0, std::log(4.0))) -
                     (3.0 - std::log(4.0)) / 2.0) <= 1e-12,
            "kl var 4");
  Rng rng(3);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int t = static_cast<int>(rng.UniformInt(1, 6));
    const int v = static_cast<int>(rng.UniformInt(2, 12));
    Matrix logits(t, v);
    for (Eigen::Index i = 0; i < logits.size(); ++i) logits.data()[i] = rng.Uniform(-5.0, 5.0);
    std::vector<int> y(t);
    for (auto& k : y) k = static_cast<int>(rng.UniformInt(0, v - 1));
    const double err = std::abs(vae::AlignLoss(logits, y) - BruteForceAlign(logits, y));
    worst = std::max(worst, err);
    f.Require(err <= 1e-10, "align trial " + std::to_string(trial));
  }
  std::ostringstream d;
  d << "generator " << g << ", align max error " << worst << " over 1000";
  return d.str();
}

std::string Pooling(Findings& f) {
  Rng rng(4);
  long cases = 0;
  for (int l = 0; l <= 200; ++l) {
    for (int p = 1; p <= 8; ++p) {
      vae::UnifiedSequence z;
      z.values.resize(l, 2);
      for (Eigen::Index i = 0; i < z.values.size(); ++i) {
        z.values.data()[i] = rng.Uniform(-2.0, 2.0);
      }
      const auto out = compressor::PoolCompress(z, {p, compressor::CompressionMode::kMeanPool});
      ++cases;
      if (out.values.rows() != l / p) {
        f.Require(false, "length l=" + std::to_string(l) + " p=" + std::to_string(p));
        continue;
      }
      for (int i = 0; i < l / p; ++i) {
        for (int j = 0; j < 2; ++j) {
          double sum = 0.0;
          for (int k = 0; k < p; ++k) sum += z.values(i * p + k, j);
          f.Require(out.values(i, j) == sum / p,
                    "mean l=" + std::to_string(l) + " p=" + std::to_string(p));
        }
      }
    }
  }
  vae::UnifiedSequence z50;
  z50.values = Matrix::Ones(50, 4);
  const auto ten = compressor::PoolCompress(z50, {5, compressor::CompressionMode::kMeanPool});
  // One second of 50 Hz frames.
  const double rate = static_cast<double>(ten.values.rows());
  f.Require(rate == 10.0, "50 Hz to 10 Hz");
  return std::to_string(cases) + " (l, p) cases; 50 Hz -> " + std::to_string(rate) + " Hz";
}

std::string FlowMatching(Findings& f) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Vector x0(3), x1(3);
    for (int i = 0; i < 3; ++i) {
      x0(i) = rng.Normal();
      x1(i) = rng.Normal() * 3.0;
    }
    const flow::VelocityFn field = [&](const Vector&, double) { return Vector(x1 - x0); };
    for (int steps : {1, 4, 32}) {
      const double err = (flow::EulerSample(field, x0, steps) - x1).cwiseAbs().maxCoeff();
      f.Require(err < 1e-12, "euler steps " + std::to_string(steps));
    }
  }
  double worst_grad = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto net = flow::VelocityNet::Random(2, 3, {16, 16}, rng);
    const auto batch = uniedit::testing::RandomFlowBatch(8, 2, 3, rng);
    const double err = uniedit::testing::MaxGradientRelativeError(net, batch);
    worst_grad = std::max(worst_grad, err);
    f.Require(err < 1e-4, "gradient trial " + std::to_string(trial));
  }
  const auto start = Clock::now();
  flow::ToyFlowConfig cfg;
  cfg.seed = 0;
  const auto result = flow::TrainToyFlow(cfg);
  const double s = Seconds(start);
  const double ratio = result.initial_loss / result.final_loss;
  f.Require(cfg.steps <= 2000, "step budget");
  f.Require(ratio >= 10.0, "loss reduction " + std::to_string(ratio));
  f.Require(s < 30.0, "toy runtime " + std::to_string(s) + " s");
  std::ostringstream d;
  d << "max FD rel error " << worst_grad << "; fm_loss " << result.initial_loss << " -> "
    << result.final_loss << " (" << ratio << "x) in " << cfg.steps << " steps, " << s << " s";
  return d.str();
}

std::string StopLabels(Findings& f) {
  Rng rng(6);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> scores(rng.UniformInt(1, 60));
    for (auto& s : scores) {
      s = trial % 2 ? rng.Uniform() : static_cast<double>(rng.UniformInt(0, 4));
    }
    const auto labels = stop::BuildStopLabels(scores);
    const auto oracle = uniedit::testing::StopLabelsOracle(scores);
    f.Require(labels == oracle, "labels trial " + std::to_string(trial));
    std::vector<double> logits(scores.size());
    for (auto& l : logits) l = rng.Normal() * 3.0;
    const double base = stop::StopLoss(logits, labels);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == stop::StopLabel::kUnused || labels[i] == stop::StopLabel::kIgnore) {
        logits[i] += rng.Normal() * 10.0;
      }
    }
    f.Require(stop::StopLoss(logits, labels) == base, "perturbation trial " +
                                                          std::to_string(trial));
  }
  return "1000 random cases match the oracle; loss invariant to unlabeled frames";
}

std::string GoldenEdits(Findings& f) {
  text::EditOptions options;
  options.anchor_policy = text::AnchorPolicy::kLast;
  int n = 0;
  for (const auto& g : uniedit::testing::GoldenEdits()) {
    ++n;
    try {
      const auto r =
          text::ApplyEdit(g.source, text::ParseInstruction(g.instruction), g.language, options);
      f.Require(r.edited_text == g.target, std::string(g.instruction) + " -> " + r.edited_text);
    } catch (const std::exception& e) {
      f.Require(false, std::string(g.instruction) + ": " + e.what());
    }
  }
  f.Require(n == 12, "example count");
  return std::to_string(n) + " examples byte-exact";
}

std::string PairAlgebra(Findings& f) {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const long n = rng.UniformInt(640, 48000);
    const auto audio = uniedit::testing::WhiteNoise(n, 0.5, rng);
    const long a = rng.UniformInt(0, n - 1);
    const long b = rng.UniformInt(a + 1, n);
    const std::string tag = "trial " + std::to_string(trial);

    const auto ins = forge::ConstructInsertionPair(audio, {a, b});
    const audio::Waveform cut{{audio.samples.begin() + a, audio.samples.begin() + b},
                              audio.sample_rate};
    const auto del = forge::ConstructDeletionPair(ins.input, cut, a);
    f.Require(ins.target.samples == audio.samples, tag + " insertion target");
    f.Require(del.input.samples == audio.samples, tag + " deletion restores audio");
    f.Require(del.target.samples == ins.input.samples, tag + " deletion target");

    const long len = rng.UniformInt(1, std::max(1L, n / 3));
    if (2 * len > n) continue;
    const long src = rng.UniformInt(0, n - 2 * len);
    const long dst = rng.UniformInt(src + len, n - len);
    const auto sub = forge::ConstructSubstitutionPair(audio, {src, src + len}, {dst, dst + len});
    bool exact = sub.input.size() == sub.target.size();
    for (long i = 0; exact && i < n; ++i) {
      const bool inside = i >= dst && i < dst + len;
      exact = (sub.input.samples[i] != sub.target.samples[i]) == inside;
      if (inside) exact = exact && sub.input.samples[i] == audio.samples[src + i - dst];
    }
    f.Require(exact, tag + " substitution differs off dst");
  }
  return "200 random cases";
}

std::string BenchmarkValidation(Findings& f) {
  const auto corpus = uniedit::testing::TextCorpus(600, 600, 9);
  forge::BenchmarkConfig cfg;
  cfg.mode = forge::AssignmentMode::kQuota;
  cfg.quota = forge::BasicBenchmarkCounts();
  cfg.seed = 9;
  const auto bench = forge::GenerateBenchmark(corpus, cfg);
  const auto report = forge::ValidateBenchmark(bench.entries, forge::BasicBenchmarkCounts());
  f.Require(report.ok, report.ToJson().dump());
  long zh[3] = {0, 0, 0}, en[3] = {0, 0, 0};
  for (const auto& [cell, count] : bench.Tally()) {
    (cell.language == Language::kZh ? zh : en)[static_cast<int>(cell.task)] += count;
  }
  f.Require(zh[0] == 170 && zh[1] == 170 && zh[2] == 159, "zh totals");
  f.Require(en[0] == 180 && en[1] == 160 && en[2] == 179, "en totals");
  return std::to_string(bench.entries.size()) + " entries; zh " + std::to_string(zh[0]) + "/" +
         std::to_string(zh[1]) + "/" + std::to_string(zh[2]) + ", en " +
         std::to_string(en[0]) + "/" + std::to_string(en[1]) + "/" + std::to_string(en[2]);
}

std::string Metrics(Findings& f) {
  Rng rng(10);
  for (int trial = 0; trial < 1000; ++trial) {
    auto ref = uniedit::testing::RandomTokens(rng, 15, 5);
    if (ref.empty()) ref.push_back("a");
    const auto hyp = uniedit::testing::RandomTokens(rng, 15, 5);
    const double expected =
        static_cast<double>(uniedit::testing::LevenshteinOracle(ref, hyp)) / ref.size();
    f.Require(metrics::Wer(ref, hyp) == expected, "wer trial " + std::to_string(trial));
  }
  for (int trial = 0; trial < 100; ++trial) {
    const int l = static_cast<int>(rng.UniformInt(4, 20));
    std::vector<std::string> ref(l);
    for (int i = 0; i < l; ++i) ref[i] = "w" + std::to_string(i);
    const int b = static_cast<int>(rng.UniformInt(0, l - 2));
    const int e = static_cast<int>(rng.UniformInt(b + 1, l - 1));
    auto inside = ref;
    inside[b] = "zz";
    f.Require(metrics::NoEditWer(ref, inside, {b, e}) == 0.0, "inside error");
    auto outside = ref;
    outside[e] = "zz";
    const double outside_count = l - (e - b);
    f.Require(metrics::NoEditWer(ref, outside, {b, e}) == 1.0 / outside_count,
              "outside error");
  }
  f.Require(std::abs(metrics::Rde(1.06, 1.0) - 0.06) < 1e-15, "rde");
  f.Require(metrics::Rde(2.0, 2.0) == 0.0, "rde exact");
  f.Require(metrics::Rae(0.75, 0.75) == 0.0, "rae exact");
  f.Require(metrics::Rae(0.5, 0.25) == 1.0, "rae double");
  return "1000 WER pairs, 100 no-edit cases, RDE/RAE arithmetic";
}

int Cli(std::vector<std::string> args, std::string* err = nullptr) {
  args.insert(args.begin(), "uniedit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, errs;
  const int code = cli::RunCli(static_cast<int>(argv.size()), argv.data(), out, errs);
  if (err) *err = errs.str();
  return code;
}

bool SameTree(const fs::path& a, const fs::path& b) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (e.is_regular_file()) files.push_back(fs::relative(e.path(), a));
  }
  long count_b = 0;
  for (const auto& e : fs::recursive_directory_iterator(b)) count_b += e.is_regular_file();
  if (static_cast<long>(files.size()) != count_b) return false;
  for (const auto& rel : files) {
    if (!fs::exists(b / rel) ||
        uniedit::testing::ReadFileBytes(a / rel) != uniedit::testing::ReadFileBytes(b / rel)) {
      return false;
    }
  }
  return !files.empty();
}

std::string Determinism(Findings& f) {
  const auto dir = uniedit::testing::MakeTempDir("acceptance_determinism");
  const auto manifest = uniedit::testing::WriteAudioCorpus(dir, 6, 6, 11);
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"e1", "1"}, {"e2", "1"}, {"e3", "4"}};
  for (const auto& [name, jobs] : runs) {
    std::string err;
    const int code = Cli({"build-editset", "--manifest", manifest.string(), "--noise-dir",
                          (dir / "noise").string(), "--seed", "13", "--jobs", jobs, "--out",
                          (dir / name).string()},
                         &err);
    f.Require(code == 0, "build-editset " + name + ": " + err);
  }
  f.Require(SameTree(dir / "e1", dir / "e2"), "build-editset rerun differs");
  f.Require(SameTree(dir / "e1", dir / "e3"), "build-editset --jobs 4 differs");

  for (const auto& [name, jobs] : runs) {
    std::string err;
    const int code = Cli({"flow-demo", "--seed", "13", "--jobs", jobs, "--out",
                          (dir / (name + ".json")).string()},
                         &err);
    f.Require(code == 0, "flow-demo " + name + ": " + err);
  }
  const auto flow_a = uniedit::testing::ReadFileBytes(dir / "e1.json");
  f.Require(!flow_a.empty(), "flow-demo output empty");
  f.Require(flow_a == uniedit::testing::ReadFileBytes(dir / "e2.json"), "flow-demo rerun");
  f.Require(flow_a == uniedit::testing::ReadFileBytes(dir / "e3.json"), "flow-demo --jobs 4");
  return "build-editset and flow-demo byte-identical across reruns and --jobs 1/4";
}

}  // namespace
}  // namespace uniedit

int main() {
  using uniedit::Criterion;
  const std::vector<std::pair<const char*, Criterion>> criteria = {
      {"framing", uniedit::Framing},
      {"stft round trip", uniedit::StftRoundTrip},
      {"loss stack", uniedit::LossStack},
      {"pooling", uniedit::Pooling},
      {"flow matching", uniedit::FlowMatching},
      {"stop labels", uniedit::StopLabels},
      {"golden edits", uniedit::GoldenEdits},
      {"edit-pair algebra", uniedit::PairAlgebra},
      {"benchmark validation", uniedit::BenchmarkValidation},
      {"metrics", uniedit::Metrics},
      {"determinism", uniedit::Determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    uniedit::Findings findings;
    std::string detail;
    try {
      detail = criteria[i].second(findings);
    } catch (const std::exception& e) {
      findings.Require(false, std::string("exception: ") + e.what());
    }
    const bool ok = findings.ok();
    failed += !ok;
    std::printf("%s criterion %zu (%s): %s\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].first,
                ok ? detail.c_str() : findings.Summary().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
