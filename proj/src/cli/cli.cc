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

#include "uniedit/cli/cli.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "uniedit/audio/manifest.h"
#include "uniedit/audio/wav.h"
#include "uniedit/common/error.h"
#include "uniedit/compressor/compressor.h"
#include "uniedit/dsp/framing.h"
#include "uniedit/dsp/stft.h"
#include "uniedit/flow/toy_training.h"
#include "uniedit/forge/benchmark.h"
#include "uniedit/forge/editset.h"
#include "uniedit/metrics/report.h"
#include "uniedit/vae/latent.h"

namespace uniedit::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

// Flat JSON object of option values for --config; keys are long option
// names without dashes. Command-line flags take precedence.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const CLI::App* root) : root_(root) {}

  std::string to_config(const CLI::App*, bool, bool, std::string) const override {
    return "{}";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    Json j;
    try {
      input >> j;
    } catch (const Json::exception& e) {
      throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config must be a JSON object");
    // Keys belong to whichever subcommand was invoked.
    std::vector<std::string> parents;
    for (const auto* sub : root_->get_subcommands()) parents.push_back(sub->get_name());
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : j.items()) {
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      const auto text = [](const Json& v) {
        return v.is_string() ? v.get<std::string>() : v.dump();
      };
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(text(v));
      } else {
        item.inputs.push_back(text(value));
      }
      items.push_back(std::move(item));
    }
    return items;
  }

 private:
  const CLI::App* root_;
};

void WriteJsonFile(const Json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path);
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

Json FiniteOrNull(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

forge::CellCounts CountsArg(const std::string& arg) {
  if (arg == "basic") return forge::BasicBenchmarkCounts();
  if (arg == "full") return forge::FullBenchmarkCounts();
  return forge::CountsFromJson(ReadJsonFile(arg));
}

CLI::App* Sub(CLI::App& app, const char* name, const char* help) {
  return app.add_subcommand(name, help);
}

// --- tokenize -------------------------------------------------------------

struct TokenizeArgs {
  std::string input, output;
  int dim = vae::kDefaultLatentDim;
  int factor = 5;
  uint64_t seed = 0;
};

void RunTokenize(const TokenizeArgs& a, std::ostream& out) {
  const auto wave = audio::ReadWav(a.input);
  const auto seq = dsp::FrameWaveform(wave);
  const Matrix& frames = seq.frames;
  // Toy encoder: a fixed random projection of each frame.
  Rng rng(DeriveSeed(a.seed, "toy-encoder"));
  Matrix proj(dsp::kFrameSamples, a.dim);
  for (Eigen::Index i = 0; i < proj.size(); ++i) {
    proj.data()[i] = rng.Normal() / std::sqrt(static_cast<double>(dsp::kFrameSamples));
  }
  const Matrix latent = frames * proj;

  Json rms = Json::array();
  for (Eigen::Index t = 0; t < frames.rows(); ++t) {
    rms.push_back(std::sqrt(frames.row(t).squaredNorm() / dsp::kFrameSamples));
  }
  Json mean = Json::array(), stddev = Json::array();
  for (Eigen::Index d = 0; d < latent.cols(); ++d) {
    const double m = latent.rows() ? latent.col(d).mean() : 0.0;
    const double v =
        latent.rows() ? (latent.col(d).array() - m).square().mean() : 0.0;
    mean.push_back(m);
    stddev.push_back(std::sqrt(v));
  }
  compressor::CompressorConfig cc;
  cc.factor = a.factor;
  const auto pooled = compressor::PoolCompress({latent}, cc);
  const Json report = {
      {"sample_rate", wave.sample_rate},
      {"num_samples", wave.samples.size()},
      {"num_frames", frames.rows()},
      {"frame_rate", seq.frame_rate},
      {"frame_rms", rms},
      {"latent", {{"dim", a.dim}, {"mean", mean}, {"std", stddev}}},
      {"compression_factor", a.factor},
      {"compressed_frames", pooled.values.rows()},
      {"compressed_rate", seq.frame_rate / a.factor}};
  WriteJsonFile(report, a.output);
  out << Json{{"output", a.output}, {"num_frames", frames.rows()}}.dump() << '\n';
}

// --- reconstruct ----------------------------------------------------------

struct ReconstructArgs {
  std::string input, output;
  int fft = 1024;
  int hop = 256;
  std::string window = "hann";
};

void RunReconstruct(const ReconstructArgs& a, std::ostream& out) {
  const auto wave = audio::ReadWav(a.input);
  dsp::StftConfig config;
  config.fft_size = a.fft;
  config.hop_size = a.hop;
  config.window = dsp::ParseWindow(a.window);
  const auto spec = dsp::Stft(wave, config, /*round_trip=*/true);
  const auto rebuilt = dsp::IstftSynthesize(spec);
  audio::WriteWav(rebuilt, a.output);
  const std::size_t n = wave.samples.size();
  const std::size_t edge = static_cast<std::size_t>(a.fft);
  Json report = {{"output", a.output},
                 {"fft_size", a.fft},
                 {"hop_size", a.hop},
                 {"window", a.window},
                 {"num_samples", n},
                 {"snr_db", FiniteOrNull(dsp::SnrDb(wave.samples, rebuilt.samples, 0, n))},
                 {"interior_snr_db", nullptr}};
  if (n > 2 * edge) {
    report["interior_snr_db"] =
        FiniteOrNull(dsp::SnrDb(wave.samples, rebuilt.samples, edge, n - edge));
  }
  out << report.dump() << '\n';
}

// --- build-editset --------------------------------------------------------

struct EditsetArgs {
  std::string manifest, noise_dir, out_dir, tasks;
  uint64_t seed = 0;
  int jobs = 1;
  double edit_weight = forge::kDefaultEditWeight;
};

void RunBuildEditset(const EditsetArgs& a, std::ostream& out) {
  std::vector<audio::Waveform> noise;
  if (!a.noise_dir.empty()) noise = forge::LoadNoiseDir(a.noise_dir);
  forge::EditsetConfig config;
  config.seed = a.seed;
  config.jobs = a.jobs;
  config.edit_weight = a.edit_weight;
  config.tasks = a.tasks.empty() ? forge::DefaultTaskWeights(!noise.empty())
                                 : forge::ParseTaskWeights(a.tasks);
  const auto summary = forge::BuildEditset(a.manifest, noise, a.out_dir, config);
  Json per_task = Json::object();
  for (const auto& ex : summary.examples) {
    per_task[forge::TaskName(ex.task)] = per_task.value(forge::TaskName(ex.task), 0) + 1;
  }
  out << Json{{"manifest", (fs::path(a.out_dir) / "editset.jsonl").string()},
              {"examples", summary.examples.size()},
              {"skipped", summary.skipped.size()},
              {"tasks", per_task}}
             .dump()
      << '\n';
}

// --- gen-bench ------------------------------------------------------------

struct GenBenchArgs {
  std::string manifest, out_dir, mode = "quota", counts = "basic", style = "basic";
  uint64_t seed = 0;
  int jobs = 1;
};

void RunGenBench(const GenBenchArgs& a, std::ostream& out) {
  const auto entries = audio::LoadManifest(a.manifest);
  forge::BenchmarkConfig config;
  config.seed = a.seed;
  config.jobs = a.jobs;
  config.style = a.style == "full" ? forge::TemplateStyle::kFull
                                   : forge::TemplateStyle::kBasic;
  const auto counts = CountsArg(a.counts);
  if (a.mode == "quota") {
    config.mode = forge::AssignmentMode::kQuota;
    config.quota = counts;
  } else {
    config.mode = forge::AssignmentMode::kProportional;
    config.weights = forge::WeightsFromCounts(counts);
  }
  const auto bench = forge::GenerateBenchmark(entries, config);
  fs::create_directories(a.out_dir);
  std::vector<Json> rows, skipped;
  for (const auto& e : bench.entries) rows.push_back(e.ToJson());
  for (const auto& s : bench.skipped) skipped.push_back({{"id", s.id}, {"reason", s.reason}});
  const auto path = (fs::path(a.out_dir) / "benchmark.jsonl").string();
  audio::WriteJsonLines(rows, path);
  audio::WriteJsonLines(skipped, (fs::path(a.out_dir) / "skipped.jsonl").string());
  out << Json{{"manifest", path},
              {"entries", bench.entries.size()},
              {"skipped", bench.skipped.size()},
              {"tally", forge::CountsToJson(bench.Tally())}}
             .dump()
      << '\n';
}

// --- validate-bench -------------------------------------------------------

struct ValidateArgs {
  std::string manifest, expected = "basic", report;
};

int RunValidateBench(const ValidateArgs& a, std::ostream& out) {
  std::vector<forge::BenchmarkEntry> entries;
  int line = 0;
  for (const auto& row : audio::ReadJsonLines(a.manifest)) {
    ++line;
    try {
      entries.push_back(forge::BenchmarkEntry::FromJson(row));
    } catch (const Error& e) {
      throw FormatError(a.manifest + ":" + std::to_string(line) + ": " + e.what());
    }
  }
  const auto report = forge::ValidateBenchmark(entries, CountsArg(a.expected));
  if (!a.report.empty()) WriteJsonFile(report.ToJson(), a.report);
  out << report.ToJson().dump() << '\n';
  return report.ok ? 0 : 1;
}

// --- eval -----------------------------------------------------------------

struct EvalArgs {
  std::string manifest, hypotheses, embeddings, report;
  int jobs = 1;
};

void RunEval(const EvalArgs& a, std::ostream& out) {
  const fs::path mroot = fs::path(a.manifest).parent_path();
  const fs::path hroot = fs::path(a.hypotheses).parent_path();
  std::vector<metrics::EvalReference> refs;
  for (const auto& row : audio::ReadJsonLines(a.manifest)) {
    refs.push_back(metrics::EvalReference::FromJson(row, mroot));
  }
  std::vector<metrics::Hypothesis> hyps;
  for (const auto& row : audio::ReadJsonLines(a.hypotheses)) {
    hyps.push_back(metrics::Hypothesis::FromJson(row, hroot));
  }
  metrics::EmbeddingTable emb;
  if (!a.embeddings.empty()) emb = metrics::LoadEmbeddings(a.embeddings);
  const Json report = metrics::Evaluate(refs, hyps, emb, a.jobs);
  WriteJsonFile(report, a.report);
  out << Json{{"report", a.report}, {"tasks", report["tasks"]}}.dump() << '\n';
}

// --- flow-demo ------------------------------------------------------------

struct FlowArgs {
  std::string output;
  uint64_t seed = 0;
  int steps = 2000;
  int batch = 128;
  double lr = 3e-3;
  int sampler_steps = 32;
  double guidance = 2.0;
};

void RunFlowDemo(const FlowArgs& a, std::ostream& out) {
  flow::ToyFlowConfig config;
  config.seed = a.seed;
  config.steps = a.steps;
  config.batch_size = a.batch;
  config.learning_rate = a.lr;
  config.sampler.steps = a.sampler_steps;
  config.guidance.cfg_weight = a.guidance;
  const auto result = flow::TrainToyFlow(config);
  const Json report = flow::ToyFlowReport(config, result);
  WriteJsonFile(report, a.output);
  out << Json{{"output", a.output},
              {"initial_fm_loss", result.initial_loss},
              {"final_fm_loss", result.final_loss}}
             .dump()
      << '\n';
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Instruction-guided speech editing toolkit"};
  app.require_subcommand(1);
  // --config may follow the subcommand name.
  app.fallthrough();
  app.config_formatter(std::make_shared<JsonConfig>(&app));
  app.set_config("--config", "", "JSON file of option values; flags win");

  TokenizeArgs tok;
  auto* tokenize = Sub(app, "tokenize", "Frame a 16 kHz WAV and write toy latent statistics");
  tokenize->add_option("input", tok.input, "input WAV")->required()->check(CLI::ExistingFile);
  tokenize->add_option("output", tok.output, "output JSON")->required();
  tokenize->add_option("--latent-dim", tok.dim)->check(CLI::PositiveNumber);
  tokenize->add_option("--factor", tok.factor, "pooling factor")->check(CLI::PositiveNumber);
  tokenize->add_option("--seed", tok.seed, "toy projection seed");

  ReconstructArgs rec;
  auto* reconstruct = Sub(app, "reconstruct", "STFT -> iSTFT round trip with SNR report");
  reconstruct->add_option("input", rec.input)->required()->check(CLI::ExistingFile);
  reconstruct->add_option("output", rec.output)->required();
  reconstruct->add_option("--fft", rec.fft)->check(CLI::PositiveNumber);
  reconstruct->add_option("--hop", rec.hop)->check(CLI::PositiveNumber);
  reconstruct->add_option("--window", rec.window)
      ->check(CLI::IsMember({"hann", "sqrt_hann", "rect"}));

  EditsetArgs es;
  auto* editset = Sub(app, "build-editset", "Construct audio edit pairs from a manifest");
  editset->add_option("--manifest", es.manifest)->required()->check(CLI::ExistingFile);
  editset->add_option("--noise-dir", es.noise_dir)->check(CLI::ExistingDirectory);
  editset->add_option("--out", es.out_dir)->required();
  editset->add_option("--seed", es.seed)->required();
  editset->add_option("--jobs", es.jobs)->check(CLI::PositiveNumber);
  editset->add_option("--tasks", es.tasks, "task weights, e.g. deletion:1,speed:2");
  editset->add_option("--edit-weight", es.edit_weight)->check(CLI::Range(1.0, 1e9));

  GenBenchArgs gb;
  auto* genbench = Sub(app, "gen-bench", "Generate a semantic benchmark manifest");
  genbench->add_option("--manifest", gb.manifest)->required()->check(CLI::ExistingFile);
  genbench->add_option("--out", gb.out_dir)->required();
  genbench->add_option("--seed", gb.seed)->required();
  genbench->add_option("--jobs", gb.jobs)->check(CLI::PositiveNumber);
  genbench->add_option("--mode", gb.mode)->check(CLI::IsMember({"quota", "proportional"}));
  genbench->add_option("--counts", gb.counts, "basic, full, or a counts JSON file");
  genbench->add_option("--style", gb.style)->check(CLI::IsMember({"basic", "full"}));

  ValidateArgs va;
  auto* validate = Sub(app, "validate-bench", "Check benchmark tallies against expected counts");
  validate->add_option("--manifest", va.manifest)->required()->check(CLI::ExistingFile);
  validate->add_option("--expected", va.expected, "basic, full, or a counts JSON file");
  validate->add_option("--report", va.report, "optional report JSON path");

  EvalArgs ev;
  auto* eval = Sub(app, "eval", "Score hypotheses against an edit manifest");
  eval->add_option("--manifest", ev.manifest)->required()->check(CLI::ExistingFile);
  eval->add_option("--hypotheses", ev.hypotheses)->required()->check(CLI::ExistingFile);
  eval->add_option("--embeddings", ev.embeddings)->check(CLI::ExistingFile);
  eval->add_option("--report", ev.report)->required();
  eval->add_option("--jobs", ev.jobs)->check(CLI::PositiveNumber);

  FlowArgs fl;
  auto* flowdemo = Sub(app, "flow-demo", "Train and sample the toy 2-D flow-matching model");
  flowdemo->add_option("--seed", fl.seed)->required();
  flowdemo->add_option("--steps", fl.steps)->check(CLI::NonNegativeNumber);
  flowdemo->add_option("--out", fl.output)->required();
  flowdemo->add_option("--batch-size", fl.batch)->check(CLI::PositiveNumber);
  flowdemo->add_option("--lr", fl.lr)->check(CLI::PositiveNumber);
  flowdemo->add_option("--sampler-steps", fl.sampler_steps)->check(CLI::PositiveNumber);
  flowdemo->add_option("--guidance", fl.guidance);
  // Accepted for a uniform interface; training is sequential.
  int flow_jobs = 1;
  flowdemo->add_option("--jobs", flow_jobs)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, err, err);
  }

  try {
    if (tokenize->parsed()) RunTokenize(tok, out);
    if (reconstruct->parsed()) RunReconstruct(rec, out);
    if (editset->parsed()) RunBuildEditset(es, out);
    if (genbench->parsed()) RunGenBench(gb, out);
    if (validate->parsed()) return RunValidateBench(va, out);
    if (eval->parsed()) RunEval(ev, out);
    if (flowdemo->parsed()) RunFlowDemo(fl, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace uniedit::cli
