// Copyright 2026 The vcseq Authors.
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

#include "vcseq/cli/app.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <set>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "vcseq/common/bytes.hpp"
#include "vcseq/common/error.hpp"
#include "vcseq/config.hpp"
#include "vcseq/dsp/audio.hpp"
#include "vcseq/dsp/griffin_lim.hpp"
#include "vcseq/dsp/mel.hpp"
#include "vcseq/dsp/melf.hpp"
#include "vcseq/model/gradcheck_suite.hpp"
#include "vcseq/pipeline/checkpoint.hpp"
#include "vcseq/pipeline/convert.hpp"
#include "vcseq/pipeline/corpus.hpp"
#include "vcseq/pipeline/figures.hpp"
#include "vcseq/pipeline/synthetic.hpp"
#include "vcseq/pipeline/train.hpp"

namespace vcseq::cli {
namespace {

namespace fs = std::filesystem;
using namespace vcseq::pipeline;

struct CorpusLocation {
  std::string root;
  std::string manifest;
};

// A corpus is named by its manifest or by a directory holding manifest.txt.
CorpusLocation Locate(const std::string& path) {
  const fs::path p(path);
  if (fs::is_directory(p)) return {p.string(), (p / "manifest.txt").string()};
  if (!fs::exists(p)) throw IoError("corpus not found: " + path);
  const fs::path parent = p.parent_path().empty() ? fs::path(".") : p.parent_path();
  return {parent.string(), p.string()};
}

std::vector<Utterance> Scan(const CorpusLocation& c, const AudioConfig& audio, std::ostream& err) {
  FeatureCacheReport report;
  auto utts = ScanCorpus(c.root, c.manifest, DefaultCacheDir(c.manifest), audio, &report);
  err << fmt::format("{}: {} utterances ({} extracted, {} cached)\n", c.manifest, utts.size(),
                     report.written, report.reused);
  return utts;
}

Config LoadOrDefault(const std::string& path) { return path.empty() ? Config{} : LoadConfig(path); }

void EmitProgressHeader(std::ostream& out) { out << ProgressHeader() << '\n' << std::flush; }

LoopOptions MakeLoopOptions(const std::string& out_dir, bool no_wall_clock, std::ostream& out) {
  LoopOptions opts;
  opts.out_dir = out_dir;
  opts.wall_clock = !no_wall_clock;
  opts.on_progress = [&out](const ProgressRow& row) {
    out << FormatProgress(row) << '\n' << std::flush;
  };
  return opts;
}

void Summarize(const char* verb, const Trainer& t, const LoopResult& r, std::ostream& err) {
  err << fmt::format("{}: stopped at step {} (lr {:g})", verb, t.step(),
                     LearningRate(t.config().train, t.phase()));
  if (!r.rows.empty()) err << fmt::format(", train L1 {:.6f}", r.rows.back().train_l1);
  if (!r.last_path.empty()) err << ", latest checkpoint " << r.last_path;
  err << '\n';
}

std::string SwapExtension(const std::string& path, const char* ext) {
  return fs::path(path).replace_extension(ext).string();
}

// ------------------------------------------------------------------ verbs

struct ExtractArgs {
  std::string manifest, root, out_dir, config;
};

int FeaturesExtract(const ExtractArgs& a, std::ostream& out, std::ostream& err) {
  const Config cfg = LoadOrDefault(a.config);
  CorpusLocation loc = Locate(a.manifest);
  if (!a.root.empty()) loc.root = a.root;
  const std::string cache = a.out_dir.empty() ? DefaultCacheDir(loc.manifest) : a.out_dir;
  FeatureCacheReport report;
  const auto utts = ScanCorpus(loc.root, loc.manifest, cache, cfg.audio, &report);
  out << "id,frames,path\n";
  for (const auto& u : utts) out << fmt::format("{},{},{}\n", u.id, u.n_frames, u.mel_path);
  err << fmt::format("features-extract: {} written, {} up to date\n", report.written,
                     report.reused);
  return kExitOk;
}

struct InvertArgs {
  std::string mel, out, config;
  std::size_t iters = 0;
};

int FeaturesInvert(const InvertArgs& a, std::ostream& err) {
  const Config cfg = LoadOrDefault(a.config);
  const dsp::MelSpectrogram raw = dsp::ReadMelf(a.mel);
  if (raw.n_mels() != cfg.audio.n_mels || raw.sample_rate != cfg.audio.sample_rate) {
    throw ArgumentError(fmt::format("{} holds {} bins at {} Hz; config expects {} at {} Hz", a.mel,
                                    raw.n_mels(), raw.sample_rate, cfg.audio.n_mels,
                                    cfg.audio.sample_rate));
  }
  if (raw.n_frames() == 0) throw ArgumentError(a.mel + " has no frames");
  const dsp::MelStats stats = dsp::ComputeStats({raw});
  const auto fb = dsp::BuildMelFilterbank(cfg.audio);
  const auto params = dsp::FrameParamsFrom(cfg.audio);
  const auto linear = dsp::MelToLinear(dsp::Normalize(raw, stats), fb, params, stats);
  const std::size_t iters = a.iters > 0 ? a.iters : cfg.infer.gl_iters;
  const auto gl = dsp::GriffinLim(linear, iters, cfg.audio.sample_rate);
  dsp::SaveWav(gl.audio, a.out);
  err << fmt::format("features-invert: {} frames -> {:.3f} s, spectral distance {:.4g} -> {:.4g}\n",
                     raw.n_frames(), gl.audio.duration(), gl.distances.front(),
                     gl.distances.back());
  return kExitOk;
}

struct PretrainArgs {
  std::string corpus, config, out, resume, seed;
  bool no_wall_clock = false;
};

int Pretrain(const PretrainArgs& a, std::ostream& out, std::ostream& err) {
  Config cfg = LoadOrDefault(a.config);
  cfg.train.seed = ResolveSeed(a.seed, cfg.train.seed);
  const auto utts = Scan(Locate(a.corpus), cfg.audio, err);
  // Autoencoder pretraining: every utterance is its own target.
  const auto pairs = MakePairs(utts, utts, SplitFromConfig(cfg.train, utts.size()), cfg.train.seed);
  auto trainer = [&] {
    if (a.resume.empty()) {
      return Trainer::Fresh(cfg, Phase::kPretrain, MakeTrainingData(pairs, CorpusStats(pairs)));
    }
    const Checkpoint ckpt = LoadCheckpoint(a.resume);
    if (ckpt.phase != Phase::kPretrain) throw ArgumentError(a.resume + " is not a pretrain checkpoint");
    return Trainer::Resume(ckpt, cfg, MakeTrainingData(pairs, ckpt.stats));
  }();
  EmitProgressHeader(out);
  const auto result = RunTraining(trainer, MakeLoopOptions(a.out, a.no_wall_clock, out));
  Summarize("pretrain", trainer, result, err);
  return kExitOk;
}

struct AdaptArgs {
  std::string from_ckpt, source, target, config, out, seed;
  bool no_wall_clock = false;
};

int Adapt(const AdaptArgs& a, std::ostream& out, std::ostream& err) {
  const Checkpoint pre = LoadCheckpoint(a.from_ckpt);
  if (pre.phase != Phase::kPretrain) {
    throw ArgumentError(a.from_ckpt + " is a " + ToString(pre.phase) +
                        " checkpoint; adapt starts from a pretrain checkpoint");
  }
  Config cfg = a.config.empty() ? pre.config : LoadConfig(a.config);
  cfg.train.seed = ResolveSeed(a.seed, cfg.train.seed);
  const auto src = Scan(Locate(a.source), cfg.audio, err);
  const auto tgt = Scan(Locate(a.target), cfg.audio, err);
  std::set<std::string> target_ids;
  for (const auto& u : tgt) target_ids.insert(u.id);
  const auto n = static_cast<std::size_t>(std::count_if(
      src.begin(), src.end(), [&](const Utterance& u) { return target_ids.count(u.id) > 0; }));
  const auto pairs = MakePairs(src, tgt, SplitFromConfig(cfg.train, n), cfg.train.seed);
  // Normalization stays frozen at the pretraining corpus statistics.
  auto trainer = Trainer::Adapt(pre, cfg, MakeTrainingData(pairs, pre.stats));
  EmitProgressHeader(out);
  const auto result = RunTraining(trainer, MakeLoopOptions(a.out, a.no_wall_clock, out));
  Summarize("adapt", trainer, result, err);
  return kExitOk;
}

struct ConvertArgs {
  std::string ckpt, in, out, dump_alignment, dump_mel;
  std::size_t max_steps = 0;
};

int Convert(const ConvertArgs& a, std::ostream& out, std::ostream& err) {
  const Converter converter(LoadCheckpoint(a.ckpt));
  ConvertOptions opts;
  opts.max_steps = a.max_steps;
  const Conversion c = converter.Convert(dsp::LoadWav(a.in), opts);
  dsp::SaveWav(c.audio, a.out);
  if (!a.dump_alignment.empty()) {
    const bool pgm_named = fs::path(a.dump_alignment).extension() == ".pgm";
    const std::string csv = pgm_named ? SwapExtension(a.dump_alignment, ".csv") : a.dump_alignment;
    const std::string pgm = pgm_named ? a.dump_alignment : SwapExtension(a.dump_alignment, ".pgm");
    WriteText(csv, MatrixToCsv(c.alignment));
    WriteFileBytes(pgm, EncodePgm(c.alignment));
  }
  if (!a.dump_mel.empty()) dsp::WriteMelf(dsp::Denormalize(c.mel, converter.stats()), a.dump_mel);
  const char* stop = c.stopped_by == model::StopReason::kSilence ? "silence" : "max_steps";
  out << "decoder_steps,encoder_steps,stopped_by\n"
      << fmt::format("{},{},{}\n", c.alignment.rows, c.alignment.cols, stop);
  err << fmt::format("convert: {} -> {} ({:.3f} s at {} Hz)\n", a.in, a.out, c.audio.duration(),
                     c.audio.sample_rate);
  return kExitOk;
}

struct GradcheckArgs {
  std::string scale = "tiny", seed, fault;
};

int Gradcheck(const GradcheckArgs& a, std::ostream& out, std::ostream& err) {
  model::CheckSuiteOptions opts;
  opts.scale = a.scale == "small" ? model::CheckScale::kSmall : model::CheckScale::kTiny;
  opts.seed = ResolveSeed(a.seed, 1);
  opts.fault = a.fault;
  const auto results = model::RunGradientChecks(opts);
  out << "component,max_rel_error,tolerance,entries,status\n";
  const model::ComponentCheck* worst = nullptr;
  for (const auto& r : results) {
    out << fmt::format("{},{:.3e},{:.0e},{},{}\n", r.component, r.max_rel_error, r.tolerance,
                       r.entries, r.passed ? "pass" : "FAIL");
    if (!r.passed &&
        (worst == nullptr || r.max_rel_error / r.tolerance > worst->max_rel_error / worst->tolerance)) {
      worst = &r;
    }
  }
  if (worst != nullptr) {
    err << fmt::format(
        "gradcheck failed; worst offender: {} (parameter {}[{}], relative error {:.3e} > {:.0e}, "
        "analytic {:.6e}, numeric {:.6e})\n",
        worst->component, worst->worst_param, worst->worst_index, worst->max_rel_error,
        worst->tolerance, worst->worst_analytic, worst->worst_numeric);
    return kExitInternalError;
  }
  err << fmt::format("gradcheck: all {} components within tolerance\n", results.size());
  return kExitOk;
}

struct PlotArgs {
  std::string alignment, mel, out;
};

int Plot(const PlotArgs& a, std::ostream& err) {
  dsp::Matrix<float> image;
  if (!a.alignment.empty()) {
    const auto bytes = ReadFileBytes(a.alignment);
    image = MatrixFromCsv(std::string(bytes.begin(), bytes.end()));
  } else {
    const dsp::MelSpectrogram raw = dsp::ReadMelf(a.mel);
    if (raw.n_frames() == 0) throw ArgumentError(a.mel + " has no frames");
    image = MelImage(dsp::Normalize(raw, dsp::ComputeStats({raw})).frames);
  }
  WriteFileBytes(a.out, EncodePgm(image));
  err << fmt::format("plot: {} x {} image -> {}\n", image.cols, image.rows, a.out);
  return kExitOk;
}

struct SynthArgs {
  std::string out, style = "tones";
  SyntheticCorpus corpus;
};

int MakeSynthetic(SynthArgs a, std::ostream& out) {
  a.corpus.style = a.style == "speech" ? SyntheticStyle::kSpeechLike : SyntheticStyle::kModulatedTones;
  out << WriteSyntheticCorpus(a.out, a.corpus) << '\n';
  return kExitOk;
}

bool IsUserError(const std::exception& e) {
  return dynamic_cast<const ArgumentError*>(&e) != nullptr ||
         dynamic_cast<const ValidationError*>(&e) != nullptr ||
         dynamic_cast<const IoError*>(&e) != nullptr ||
         dynamic_cast<const FormatError*>(&e) != nullptr ||
         dynamic_cast<const UnsupportedError*>(&e) != nullptr ||
         dynamic_cast<const VersionError*>(&e) != nullptr ||
         dynamic_cast<const CorruptionError*>(&e) != nullptr;
}

}  // namespace

std::uint64_t ResolveSeed(const std::string& flag_value, std::uint64_t fallback) {
  std::string text = flag_value;
  const char* source = "--seed";
  if (text.empty()) {
    const char* env = std::getenv("VC_SEED");
    if (env == nullptr || *env == '\0') return fallback;
    text = env;
    source = "VC_SEED";
  }
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used, 10);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.front() == '-') {
    throw ArgumentError(fmt::format("{} must be a non-negative integer, got '{}'", source, text));
  }
  return v;
}

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sequence-to-sequence voice conversion", "vcseq"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 0;
  std::string log_level = "info";
  app.add_option("--threads", threads, "OpenMP threads (0: runtime default; 1 for bit-stable runs)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

  ExtractArgs extract;
  auto* fx = app.add_subcommand("features-extract", "Cache log-mel features for a manifest");
  fx->add_option("--manifest", extract.manifest, "Manifest file or corpus directory")->required();
  fx->add_option("--root", extract.root, "Audio root (default: the manifest's directory)");
  fx->add_option("--out-dir", extract.out_dir, "Feature directory (default: <root>/mel_cache)");
  fx->add_option("--config", extract.config, "JSON config");

  InvertArgs invert;
  auto* fi = app.add_subcommand("features-invert", "Vocode a .melf file with Griffin-Lim");
  fi->add_option("--mel", invert.mel, "Input .melf")->required();
  fi->add_option("--out", invert.out, "Output wav")->required();
  fi->add_option("--config", invert.config, "JSON config");
  fi->add_option("--iters", invert.iters, "Griffin-Lim iterations (default: infer.gl_iters)");

  PretrainArgs pretrain;
  auto* pt = app.add_subcommand("pretrain", "Autoencoder pretraining on one corpus");
  pt->add_option("--corpus", pretrain.corpus, "Manifest file or corpus directory")->required();
  pt->add_option("--config", pretrain.config, "JSON config");
  pt->add_option("--out", pretrain.out, "Checkpoint directory")->required();
  pt->add_option("--resume", pretrain.resume, "Continue from a pretrain checkpoint");
  pt->add_option("--seed", pretrain.seed, "Overrides VC_SEED and train.seed");
  pt->add_flag("--no-wall-clock", pretrain.no_wall_clock, "Report wall_ms as 0");

  AdaptArgs adapt;
  auto* ad = app.add_subcommand("adapt", "Adapt a pretrained model to a source/target pair");
  ad->add_option("--from-ckpt", adapt.from_ckpt, "Pretrain checkpoint")->required();
  ad->add_option("--source-corpus", adapt.source, "Source speaker corpus")->required();
  ad->add_option("--target-corpus", adapt.target, "Target speaker corpus")->required();
  ad->add_option("--config", adapt.config, "JSON config (default: the checkpoint's)");
  ad->add_option("--out", adapt.out, "Checkpoint directory")->required();
  ad->add_option("--seed", adapt.seed, "Overrides VC_SEED and train.seed");
  ad->add_flag("--no-wall-clock", adapt.no_wall_clock, "Report wall_ms as 0");

  ConvertArgs convert;
  auto* cv = app.add_subcommand("convert", "Convert one utterance");
  cv->add_option("--ckpt", convert.ckpt, "Checkpoint")->required();
  cv->add_option("--in", convert.in, "Input wav")->required();
  cv->add_option("--out", convert.out, "Output wav")->required();
  cv->add_option("--dump-alignment", convert.dump_alignment,
                 "Alignment CSV path; a .pgm image is written beside it");
  cv->add_option("--dump-mel", convert.dump_mel, "Decoded log-mel as .melf");
  cv->add_option("--max-steps", convert.max_steps, "Decoder step budget (default: derived)");

  GradcheckArgs gradcheck;
  auto* gc = app.add_subcommand("gradcheck", "Finite-difference gradient checks");
  gc->add_option("--scale", gradcheck.scale, "tiny or small")
      ->check(CLI::IsMember({"tiny", "small"}));
  gc->add_option("--seed", gradcheck.seed, "Overrides VC_SEED (default 1)");
  gc->add_option("--inject-fault", gradcheck.fault)->group("");

  PlotArgs plot;
  auto* pl = app.add_subcommand("plot", "Render an alignment CSV or a .melf as a PGM image");
  auto* pl_align = pl->add_option("--alignment", plot.alignment, "Alignment CSV");
  auto* pl_mel = pl->add_option("--mel", plot.mel, "Log-mel .melf");
  pl_align->excludes(pl_mel);
  pl->add_option("--out", plot.out, "Output .pgm")->required();
  pl->require_option(2);

  SynthArgs synth;
  auto* sy = app.add_subcommand("make-synthetic", "Write a synthetic corpus with a manifest");
  sy->add_option("--out", synth.out, "Corpus directory")->required();
  sy->add_option("--count", synth.corpus.count, "Utterances")->capture_default_str();
  sy->add_option("--seed", synth.corpus.seed, "Script seed")->capture_default_str();
  sy->add_option("--pitch", synth.corpus.pitch_factor, "Frequency scale")->capture_default_str();
  sy->add_option("--style", synth.style, "tones or speech")
      ->check(CLI::IsMember({"tones", "speech"}))
      ->capture_default_str();
  sy->add_option("--min-seconds", synth.corpus.min_seconds)->capture_default_str();
  sy->add_option("--max-seconds", synth.corpus.max_seconds)->capture_default_str();
  sy->add_option("--sample-rate", synth.corpus.sample_rate)->capture_default_str();

  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& arg = args[i];
    if (arg == "--threads" || arg == "--log-level") {
      ++i;  // skip the value
      continue;
    }
    if (arg.starts_with("-")) continue;
    const auto subs = app.get_subcommands([](const CLI::App*) { return true; });
    const bool known = std::any_of(subs.begin(), subs.end(),
                                   [&](const CLI::App* s) { return s->get_name() == arg; });
    if (!known) {
      err << "unknown command '" << arg << "'\n" << app.help();
      return kExitUserError;
    }
    break;
  }

  std::vector<std::string> argv_store = {"vcseq"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code != 0 && dynamic_cast<const CLI::CallForHelp*>(&e) == nullptr) {
      err << app.help();
    }
    return code == 0 ? kExitOk : kExitUserError;
  }

  spdlog::set_level(spdlog::level::from_str(log_level));
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (fx->parsed()) return FeaturesExtract(extract, out, err);
    if (fi->parsed()) return FeaturesInvert(invert, err);
    if (pt->parsed()) return Pretrain(pretrain, out, err);
    if (ad->parsed()) return Adapt(adapt, out, err);
    if (cv->parsed()) return Convert(convert, out, err);
    if (gc->parsed()) return Gradcheck(gradcheck, out, err);
    if (pl->parsed()) return Plot(plot, err);
    if (sy->parsed()) return MakeSynthetic(synth, out);
  } catch (const std::exception& e) {
    if (IsUserError(e)) {
      err << "error: " << e.what() << '\n';
      return kExitUserError;
    }
    err << "internal error: " << e.what() << '\n';
    return kExitInternalError;
  }
  err << app.help();
  return kExitUserError;
}

}  // namespace vcseq::cli
