// tools/csasr-main.cc

// Copyright 2026  CSASR Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// csasr: multilingual / code-switching ASR data preparation and scoring.
// Subcommands: normalize, charmap, bpe-train, bpe-encode, featurize,
// augment, ctc-score, score, cmi. Exit codes: 0 success, 1 validation
// error, 2 I/O error. All randomness derives from --seed.

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "csasr/charspace.h"
#include "csasr/common.h"
#include "csasr/ctc.h"
#include "csasr/features.h"
#include "csasr/manifest.h"
#include "csasr/metrics.h"
#include "csasr/textnorm.h"
#include "csasr/tokenizer.h"
#include "csasr/unicode.h"
#include "csasr/wav.h"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct GlobalOptions {
  long long seed = 0;
  int jobs = 1;
  bool quiet = false;
};

uint64_t Fnv1a64(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Deterministic per-utterance seed independent of processing order.
uint64_t UtteranceSeed(long long seed, const std::string& id) {
  return static_cast<uint64_t>(seed) ^ Fnv1a64(id);
}

// Index-parallel loop; results must be written to pre-sized slots so the
// aggregation order stays fixed regardless of --jobs.
void ParallelFor(size_t n, int jobs, const std::function<void(size_t)>& fn) {
  jobs = std::max(1, jobs);
  if (jobs == 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> workers;
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  const size_t num_workers = std::min(static_cast<size_t>(jobs), n);
  for (size_t w = 0; w < num_workers; ++w) workers.emplace_back(worker);
  for (auto& t : workers) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<std::string> ReadLines(const std::string& path) {
  std::vector<std::string> lines;
  std::string line;
  if (path == "-") {
    while (std::getline(std::cin, line)) lines.push_back(line);
    return lines;
  }
  std::ifstream in(path);
  if (!in) throw csasr::IoError("cannot open '" + path + "'");
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

void WriteLines(const std::string& path, const std::vector<std::string>& lines) {
  if (path == "-") {
    for (const auto& line : lines) std::cout << line << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw csasr::IoError("cannot write '" + path + "'");
  for (const auto& line : lines) out << line << '\n';
  if (!out) throw csasr::IoError("failed writing '" + path + "'");
}

void EmitJson(const ordered_json& j) { std::cout << j.dump(2) << '\n'; }

// ---------------------------------------------------------------- normalize

struct NormalizeArgs {
  std::string in = "-";
  std::string out = "-";
  bool manifest = false;
  std::string keep = "%@";
  bool no_diacritics = false;
  bool no_digits = false;
  bool no_lowercase = false;
};

csasr::NormalizationConfig ToConfig(const NormalizeArgs& args) {
  csasr::NormalizationConfig config;
  config.keep_punct = csasr::DecodeUtf8(args.keep);
  config.strip_diacritics = !args.no_diacritics;
  config.map_digits = !args.no_digits;
  config.lowercase_latin = !args.no_lowercase;
  return config;
}

// Normalizes one record. Tokens that normalize away are dropped together
// with their language tags, keeping the tags parallel to the tokens.
csasr::UtteranceRecord NormalizeRecord(const csasr::UtteranceRecord& record,
                                       const csasr::NormalizationConfig& config) {
  csasr::UtteranceRecord out = record;
  if (!record.lang_tags.has_value()) {
    out.text = csasr::NormalizeText(record.text, config);
    return out;
  }
  std::vector<std::string> tokens = csasr::SplitTokens(record.text);
  std::vector<std::string> kept_tokens;
  std::vector<std::string> kept_tags;
  for (size_t i = 0; i < tokens.size(); ++i) {
    std::string cleaned = csasr::NormalizeText(tokens[i], config);
    if (cleaned.empty()) continue;
    kept_tokens.push_back(std::move(cleaned));
    kept_tags.push_back((*record.lang_tags)[i]);
  }
  out.text = csasr::JoinTokens(kept_tokens);
  out.lang_tags = std::move(kept_tags);
  return out;
}

int RunNormalize(const NormalizeArgs& args) {
  csasr::NormalizationConfig config = ToConfig(args);
  std::vector<std::string> lines = ReadLines(args.in);
  std::vector<std::string> out;
  out.reserve(lines.size());
  if (args.manifest) {
    size_t line_no = 0;
    for (const std::string& line : lines) {
      ++line_no;
      if (line.empty()) continue;
      csasr::UtteranceRecord record = csasr::RecordFromJsonLine(
          line, "line " + std::to_string(line_no));
      out.push_back(csasr::RecordToJsonLine(NormalizeRecord(record, config)));
    }
  } else {
    for (const std::string& line : lines) {
      out.push_back(csasr::NormalizeText(line, config));
    }
  }
  WriteLines(args.out, out);
  return 0;
}

// ------------------------------------------------------------------ charmap

struct CharmapArgs {
  std::string in = "-";
  std::string out = "-";
  bool manifest = false;
  std::string mode = "default";
  std::string lang;
  bool invert = false;
};

int RunCharmap(const CharmapArgs& args) {
  csasr::CharMapTable table =
      csasr::BuildCharMap(csasr::CharSpaceModeFromName(args.mode));
  std::optional<std::string> lang;
  if (!args.lang.empty()) lang = args.lang;

  auto transform = [&](const std::string& text) -> std::string {
    if (args.invert) {
      return csasr::InvertCharMap(table, csasr::ParseTagged(table, text)).text;
    }
    std::string mapped = csasr::ApplyCharMap(table, text, lang);
    if (table.mode == csasr::CharSpaceMode::kDistinct) {
      return csasr::RenderTagged(table, mapped);
    }
    return mapped;
  };

  std::vector<std::string> lines = ReadLines(args.in);
  std::vector<std::string> out;
  out.reserve(lines.size());
  if (args.manifest) {
    size_t line_no = 0;
    for (const std::string& line : lines) {
      ++line_no;
      if (line.empty()) continue;
      csasr::UtteranceRecord record = csasr::RecordFromJsonLine(
          line, "line " + std::to_string(line_no));
      record.text = transform(record.text);
      record.lang_tags.reset();  // token boundaries may no longer align
      out.push_back(csasr::RecordToJsonLine(record));
    }
  } else {
    for (const std::string& line : lines) out.push_back(transform(line));
  }
  WriteLines(args.out, out);
  return 0;
}

// ------------------------------------------------------------- bpe commands

struct BpeTrainArgs {
  int size = 0;
  std::string in;
  std::string out;
};

int RunBpeTrain(const BpeTrainArgs& args) {
  std::vector<std::string> corpus = ReadLines(args.in);
  csasr::BpeModel model = csasr::TrainBpe(corpus, args.size);
  csasr::SaveBpeModel(model, args.out);
  ordered_json j;
  j["vocab_size"] = model.vocab.size();
  j["merges"] = model.merges.size();
  j["target_size"] = model.target_size;
  EmitJson(j);
  return 0;
}

struct BpeEncodeArgs {
  std::string model;
  std::string in = "-";
  std::string out = "-";
  bool ids = false;
};

int RunBpeEncode(const BpeEncodeArgs& args) {
  csasr::BpeModel model = csasr::LoadBpeModel(args.model);
  std::vector<std::string> lines = ReadLines(args.in);
  std::vector<std::string> out;
  out.reserve(lines.size());
  for (const std::string& line : lines) {
    csasr::TokenSequence seq = csasr::Encode(model, line);
    std::ostringstream row;
    if (args.ids) {
      for (size_t i = 0; i < seq.ids.size(); ++i) {
        if (i > 0) row << ' ';
        row << seq.ids[i];
      }
    } else {
      for (size_t i = 0; i < seq.pieces.size(); ++i) {
        if (i > 0) row << ' ';
        row << seq.pieces[i];
      }
    }
    out.push_back(row.str());
  }
  WriteLines(args.out, out);
  return 0;
}

// ---------------------------------------------------------------- featurize

struct FeaturizeArgs {
  std::string manifest;
  std::string outdir;
  int n_mels = 80;
  bool no_pitch = false;
  bool no_cmvn = false;
};

int RunFeaturize(const FeaturizeArgs& args, const GlobalOptions& global) {
  csasr::DatasetManifest manifest = csasr::LoadManifest(args.manifest);
  fs::create_directories(args.outdir);
  std::vector<long> frames(manifest.records.size(), 0);
  int dim = args.no_pitch ? args.n_mels : args.n_mels + 3;
  ParallelFor(manifest.records.size(), global.jobs, [&](size_t i) {
    const csasr::UtteranceRecord& record = manifest.records[i];
    if (record.audio_path.empty()) {
      throw std::invalid_argument("featurize: record '" + record.id +
                                  "' has no audio path");
    }
    csasr::AudioBuffer audio =
        csasr::LoadWav(csasr::ResolveAudioPath(args.manifest, record));
    csasr::FeatureMatrix features = csasr::LogMel(audio, args.n_mels);
    if (!args.no_pitch) {
      features = csasr::StackFeatures(features, csasr::PitchFeatures(audio));
    }
    if (!args.no_cmvn) features = csasr::ApplyCmvn(features);
    csasr::SaveFeatureMatrix(features,
                             (fs::path(args.outdir) / (record.id + ".fea")).string());
    frames[i] = features.rows;
  });
  long total_frames = 0;
  for (long f : frames) total_frames += f;
  ordered_json j;
  j["utterances"] = manifest.records.size();
  j["frames"] = total_frames;
  j["dim"] = dim;
  EmitJson(j);
  return 0;
}

// ------------------------------------------------------------------ augment

struct AugmentArgs {
  std::string manifest;
  std::string outdir;
  std::vector<double> speed;
  bool specaug = false;
  std::string featdir;
  int freq_masks = 2;
  int freq_width = 10;
  int time_masks = 2;
  int time_width = 20;
};

// Speed pass: writes <id>_sp<factor>.wav plus manifest.jsonl into outdir
// and returns the new manifest.
csasr::DatasetManifest RunSpeedPass(const AugmentArgs& args,
                                    const GlobalOptions& global) {
  csasr::DatasetManifest manifest = csasr::LoadManifest(args.manifest);
  fs::create_directories(args.outdir);
  size_t n = manifest.records.size() * args.speed.size();
  std::vector<csasr::UtteranceRecord> out_records(n);
  ParallelFor(n, global.jobs, [&](size_t i) {
    const csasr::UtteranceRecord& record =
        manifest.records[i / args.speed.size()];
    double factor = args.speed[i % args.speed.size()];
    if (record.audio_path.empty()) {
      throw std::invalid_argument("augment: record '" + record.id +
                                  "' has no audio path");
    }
    csasr::AudioBuffer audio =
        csasr::LoadWav(csasr::ResolveAudioPath(args.manifest, record));
    csasr::AudioBuffer perturbed = csasr::SpeedPerturb(audio, factor);
    std::ostringstream suffix;
    suffix << "_sp" << factor;
    if (suffix.str().find('.') == std::string::npos) suffix << ".0";
    csasr::UtteranceRecord out = record;
    out.id = record.id + suffix.str();
    out.audio_path = out.id + ".wav";
    out.duration_s = perturbed.DurationSeconds();
    csasr::SaveWav(perturbed,
                   (fs::path(args.outdir) / out.audio_path).string());
    out_records[i] = std::move(out);
  });
  csasr::DatasetManifest out_manifest;
  out_manifest.records = std::move(out_records);
  csasr::SaveManifest(out_manifest,
                      (fs::path(args.outdir) / "manifest.jsonl").string());
  return out_manifest;
}

int RunAugmentSpeed(const AugmentArgs& args, const GlobalOptions& global) {
  csasr::DatasetManifest out_manifest = RunSpeedPass(args, global);
  ordered_json j;
  j["utterances"] = out_manifest.records.size();
  j["factors"] = args.speed;
  EmitJson(j);
  return 0;
}

// Combined pass: perturbed wavs -> 83-dim features -> SpecAugment, one .fea
// per (utterance, factor).
int RunAugmentFull(const AugmentArgs& args, const GlobalOptions& global) {
  csasr::DatasetManifest out_manifest = RunSpeedPass(args, global);
  ParallelFor(out_manifest.records.size(), global.jobs, [&](size_t i) {
    const csasr::UtteranceRecord& record = out_manifest.records[i];
    csasr::AudioBuffer audio =
        csasr::LoadWav((fs::path(args.outdir) / record.audio_path).string());
    csasr::FeatureMatrix features = csasr::ApplyCmvn(
        csasr::StackFeatures(csasr::LogMel(audio), csasr::PitchFeatures(audio)));
    csasr::SpecAugmentConfig config;
    config.num_freq_masks = args.freq_masks;
    config.max_freq_width = args.freq_width;
    config.num_time_masks = args.time_masks;
    config.max_time_width = args.time_width;
    config.seed = UtteranceSeed(global.seed, record.id);
    csasr::SaveFeatureMatrix(
        csasr::SpecAugment(features, config),
        (fs::path(args.outdir) / (record.id + ".fea")).string());
  });
  ordered_json j;
  j["utterances"] = out_manifest.records.size();
  j["factors"] = args.speed;
  j["freq_masks"] = args.freq_masks;
  j["time_masks"] = args.time_masks;
  EmitJson(j);
  return 0;
}

int RunAugmentSpecaug(const AugmentArgs& args, const GlobalOptions& global) {
  csasr::DatasetManifest manifest = csasr::LoadManifest(args.manifest);
  fs::create_directories(args.outdir);
  ParallelFor(manifest.records.size(), global.jobs, [&](size_t i) {
    const csasr::UtteranceRecord& record = manifest.records[i];
    std::string name = record.id + ".fea";
    csasr::FeatureMatrix features =
        csasr::LoadFeatureMatrix((fs::path(args.featdir) / name).string());
    csasr::SpecAugmentConfig config;
    config.num_freq_masks = args.freq_masks;
    config.max_freq_width = args.freq_width;
    config.num_time_masks = args.time_masks;
    config.max_time_width = args.time_width;
    config.seed = UtteranceSeed(global.seed, record.id);
    csasr::FeatureMatrix masked = csasr::SpecAugment(features, config);
    csasr::SaveFeatureMatrix(masked, (fs::path(args.outdir) / name).string());
  });
  ordered_json j;
  j["utterances"] = manifest.records.size();
  j["freq_masks"] = args.freq_masks;
  j["time_masks"] = args.time_masks;
  EmitJson(j);
  return 0;
}

int RunAugment(const AugmentArgs& args, const GlobalOptions& global) {
  if (args.specaug && !args.speed.empty()) {
    return RunAugmentFull(args, global);
  }
  if (args.specaug) {
    if (args.featdir.empty()) {
      throw std::invalid_argument("augment: --specaug requires --featdir");
    }
    return RunAugmentSpecaug(args, global);
  }
  if (args.speed.empty()) {
    throw std::invalid_argument("augment: nothing to do (use --speed or "
                                "--specaug)");
  }
  return RunAugmentSpeed(args, global);
}

// ---------------------------------------------------------------- ctc-score

struct CtcScoreArgs {
  std::string logp;
  std::string labels;
  std::string ce_logp;
  double alpha = 0.3;
};

csasr::LogProbMatrix LoadLogProb(const std::string& path) {
  csasr::FeatureMatrix m = csasr::LoadFeatureMatrix(path);
  csasr::LogProbMatrix logp;
  logp.num_frames = m.rows;
  logp.vocab_size = m.cols;
  logp.values.assign(m.data.begin(), m.data.end());
  return logp;
}

int RunCtcScore(const CtcScoreArgs& args) {
  csasr::LogProbMatrix logp = LoadLogProb(args.logp);
  std::vector<int> labels;
  {
    std::ifstream in(args.labels);
    if (!in) throw csasr::IoError("cannot open labels '" + args.labels + "'");
    int id;
    while (in >> id) labels.push_back(id);
  }
  double ctc = csasr::CtcLoss(logp, labels);
  std::optional<double> ce;
  if (!args.ce_logp.empty()) {
    ce = csasr::CeLoss(LoadLogProb(args.ce_logp), labels);
  } else if (logp.num_frames == static_cast<int>(labels.size())) {
    ce = csasr::CeLoss(logp, labels);
  }
  ordered_json j;
  j["ctc_loss"] = ctc;
  j["ce_loss"] = ce.has_value() ? ordered_json(*ce) : ordered_json(nullptr);
  j["alpha"] = args.alpha;
  j["combined"] = ce.has_value()
                      ? ordered_json(csasr::CombineLosses(ctc, *ce, args.alpha))
                      : ordered_json(nullptr);
  EmitJson(j);
  return 0;
}

// -------------------------------------------------------------------- score

struct ScoreArgs {
  std::string ref;
  std::string hyp;
  std::string glm;
  bool tw = false;
  std::string dialect_glm;
};

int RunScore(const ScoreArgs& args) {
  csasr::DatasetManifest ref = csasr::LoadManifest(args.ref);
  csasr::DatasetManifest hyp = csasr::LoadManifest(args.hyp);
  if (ref.records.size() != hyp.records.size()) {
    throw std::invalid_argument(
        "score: manifests differ in size (" +
        std::to_string(ref.records.size()) + " reference vs " +
        std::to_string(hyp.records.size()) + " hypothesis records)");
  }
  std::map<std::string, const csasr::UtteranceRecord*> by_id;
  for (const auto& record : hyp.records) by_id[record.id] = &record;

  csasr::GlmTable glm;
  if (!args.glm.empty()) glm = csasr::LoadGlm(args.glm);
  if (args.tw && args.glm.empty()) {
    throw std::invalid_argument("score: --tw requires --glm");
  }
  csasr::GlmTable dialect;
  bool use_dialect = !args.dialect_glm.empty();
  if (use_dialect) dialect = csasr::LoadGlm(args.dialect_glm);

  std::vector<std::vector<std::string>> refs, hyps;
  std::vector<std::string> ids;
  for (const auto& record : ref.records) {
    auto it = by_id.find(record.id);
    if (it == by_id.end()) {
      throw std::invalid_argument("score: hypothesis manifest is missing id '" +
                                  record.id + "'");
    }
    std::vector<std::string> r = csasr::SplitTokens(record.text);
    std::vector<std::string> h = csasr::SplitTokens(it->second->text);
    if (use_dialect) {
      r = csasr::ApplyDialectGlm(r, dialect);
      h = csasr::ApplyDialectGlm(h, dialect);
    }
    refs.push_back(std::move(r));
    hyps.push_back(std::move(h));
    ids.push_back(record.id);
  }

  csasr::WerReport wer = csasr::Wer(refs, hyps);
  std::optional<csasr::WerReport> tw;
  if (args.tw) tw = csasr::Tw(refs, hyps, glm);

  ordered_json j;
  j["wer"] = wer.corpus_wer;
  if (tw.has_value()) j["tw"] = tw->corpus_wer;
  j["utterances"] = ids.size();
  j["counts"] = {{"ref", wer.total_ref},
                 {"sub", wer.total_sub},
                 {"del", wer.total_del},
                 {"ins", wer.total_ins}};
  ordered_json per = ordered_json::array();
  for (size_t i = 0; i < ids.size(); ++i) {
    ordered_json u;
    u["id"] = ids[i];
    u["wer"] = wer.per_utterance[i];
    if (tw.has_value()) u["tw"] = tw->per_utterance[i];
    per.push_back(u);
  }
  j["per_utt"] = per;
  EmitJson(j);
  return 0;
}

// ---------------------------------------------------------------------- cmi

struct CmiArgs {
  std::string manifest;
  bool auto_tag = false;
  bool switched_only = false;
};

int RunCmi(const CmiArgs& args) {
  csasr::DatasetManifest manifest = csasr::LoadManifest(args.manifest);
  csasr::CmiReport report =
      csasr::CmiCorpus(manifest, args.auto_tag, args.switched_only);
  ordered_json j;
  j["corpus_cmi"] = report.corpus_cmi;
  j["utterances"] = manifest.records.size();
  ordered_json per = ordered_json::array();
  for (size_t i = 0; i < manifest.records.size(); ++i) {
    ordered_json u;
    u["id"] = manifest.records[i].id;
    u["cmi"] = report.per_utterance[i];
    per.push_back(u);
  }
  j["per_utt"] = per;
  EmitJson(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multilingual / code-switching ASR data preparation and "
               "evaluation toolkit"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--seed", global.seed, "seed for all randomness")
      ->default_val(0);
  app.add_option("--jobs", global.jobs, "parallel workers across utterances")
      ->default_val(1)
      ->check(CLI::PositiveNumber);
  app.add_flag("--quiet", global.quiet, "suppress progress logs");

  NormalizeArgs normalize_args;
  CLI::App* normalize = app.add_subcommand("normalize", "clean transcripts");
  normalize->fallthrough();
  normalize->add_option("--in", normalize_args.in, "input file or - for stdin");
  normalize->add_option("--out", normalize_args.out, "output file or -");
  normalize->add_flag("--manifest", normalize_args.manifest,
                      "treat input as a JSONL manifest");
  normalize->add_option("--keep", normalize_args.keep,
                        "punctuation characters to retain");
  normalize->add_flag("--no-diacritics", normalize_args.no_diacritics,
                      "keep Arabic diacritics");
  normalize->add_flag("--no-digits", normalize_args.no_digits,
                      "keep Arabic-Indic digits");
  normalize->add_flag("--no-lowercase", normalize_args.no_lowercase,
                      "keep Latin case");

  CharmapArgs charmap_args;
  CLI::App* charmap = app.add_subcommand("charmap", "map character space");
  charmap->fallthrough();
  charmap->add_option("--in", charmap_args.in, "input file or -");
  charmap->add_option("--out", charmap_args.out, "output file or -");
  charmap->add_flag("--manifest", charmap_args.manifest,
                    "treat input as a JSONL manifest");
  charmap->add_option("--mode", charmap_args.mode,
                      "default|distinct|forced")
      ->required();
  charmap->add_option("--lang", charmap_args.lang,
                      "language tag for distinct mode (en|fr)");
  charmap->add_flag("--invert", charmap_args.invert,
                    "decode distinct-mode tagged text");

  BpeTrainArgs bpe_train_args;
  CLI::App* bpe_train = app.add_subcommand("bpe-train", "train a BPE model");
  bpe_train->fallthrough();
  bpe_train->add_option("--size", bpe_train_args.size, "target vocab size")
      ->required();
  bpe_train->add_option("--in", bpe_train_args.in, "training corpus, one "
                        "utterance per line")
      ->required();
  bpe_train->add_option("--out", bpe_train_args.out, "model file")->required();

  BpeEncodeArgs bpe_encode_args;
  CLI::App* bpe_encode = app.add_subcommand("bpe-encode", "encode text");
  bpe_encode->fallthrough();
  bpe_encode->add_option("--model", bpe_encode_args.model, "model file")
      ->required();
  bpe_encode->add_option("--in", bpe_encode_args.in, "input file or -");
  bpe_encode->add_option("--out", bpe_encode_args.out, "output file or -");
  bpe_encode->add_flag("--ids", bpe_encode_args.ids, "emit token ids");

  FeaturizeArgs featurize_args;
  CLI::App* featurize =
      app.add_subcommand("featurize", "extract 80+3 dim features");
  featurize->fallthrough();
  featurize->add_option("--manifest", featurize_args.manifest, "JSONL manifest")
      ->required();
  featurize->add_option("--outdir", featurize_args.outdir, "output directory")
      ->required();
  featurize->add_option("--mels", featurize_args.n_mels, "mel bins");
  featurize->add_flag("--no-pitch", featurize_args.no_pitch,
                      "skip pitch features");
  featurize->add_flag("--no-cmvn", featurize_args.no_cmvn,
                      "skip per-utterance CMVN");

  AugmentArgs augment_args;
  CLI::App* augment = app.add_subcommand("augment", "speed / specaugment");
  augment->fallthrough();
  augment->add_option("--manifest", augment_args.manifest, "JSONL manifest")
      ->required();
  augment->add_option("--outdir", augment_args.outdir, "output directory")
      ->required();
  augment->add_option("--speed", augment_args.speed,
                      "speed factors, e.g. 0.9,1.0,1.1")
      ->delimiter(',');
  augment->add_flag("--specaug", augment_args.specaug,
                    "apply SpecAugment to feature files");
  augment->add_option("--featdir", augment_args.featdir,
                      "directory of <id>.fea inputs for --specaug");
  augment->add_option("--freq-masks", augment_args.freq_masks,
                      "number of frequency masks");
  augment->add_option("--freq-width", augment_args.freq_width,
                      "frequency mask width");
  augment->add_option("--time-masks", augment_args.time_masks,
                      "number of time masks");
  augment->add_option("--time-width", augment_args.time_width,
                      "time mask width");

  CtcScoreArgs ctc_args;
  CLI::App* ctc_score = app.add_subcommand("ctc-score", "CTC / CE losses");
  ctc_score->fallthrough();
  ctc_score->add_option("--logp", ctc_args.logp,
                        "log-prob matrix (feature binary format)")
      ->required();
  ctc_score->add_option("--labels", ctc_args.labels, "text file of token ids")
      ->required();
  ctc_score->add_option("--ce-logp", ctc_args.ce_logp,
                        "separate decoder log-probs for the CE loss");
  ctc_score->add_option("--alpha", ctc_args.alpha, "CTC weight in [0,1]");

  ScoreArgs score_args;
  CLI::App* score = app.add_subcommand("score", "WER / TW scoring");
  score->fallthrough();
  score->add_option("--ref", score_args.ref, "reference manifest")->required();
  score->add_option("--hyp", score_args.hyp, "hypothesis manifest")
      ->required();
  score->add_option("--glm", score_args.glm, "GLM mapping file");
  score->add_flag("--tw", score_args.tw, "also report transliteration WER");
  score->add_option("--dialect-glm", score_args.dialect_glm,
                    "dialect folding GLM applied to both sides first");

  CmiArgs cmi_args;
  CLI::App* cmi = app.add_subcommand("cmi", "corpus Code-Mixing Index");
  cmi->fallthrough();
  cmi->add_option("--manifest", cmi_args.manifest, "JSONL manifest")
      ->required();
  cmi->add_flag("--auto-tag", cmi_args.auto_tag,
                "derive tags from token scripts");
  cmi->add_flag("--switched-only", cmi_args.switched_only,
                "average only over utterances with CMI > 0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (normalize->parsed()) return RunNormalize(normalize_args);
    if (charmap->parsed()) return RunCharmap(charmap_args);
    if (bpe_train->parsed()) return RunBpeTrain(bpe_train_args);
    if (bpe_encode->parsed()) return RunBpeEncode(bpe_encode_args);
    if (featurize->parsed()) return RunFeaturize(featurize_args, global);
    if (augment->parsed()) return RunAugment(augment_args, global);
    if (ctc_score->parsed()) return RunCtcScore(ctc_args);
    if (score->parsed()) return RunScore(score_args);
    if (cmi->parsed()) return RunCmi(cmi_args);
  } catch (const csasr::IoError& e) {
    std::cerr << "csasr: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "csasr: " << e.what() << '\n';
    return 1;
  }
  std::cerr << "csasr: no subcommand given\n";
  return 1;
}
