// src/python/bindings.cc

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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

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

namespace py = pybind11;

namespace {

using FloatArray = py::array_t<float, py::array::c_style | py::array::forcecast>;
using DoubleArray =
    py::array_t<double, py::array::c_style | py::array::forcecast>;

csasr::FeatureMatrix MatrixFromArray(const FloatArray& array) {
  if (array.ndim() != 2) {
    throw std::invalid_argument("expected a 2-D array");
  }
  csasr::FeatureMatrix m;
  m.rows = static_cast<int>(array.shape(0));
  m.cols = static_cast<int>(array.shape(1));
  m.data.assign(array.data(), array.data() + array.size());
  return m;
}

py::array_t<float> ArrayFromMatrix(const csasr::FeatureMatrix& m) {
  py::array_t<float> array({m.rows, m.cols});
  std::copy(m.data.begin(), m.data.end(), array.mutable_data());
  return array;
}

csasr::AudioBuffer AudioFromArray(const FloatArray& samples, int sample_rate) {
  if (samples.ndim() != 1) {
    throw std::invalid_argument("expected 1-D sample array");
  }
  csasr::AudioBuffer audio;
  audio.sample_rate_hz = sample_rate;
  audio.samples.assign(samples.data(), samples.data() + samples.size());
  return audio;
}

csasr::LogProbMatrix LogProbFromArray(const DoubleArray& array) {
  if (array.ndim() != 2) {
    throw std::invalid_argument("expected a 2-D log-prob array");
  }
  csasr::LogProbMatrix logp;
  logp.num_frames = static_cast<int>(array.shape(0));
  logp.vocab_size = static_cast<int>(array.shape(1));
  logp.values.assign(array.data(), array.data() + array.size());
  return logp;
}

csasr::NormalizationConfig ConfigFromArgs(const std::string& keep_punct,
                                          bool strip_diacritics,
                                          bool map_digits,
                                          bool lowercase_latin) {
  csasr::NormalizationConfig config;
  config.keep_punct = csasr::DecodeUtf8(keep_punct);
  config.strip_diacritics = strip_diacritics;
  config.map_digits = map_digits;
  config.lowercase_latin = lowercase_latin;
  return config;
}

py::dict RecordToDict(const csasr::UtteranceRecord& record) {
  py::dict d;
  d["id"] = record.id;
  if (!record.audio_path.empty()) d["audio"] = record.audio_path;
  d["text"] = record.text;
  if (record.lang_tags.has_value()) d["lang"] = *record.lang_tags;
  if (record.duration_s.has_value()) d["dur"] = *record.duration_s;
  return d;
}

csasr::UtteranceRecord RecordFromDict(const py::dict& d) {
  csasr::UtteranceRecord record;
  record.id = d["id"].cast<std::string>();
  if (d.contains("audio")) record.audio_path = d["audio"].cast<std::string>();
  if (d.contains("text")) record.text = d["text"].cast<std::string>();
  if (d.contains("lang") && !d["lang"].is_none()) {
    record.lang_tags = d["lang"].cast<std::vector<std::string>>();
  }
  if (d.contains("dur") && !d["dur"].is_none()) {
    record.duration_s = d["dur"].cast<double>();
  }
  return record;
}

}  // namespace

PYBIND11_MODULE(_csasr, m) {
  m.doc() = "multilingual / code-switching ASR data preparation and scoring";

  py::register_exception<csasr::IoError>(m, "IoError", PyExc_IOError);

  // ------------------------------------------------------------- textnorm
  m.def(
      "normalize_text",
      [](const std::string& text, const std::string& keep_punct,
         bool strip_diacritics, bool map_digits, bool lowercase_latin) {
        return csasr::NormalizeText(
            text, ConfigFromArgs(keep_punct, strip_diacritics, map_digits,
                                 lowercase_latin));
      },
      py::arg("text"), py::arg("keep_punct") = "%@",
      py::arg("strip_diacritics") = true, py::arg("map_digits") = true,
      py::arg("lowercase_latin") = true,
      "Clean a transcript: strip punctuation (keeping keep_punct), strip "
      "Arabic diacritics, map Arabic-Indic digits, lowercase Latin, collapse "
      "whitespace.");
  m.def("strip_diacritics", &csasr::StripDiacritics, py::arg("text"));
  m.def(
      "classify_token_script",
      [](const std::string& token) {
        return csasr::ScriptClassName(csasr::ClassifyTokenScript(token));
      },
      py::arg("token"),
      "One of 'arabic', 'latin', 'digit', 'mixed', 'other'.");
  m.def("split_tokens", &csasr::SplitTokens, py::arg("text"));

  // ------------------------------------------------------------ charspace
  m.def(
      "apply_charmap",
      [](const std::string& text, const std::string& mode,
         const std::optional<std::string>& lang) {
        csasr::CharMapTable table =
            csasr::BuildCharMap(csasr::CharSpaceModeFromName(mode));
        return csasr::ApplyCharMap(table, text, lang);
      },
      py::arg("text"), py::arg("mode"), py::arg("lang") = py::none());
  m.def(
      "invert_charmap",
      [](const std::string& text) {
        csasr::CharMapTable table =
            csasr::BuildCharMap(csasr::CharSpaceMode::kDistinct);
        csasr::InvertResult result = csasr::InvertCharMap(table, text);
        return py::make_tuple(result.text, result.lang_tags);
      },
      py::arg("text"),
      "Decode distinct-mode text; returns (text, per-character language "
      "tags).");
  m.def("render_tagged", [](const std::string& mapped) {
    csasr::CharMapTable table =
        csasr::BuildCharMap(csasr::CharSpaceMode::kDistinct);
    return csasr::RenderTagged(table, mapped);
  });
  m.def("parse_tagged", [](const std::string& rendered) {
    csasr::CharMapTable table =
        csasr::BuildCharMap(csasr::CharSpaceMode::kDistinct);
    return csasr::ParseTagged(table, rendered);
  });

  // ------------------------------------------------------------ tokenizer
  py::class_<csasr::BpeModel>(m, "BpeModel")
      .def_readonly("vocab", &csasr::BpeModel::vocab)
      .def_readonly("merges", &csasr::BpeModel::merges)
      .def_readonly("target_size", &csasr::BpeModel::target_size)
      .def_property_readonly_static(
          "BLANK_ID", [](py::object) { return csasr::BpeModel::kBlankId; })
      .def_property_readonly_static(
          "UNK_ID", [](py::object) { return csasr::BpeModel::kUnkId; })
      .def("save",
           [](const csasr::BpeModel& model, const std::string& path) {
             csasr::SaveBpeModel(model, path);
           })
      .def("__len__",
           [](const csasr::BpeModel& model) { return model.vocab.size(); });
  m.def("train_bpe", &csasr::TrainBpe, py::arg("corpus"),
        py::arg("target_size"));
  m.def("load_bpe_model", &csasr::LoadBpeModel, py::arg("path"));
  m.def(
      "encode",
      [](const csasr::BpeModel& model, const std::string& text) {
        csasr::TokenSequence seq = csasr::Encode(model, text);
        return py::make_tuple(seq.ids, seq.pieces);
      },
      py::arg("model"), py::arg("text"),
      "Returns (ids, pieces) for the normalized input text.");
  m.def(
      "decode",
      [](const csasr::BpeModel& model, const std::vector<int>& ids) {
        return csasr::Decode(model, ids);
      },
      py::arg("model"), py::arg("ids"));

  // ------------------------------------------------------------------ ctc
  m.def(
      "ctc_loss",
      [](const DoubleArray& logp, const std::vector<int>& labels) {
        return csasr::CtcLoss(LogProbFromArray(logp), labels);
      },
      py::arg("logp"), py::arg("labels"),
      "Negative log CTC probability; logp is a T x V array of per-frame "
      "log-probabilities with blank id 0.");
  m.def(
      "ctc_grad",
      [](const DoubleArray& logp, const std::vector<int>& labels) {
        csasr::LogProbMatrix matrix = LogProbFromArray(logp);
        std::vector<double> grad = csasr::CtcGrad(matrix, labels);
        py::array_t<double> out({matrix.num_frames, matrix.vocab_size});
        std::copy(grad.begin(), grad.end(), out.mutable_data());
        return out;
      },
      py::arg("logp"), py::arg("labels"));
  m.def(
      "ce_loss",
      [](const DoubleArray& logp, const std::vector<int>& labels) {
        return csasr::CeLoss(LogProbFromArray(logp), labels);
      },
      py::arg("logp"), py::arg("labels"));
  m.def("combine_losses", &csasr::CombineLosses, py::arg("ctc"), py::arg("ce"),
        py::arg("alpha") = 0.3);
  m.def(
      "greedy_decode",
      [](const DoubleArray& logp) {
        return csasr::GreedyDecode(LogProbFromArray(logp));
      },
      py::arg("logp"));

  // ------------------------------------------------------------- features
  m.def(
      "speed_perturb",
      [](const FloatArray& samples, int sample_rate, double factor) {
        csasr::AudioBuffer out =
            csasr::SpeedPerturb(AudioFromArray(samples, sample_rate), factor);
        py::array_t<float> array(static_cast<py::ssize_t>(out.samples.size()));
        std::copy(out.samples.begin(), out.samples.end(),
                  array.mutable_data());
        return array;
      },
      py::arg("samples"), py::arg("sample_rate"), py::arg("factor"));
  m.def(
      "log_mel",
      [](const FloatArray& samples, int sample_rate, int n_mels,
         double frame_length_ms, double frame_shift_ms) {
        return ArrayFromMatrix(csasr::LogMel(AudioFromArray(samples, sample_rate),
                                             n_mels, frame_length_ms,
                                             frame_shift_ms));
      },
      py::arg("samples"), py::arg("sample_rate"), py::arg("n_mels") = 80,
      py::arg("frame_length_ms") = 25.0, py::arg("frame_shift_ms") = 10.0);
  m.def(
      "pitch_features",
      [](const FloatArray& samples, int sample_rate, double frame_length_ms,
         double frame_shift_ms) {
        return ArrayFromMatrix(
            csasr::PitchFeatures(AudioFromArray(samples, sample_rate),
                                 frame_length_ms, frame_shift_ms));
      },
      py::arg("samples"), py::arg("sample_rate"),
      py::arg("frame_length_ms") = 25.0, py::arg("frame_shift_ms") = 10.0);
  m.def(
      "stack_features",
      [](const FloatArray& mel, const FloatArray& pitch) {
        return ArrayFromMatrix(
            csasr::StackFeatures(MatrixFromArray(mel), MatrixFromArray(pitch)));
      },
      py::arg("mel"), py::arg("pitch"));
  m.def(
      "apply_cmvn",
      [](const FloatArray& features) {
        return ArrayFromMatrix(csasr::ApplyCmvn(MatrixFromArray(features)));
      },
      py::arg("features"));
  m.def(
      "spec_augment",
      [](const FloatArray& features, int num_freq_masks, int max_freq_width,
         int num_time_masks, int max_time_width, uint64_t seed) {
        csasr::SpecAugmentConfig config;
        config.num_freq_masks = num_freq_masks;
        config.max_freq_width = max_freq_width;
        config.num_time_masks = num_time_masks;
        config.max_time_width = max_time_width;
        config.seed = seed;
        return ArrayFromMatrix(
            csasr::SpecAugment(MatrixFromArray(features), config));
      },
      py::arg("features"), py::arg("num_freq_masks") = 2,
      py::arg("max_freq_width") = 10, py::arg("num_time_masks") = 2,
      py::arg("max_time_width") = 20, py::arg("seed") = 0);
  m.def("load_wav", [](const std::string& path) {
    csasr::AudioBuffer audio = csasr::LoadWav(path);
    py::array_t<float> samples(static_cast<py::ssize_t>(audio.samples.size()));
    std::copy(audio.samples.begin(), audio.samples.end(),
              samples.mutable_data());
    return py::make_tuple(samples, audio.sample_rate_hz);
  });
  m.def("save_wav",
        [](const FloatArray& samples, int sample_rate, const std::string& path) {
          csasr::SaveWav(AudioFromArray(samples, sample_rate), path);
        });
  m.def("load_feature_matrix", [](const std::string& path) {
    return ArrayFromMatrix(csasr::LoadFeatureMatrix(path));
  });
  m.def("save_feature_matrix",
        [](const FloatArray& features, const std::string& path) {
          csasr::SaveFeatureMatrix(MatrixFromArray(features), path);
        });

  // -------------------------------------------------------------- metrics
  m.def(
      "edit_align",
      [](const std::vector<std::string>& ref,
         const std::vector<std::string>& hyp) {
        csasr::AlignmentResult r = csasr::EditAlign(ref, hyp);
        py::dict d;
        d["num_ref"] = r.num_ref;
        d["matches"] = r.matches;
        d["substitutions"] = r.substitutions;
        d["deletions"] = r.deletions;
        d["insertions"] = r.insertions;
        d["cost"] = r.Cost();
        return d;
      },
      py::arg("ref"), py::arg("hyp"));
  auto wer_to_dict = [](const csasr::WerReport& report) {
    py::dict d;
    d["wer"] = report.corpus_wer;
    d["per_utterance"] = report.per_utterance;
    d["ref"] = report.total_ref;
    d["sub"] = report.total_sub;
    d["del"] = report.total_del;
    d["ins"] = report.total_ins;
    return d;
  };
  m.def(
      "wer",
      [wer_to_dict](const std::vector<std::vector<std::string>>& refs,
                    const std::vector<std::vector<std::string>>& hyps) {
        return wer_to_dict(csasr::Wer(refs, hyps));
      },
      py::arg("refs"), py::arg("hyps"));
  m.def("cmi_utterance", &csasr::CmiUtterance, py::arg("tokens"),
        py::arg("lang_of"),
        "Code-Mixing Index in [0, 100]; '' marks language-independent "
        "tokens.");
  m.def("load_glm", &csasr::LoadGlm, py::arg("path"));
  py::class_<csasr::GlmTable>(m, "GlmTable")
      .def(py::init([](const std::map<std::string, std::string>& entries) {
             csasr::GlmTable table;
             table.entries = entries;
             return table;
           }),
           py::arg("entries"))
      .def_readonly("entries", &csasr::GlmTable::entries);
  m.def("glm_transliterate", &csasr::GlmTransliterate, py::arg("tokens"),
        py::arg("glm"));
  m.def("apply_dialect_glm", &csasr::ApplyDialectGlm, py::arg("tokens"),
        py::arg("glm"));
  m.def(
      "tw",
      [wer_to_dict](const std::vector<std::vector<std::string>>& refs,
                    const std::vector<std::vector<std::string>>& hyps,
                    const csasr::GlmTable& glm) {
        return wer_to_dict(csasr::Tw(refs, hyps, glm));
      },
      py::arg("refs"), py::arg("hyps"), py::arg("glm"));

  // ------------------------------------------------------------- manifest
  m.def("load_manifest", [](const std::string& path) {
    csasr::DatasetManifest manifest = csasr::LoadManifest(path);
    py::list records;
    for (const auto& record : manifest.records) {
      records.append(RecordToDict(record));
    }
    return records;
  });
  m.def("save_manifest",
        [](const py::list& records, const std::string& path) {
          csasr::DatasetManifest manifest;
          for (const auto& item : records) {
            manifest.records.push_back(
                RecordFromDict(item.cast<py::dict>()));
          }
          csasr::SaveManifest(manifest, path);
        });
  m.def(
      "cmi_corpus",
      [](const py::list& records, bool auto_tag, bool switched_only) {
        csasr::DatasetManifest manifest;
        for (const auto& item : records) {
          manifest.records.push_back(RecordFromDict(item.cast<py::dict>()));
        }
        csasr::CmiReport report =
            csasr::CmiCorpus(manifest, auto_tag, switched_only);
        py::dict d;
        d["corpus_cmi"] = report.corpus_cmi;
        d["per_utterance"] = report.per_utterance;
        return d;
      },
      py::arg("records"), py::arg("auto_tag") = false,
      py::arg("switched_only") = false);
}
