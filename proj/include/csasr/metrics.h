// csasr/metrics.h

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

#ifndef CSASR_METRICS_H_
#define CSASR_METRICS_H_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "csasr/manifest.h"

namespace csasr {

enum class EditOpType { kMatch, kSubstitute, kDelete, kInsert };

struct EditOp {
  EditOpType type;
  std::string ref;  // empty for insertions
  std::string hyp;  // empty for deletions
};

struct AlignmentResult {
  std::vector<EditOp> ops;
  int num_ref = 0;
  int matches = 0;
  int substitutions = 0;
  int deletions = 0;
  int insertions = 0;

  int Cost() const { return substitutions + deletions + insertions; }
};

// Minimal-cost Levenshtein alignment with unit costs. Tie preference on the
// backtrace is Match > Substitute > Delete > Insert, fixed so alignments
// are reproducible.
AlignmentResult EditAlign(const std::vector<std::string>& ref,
                          const std::vector<std::string>& hyp);

struct WerReport {
  std::vector<double> per_utterance;
  double corpus_wer = 0.0;  // 100 * (S+D+I) / N_ref, aggregate counts
  long total_ref = 0;
  long total_sub = 0;
  long total_del = 0;
  long total_ins = 0;
};

// Pairs refs/hyps by index; errors if the corpus has zero reference tokens.
WerReport Wer(const std::vector<std::vector<std::string>>& refs,
              const std::vector<std::vector<std::string>>& hyps);

// Utterance Code-Mixing Index in [0, 100]. `lang_of` is parallel to
// `tokens`; the empty string marks language-independent tokens. With n
// tokens, u language-independent and w_i per language:
// 100 * (1 - max_i w_i / (n - u)) when n > u, else 0.
double CmiUtterance(const std::vector<std::string>& tokens,
                    const std::vector<std::string>& lang_of);

struct CmiReport {
  std::vector<double> per_utterance;
  double corpus_cmi = 0.0;  // arithmetic mean
};

// Tags come from each record's lang_tags; with auto_tag they fall back to
// script classes (Arabic -> "ar", Latin -> "en", anything else language-
// independent). switched_only averages over utterances with CMI > 0.
CmiReport CmiCorpus(const DatasetManifest& manifest, bool auto_tag = false,
                    bool switched_only = false);

// Source tokens are stored normalized (textnorm defaults, hence
// case-folded); lookups normalize the probe the same way.
struct GlmTable {
  std::map<std::string, std::string> entries;
};

// TSV, two columns per line, '#' comments and blank lines skipped.
// Duplicate sources with conflicting targets are an error.
GlmTable ParseGlm(std::istream& in);
GlmTable LoadGlm(const std::string& path);

// Replaces Latin-script tokens that have a GLM entry; Mixed-script tokens
// are ignored by contract, everything else passes through. Length
// preserving.
std::vector<std::string> GlmTransliterate(const std::vector<std::string>& tokens,
                                          const GlmTable& glm);

// Same mechanics over Arabic-script tokens (orthographic-variant folding).
std::vector<std::string> ApplyDialectGlm(const std::vector<std::string>& tokens,
                                         const GlmTable& glm);

// Transliteration WER: WER after applying the GLM to both reference and
// hypothesis sides.
WerReport Tw(const std::vector<std::vector<std::string>>& refs,
             const std::vector<std::vector<std::string>>& hyps,
             const GlmTable& glm);

}  // namespace csasr

#endif  // CSASR_METRICS_H_
