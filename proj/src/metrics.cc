// csasr/metrics.cc

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

#include "csasr/metrics.h"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "csasr/common.h"
#include "csasr/textnorm.h"

namespace csasr {

AlignmentResult EditAlign(const std::vector<std::string>& ref,
                          const std::vector<std::string>& hyp) {
  const size_t R = ref.size(), H = hyp.size();
  std::vector<int> cost((R + 1) * (H + 1), 0);
  auto at = [&](size_t i, size_t j) -> int& { return cost[i * (H + 1) + j]; };
  for (size_t i = 0; i <= R; ++i) at(i, 0) = static_cast<int>(i);
  for (size_t j = 0; j <= H; ++j) at(0, j) = static_cast<int>(j);
  for (size_t i = 1; i <= R; ++i) {
    for (size_t j = 1; j <= H; ++j) {
      int diag = at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      int del = at(i - 1, j) + 1;
      int ins = at(i, j - 1) + 1;
      at(i, j) = std::min({diag, del, ins});
    }
  }

  // Backtrace, preferring Match > Substitute > Delete > Insert on ties.
  AlignmentResult result;
  result.num_ref = static_cast<int>(R);
  std::vector<EditOp> reversed;
  size_t i = R, j = H;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && ref[i - 1] == hyp[j - 1] &&
        at(i, j) == at(i - 1, j - 1)) {
      reversed.push_back({EditOpType::kMatch, ref[i - 1], hyp[j - 1]});
      --i, --j;
    } else if (i > 0 && j > 0 && ref[i - 1] != hyp[j - 1] &&
               at(i, j) == at(i - 1, j - 1) + 1) {
      reversed.push_back({EditOpType::kSubstitute, ref[i - 1], hyp[j - 1]});
      --i, --j;
    } else if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      reversed.push_back({EditOpType::kDelete, ref[i - 1], ""});
      --i;
    } else {
      reversed.push_back({EditOpType::kInsert, "", hyp[j - 1]});
      --j;
    }
  }
  result.ops.assign(reversed.rbegin(), reversed.rend());
  for (const EditOp& op : result.ops) {
    switch (op.type) {
      case EditOpType::kMatch:
        ++result.matches;
        break;
      case EditOpType::kSubstitute:
        ++result.substitutions;
        break;
      case EditOpType::kDelete:
        ++result.deletions;
        break;
      case EditOpType::kInsert:
        ++result.insertions;
        break;
    }
  }
  return result;
}

WerReport Wer(const std::vector<std::vector<std::string>>& refs,
              const std::vector<std::vector<std::string>>& hyps) {
  if (refs.size() != hyps.size()) {
    throw std::invalid_argument(
        "wer: reference and hypothesis corpora differ in size (" +
        std::to_string(refs.size()) + " vs " + std::to_string(hyps.size()) +
        ")");
  }
  WerReport report;
  for (size_t k = 0; k < refs.size(); ++k) {
    AlignmentResult alignment = EditAlign(refs[k], hyps[k]);
    report.total_ref += alignment.num_ref;
    report.total_sub += alignment.substitutions;
    report.total_del += alignment.deletions;
    report.total_ins += alignment.insertions;
    long denom = std::max<long>(alignment.num_ref, 1);
    report.per_utterance.push_back(100.0 * alignment.Cost() / denom);
  }
  if (report.total_ref == 0) {
    throw std::invalid_argument("wer: corpus has zero reference tokens");
  }
  report.corpus_wer =
      100.0 * (report.total_sub + report.total_del + report.total_ins) /
      static_cast<double>(report.total_ref);
  return report;
}

double CmiUtterance(const std::vector<std::string>& tokens,
                    const std::vector<std::string>& lang_of) {
  if (tokens.empty()) {
    throw std::invalid_argument("cmi: empty token list");
  }
  if (tokens.size() != lang_of.size()) {
    throw std::invalid_argument("cmi: " + std::to_string(lang_of.size()) +
                                " language tags for " +
                                std::to_string(tokens.size()) + " tokens");
  }
  std::map<std::string, long> counts;
  long independent = 0;
  for (const std::string& lang : lang_of) {
    if (lang.empty()) {
      ++independent;
    } else {
      ++counts[lang];
    }
  }
  long n = static_cast<long>(tokens.size());
  if (n == independent) return 0.0;
  long max_lang = 0;
  for (const auto& [lang, count] : counts) max_lang = std::max(max_lang, count);
  return 100.0 * (1.0 - static_cast<double>(max_lang) /
                            static_cast<double>(n - independent));
}

namespace {

std::vector<std::string> AutoTag(const std::vector<std::string>& tokens) {
  std::vector<std::string> tags;
  tags.reserve(tokens.size());
  for (const std::string& token : tokens) {
    switch (ClassifyTokenScript(token)) {
      case ScriptClass::kArabic:
        tags.push_back("ar");
        break;
      case ScriptClass::kLatin:
        tags.push_back("en");
        break;
      default:
        tags.push_back("");  // digits, mixed and other: language-independent
        break;
    }
  }
  return tags;
}

}  // namespace

CmiReport CmiCorpus(const DatasetManifest& manifest, bool auto_tag,
                    bool switched_only) {
  CmiReport report;
  for (const UtteranceRecord& record : manifest.records) {
    std::vector<std::string> tokens = SplitTokens(record.text);
    if (tokens.empty()) {
      throw std::invalid_argument("cmi: record '" + record.id +
                                  "' has no tokens");
    }
    std::vector<std::string> tags;
    if (record.lang_tags.has_value()) {
      tags = *record.lang_tags;
    } else if (auto_tag) {
      tags = AutoTag(tokens);
    } else {
      throw std::invalid_argument("cmi: record '" + record.id +
                                  "' has no lang tags (enable auto-tagging)");
    }
    report.per_utterance.push_back(CmiUtterance(tokens, tags));
  }
  double sum = 0.0;
  long counted = 0;
  for (double value : report.per_utterance) {
    if (switched_only && value <= 0.0) continue;
    sum += value;
    ++counted;
  }
  report.corpus_cmi = counted == 0 ? 0.0 : sum / static_cast<double>(counted);
  return report;
}

GlmTable ParseGlm(std::istream& in) {
  GlmTable table;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
      throw std::invalid_argument("glm line " + std::to_string(line_no) +
                                  ": expected <source>TAB<target>");
    }
    std::string source = NormalizeText(line.substr(0, tab));
    std::string target = line.substr(tab + 1);
    if (source.empty()) {
      throw std::invalid_argument("glm line " + std::to_string(line_no) +
                                  ": source normalizes to nothing");
    }
    auto [it, inserted] = table.entries.emplace(source, target);
    if (!inserted && it->second != target) {
      throw std::invalid_argument("glm line " + std::to_string(line_no) +
                                  ": conflicting target for source '" +
                                  source + "'");
    }
  }
  return table;
}

GlmTable LoadGlm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open glm file '" + path + "'");
  return ParseGlm(in);
}

namespace {

std::vector<std::string> ApplyGlmToScript(const std::vector<std::string>& tokens,
                                          const GlmTable& glm,
                                          ScriptClass wanted) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const std::string& token : tokens) {
    if (ClassifyTokenScript(token) == wanted) {
      auto it = glm.entries.find(NormalizeText(token));
      if (it != glm.entries.end()) {
        out.push_back(it->second);
        continue;
      }
    }
    out.push_back(token);
  }
  return out;
}

}  // namespace

std::vector<std::string> GlmTransliterate(const std::vector<std::string>& tokens,
                                          const GlmTable& glm) {
  return ApplyGlmToScript(tokens, glm, ScriptClass::kLatin);
}

std::vector<std::string> ApplyDialectGlm(const std::vector<std::string>& tokens,
                                         const GlmTable& glm) {
  return ApplyGlmToScript(tokens, glm, ScriptClass::kArabic);
}

WerReport Tw(const std::vector<std::vector<std::string>>& refs,
             const std::vector<std::vector<std::string>>& hyps,
             const GlmTable& glm) {
  std::vector<std::vector<std::string>> tref, thyp;
  tref.reserve(refs.size());
  thyp.reserve(hyps.size());
  for (const auto& tokens : refs) tref.push_back(GlmTransliterate(tokens, glm));
  for (const auto& tokens : hyps) thyp.push_back(GlmTransliterate(tokens, glm));
  return Wer(tref, thyp);
}

}  // namespace csasr
