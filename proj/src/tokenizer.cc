// csasr/tokenizer.cc

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

#include "csasr/tokenizer.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "csasr/common.h"
#include "csasr/textnorm.h"
#include "csasr/unicode.h"

namespace csasr {

namespace {

using SymbolSeq = std::vector<std::string>;
using SymbolPair = std::pair<std::string, std::string>;

// Word -> [marker, c1, c2, ...] with one symbol per code point.
SymbolSeq Symbolize(const std::string& word, const std::string& marker) {
  SymbolSeq symbols;
  symbols.push_back(marker);
  for (char32_t cp : DecodeUtf8(word)) {
    std::string s;
    AppendUtf8(&s, cp);
    symbols.push_back(std::move(s));
  }
  return symbols;
}

// Left-to-right fuse of all adjacent (left, right) occurrences.
void ApplyMerge(SymbolSeq* symbols, const SymbolPair& merge,
                const std::string& joined) {
  SymbolSeq out;
  out.reserve(symbols->size());
  size_t i = 0;
  while (i < symbols->size()) {
    if (i + 1 < symbols->size() && (*symbols)[i] == merge.first &&
        (*symbols)[i + 1] == merge.second) {
      out.push_back(joined);
      i += 2;
    } else {
      out.push_back((*symbols)[i]);
      ++i;
    }
  }
  *symbols = std::move(out);
}

}  // namespace

void BpeModel::RebuildIndex() {
  symbol_to_id.clear();
  for (size_t i = 0; i < vocab.size(); ++i) {
    symbol_to_id[vocab[i]] = static_cast<int>(i);
  }
}

int BpeModel::IdOf(const std::string& symbol) const {
  auto it = symbol_to_id.find(symbol);
  return it == symbol_to_id.end() ? kUnkId : it->second;
}

BpeModel TrainBpe(const std::vector<std::string>& corpus, int target_size) {
  if (corpus.empty()) {
    throw std::invalid_argument("bpe-train: corpus must be non-empty");
  }
  BpeModel model;
  model.target_size = target_size;

  // Word frequencies; map keeps the base alphabet order deterministic.
  std::map<std::string, long> word_freq;
  std::set<std::string> alphabet;
  for (const std::string& line : corpus) {
    for (std::string& word : SplitTokens(line)) {
      ++word_freq[word];
      for (char32_t cp : DecodeUtf8(word)) {
        std::string s;
        AppendUtf8(&s, cp);
        alphabet.insert(std::move(s));
      }
    }
  }

  int min_size = static_cast<int>(alphabet.size()) + 3;  // specials + marker
  if (target_size < min_size) {
    throw std::invalid_argument(
        "bpe-train: target size " + std::to_string(target_size) +
        " is below the minimum " + std::to_string(min_size) +
        " (alphabet " + std::to_string(alphabet.size()) +
        " + boundary marker + 2 special tokens)");
  }

  model.vocab.push_back(BpeModel::kBlankPiece);
  model.vocab.push_back(BpeModel::kUnkPiece);
  model.vocab.push_back(model.word_boundary_marker);
  for (const std::string& s : alphabet) model.vocab.push_back(s);

  std::vector<SymbolSeq> words;
  std::vector<long> freqs;
  words.reserve(word_freq.size());
  for (const auto& [word, freq] : word_freq) {
    words.push_back(Symbolize(word, model.word_boundary_marker));
    freqs.push_back(freq);
  }

  while (static_cast<int>(model.vocab.size()) < target_size) {
    std::map<SymbolPair, long> pair_freq;
    for (size_t w = 0; w < words.size(); ++w) {
      const SymbolSeq& symbols = words[w];
      for (size_t i = 0; i + 1 < symbols.size(); ++i) {
        pair_freq[{symbols[i], symbols[i + 1]}] += freqs[w];
      }
    }
    // Highest frequency, ties to the lexicographically smallest pair.
    const SymbolPair* best = nullptr;
    long best_freq = 0;
    for (const auto& [pair, freq] : pair_freq) {
      if (freq > best_freq) {
        best = &pair;
        best_freq = freq;
      }
    }
    if (best == nullptr || best_freq < 2) break;

    std::string joined = best->first + best->second;
    model.merges.push_back(*best);
    model.vocab.push_back(joined);
    SymbolPair merge = *best;  // *best is invalidated once pair_freq dies
    for (SymbolSeq& symbols : words) ApplyMerge(&symbols, merge, joined);
  }

  model.RebuildIndex();
  return model;
}

TokenSequence Encode(const BpeModel& model, std::string_view text) {
  TokenSequence seq;
  for (const std::string& word : SplitTokens(text)) {
    SymbolSeq symbols = Symbolize(word, model.word_boundary_marker);
    for (const auto& merge : model.merges) {
      ApplyMerge(&symbols, merge, merge.first + merge.second);
    }
    for (const std::string& symbol : symbols) {
      int id = model.IdOf(symbol);
      seq.ids.push_back(id);
      seq.pieces.push_back(model.vocab[id]);
    }
  }
  return seq;
}

std::string Decode(const BpeModel& model, const std::vector<int>& ids) {
  std::string concat;
  for (int id : ids) {
    if (id < 0 || id >= static_cast<int>(model.vocab.size())) {
      throw std::invalid_argument("decode: token id " + std::to_string(id) +
                                  " out of range (vocab size " +
                                  std::to_string(model.vocab.size()) + ")");
    }
    concat += model.vocab[id];
  }
  // Boundary markers become spaces; trim the word-initial one.
  std::string out;
  size_t i = 0;
  const std::string& marker = model.word_boundary_marker;
  while (i < concat.size()) {
    if (concat.compare(i, marker.size(), marker) == 0) {
      out.push_back(' ');
      i += marker.size();
    } else {
      out.push_back(concat[i]);
      ++i;
    }
  }
  size_t begin = out.find_first_not_of(' ');
  if (begin == std::string::npos) return "";
  size_t end = out.find_last_not_of(' ');
  return out.substr(begin, end - begin + 1);
}

std::string SerializeBpeModel(const BpeModel& model) {
  std::ostringstream out;
  out << "bpe v1 " << model.target_size << '\n';
  for (const std::string& symbol : model.vocab) out << symbol << '\n';
  out << "#merges\n";
  for (const auto& [left, right] : model.merges) {
    out << left << '\t' << right << '\n';
  }
  return out.str();
}

BpeModel ParseBpeModel(std::istream& in) {
  BpeModel model;
  std::string line;
  if (!std::getline(in, line) || line.rfind("bpe v1 ", 0) != 0) {
    throw std::invalid_argument("bpe model: missing 'bpe v1 <size>' header");
  }
  try {
    model.target_size = std::stoi(line.substr(7));
  } catch (const std::exception&) {
    throw std::invalid_argument("bpe model: bad target size in header");
  }
  bool in_merges = false;
  while (std::getline(in, line)) {
    if (!in_merges) {
      if (line == "#merges") {
        in_merges = true;
        continue;
      }
      model.vocab.push_back(line);
    } else {
      size_t tab = line.find('\t');
      if (tab == std::string::npos) {
        throw std::invalid_argument("bpe model: merge line without TAB: '" +
                                    line + "'");
      }
      model.merges.emplace_back(line.substr(0, tab), line.substr(tab + 1));
    }
  }
  if (!in_merges) {
    throw std::invalid_argument("bpe model: missing '#merges' section");
  }
  if (model.vocab.size() < 3 || model.vocab[0] != BpeModel::kBlankPiece ||
      model.vocab[1] != BpeModel::kUnkPiece) {
    throw std::invalid_argument(
        "bpe model: vocab must start with <blank>, <unk>, boundary marker");
  }
  model.word_boundary_marker = model.vocab[2];
  model.RebuildIndex();
  for (const auto& [left, right] : model.merges) {
    if (!model.symbol_to_id.count(left + right)) {
      throw std::invalid_argument("bpe model: merge output '" + left + right +
                                  "' missing from vocab");
    }
  }
  return model;
}

void SaveBpeModel(const BpeModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write bpe model '" + path + "'");
  out << SerializeBpeModel(model);
  if (!out) throw IoError("failed writing bpe model '" + path + "'");
}

BpeModel LoadBpeModel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open bpe model '" + path + "'");
  return ParseBpeModel(in);
}

}  // namespace csasr
