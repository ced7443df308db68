// csasr/tokenizer.h

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

#ifndef CSASR_TOKENIZER_H_
#define CSASR_TOKENIZER_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace csasr {

// Word-piece BPE model: frequency-greedy merges over whitespace words, each
// word opened by a standalone boundary-marker symbol. Ties on pair
// frequency break lexicographically so training is fully deterministic.
struct BpeModel {
  static constexpr int kBlankId = 0;  // reserved for CTC
  static constexpr int kUnkId = 1;
  static constexpr const char* kBlankPiece = "<blank>";
  static constexpr const char* kUnkPiece = "<unk>";

  std::vector<std::string> vocab;  // index == token id
  std::vector<std::pair<std::string, std::string>> merges;
  std::string word_boundary_marker = "\xE2\x96\x81";  // ▁ U+2581
  int target_size = 0;

  std::unordered_map<std::string, int> symbol_to_id;  // derived from vocab

  void RebuildIndex();
  int IdOf(const std::string& symbol) const;  // kUnkId when absent
};

struct TokenSequence {
  std::vector<int> ids;
  std::vector<std::string> pieces;

  bool operator==(const TokenSequence&) const = default;
};

// Greedy most-frequent-pair merging until |vocab| == target_size or no pair
// occurs at least twice. Requires target_size >= alphabet + marker + the 2
// special tokens; the error message states the minimum.
BpeModel TrainBpe(const std::vector<std::string>& corpus, int target_size);

// Whitespace-splits, prefixes the boundary marker, applies merges in
// training order. Characters absent from the vocabulary map to <unk>.
TokenSequence Encode(const BpeModel& model, std::string_view text);

// Concatenates pieces, turns boundary markers into spaces, trims. Errors on
// out-of-range ids.
std::string Decode(const BpeModel& model, const std::vector<int>& ids);

std::string SerializeBpeModel(const BpeModel& model);
BpeModel ParseBpeModel(std::istream& in);
void SaveBpeModel(const BpeModel& model, const std::string& path);
BpeModel LoadBpeModel(const std::string& path);

}  // namespace csasr

#endif  // CSASR_TOKENIZER_H_
