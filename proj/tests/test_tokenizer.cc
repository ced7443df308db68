// tests/test_tokenizer.cc

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

#include <filesystem>
#include <random>
#include <stdexcept>
#include <sstream>

#include "csasr/textnorm.h"
#include "csasr/unicode.h"
#include "doctest.h"

using csasr::BpeModel;
using csasr::Decode;
using csasr::Encode;
using csasr::LoadBpeModel;
using csasr::ParseBpeModel;
using csasr::SaveBpeModel;
using csasr::SerializeBpeModel;
using csasr::TokenSequence;
using csasr::TrainBpe;

namespace {

const std::string kMarker = "\xE2\x96\x81";  // ▁

// Deterministic mixed Arabic/English/French lines in normalized form.
std::vector<std::string> SyntheticCorpus(int lines, uint32_t seed) {
  static const std::string kWords[] = {
      "the", "meeting", "caf\xC3\xA9", "bonjour", "monde", "drones", "ok",
      "\xD9\x85\xD8\xB1\xD8\xAD\xD8\xA8\xD8\xA7",            // مرحبا
      "\xD8\xA7\xD9\x84\xD8\xB9\xD8\xA7\xD9\x84\xD9\x85",    // العالم
      "\xD8\xA7\xD9\x84\xD8\xAF\xD8\xB1\xD9\x88\xD9\x86\xD8\xB2",  // الدرونز
      "\xD9\x8A\xD9\x88\xD9\x85",                            // يوم
      "100", "50%"};
  std::mt19937 rng(seed);
  std::vector<std::string> corpus;
  corpus.reserve(lines);
  for (int i = 0; i < lines; ++i) {
    int words = 1 + static_cast<int>(rng() % 8);
    std::string line;
    for (int w = 0; w < words; ++w) {
      if (w > 0) line += ' ';
      line += kWords[rng() % std::size(kWords)];
    }
    corpus.push_back(std::move(line));
  }
  return corpus;
}

}  // namespace

TEST_CASE("the abab corpus reproduces the hand-derived merges") {
  BpeModel model = TrainBpe({"abab", "abab"}, 8);
  REQUIRE(model.merges.size() >= 2);
  CHECK(model.merges[0] == std::pair<std::string, std::string>("a", "b"));
  CHECK(model.merges[1] == std::pair<std::string, std::string>("ab", "ab"));
  CHECK(model.vocab.size() == 8);

  TokenSequence seq = Encode(model, "abab");
  CHECK(seq.pieces == std::vector<std::string>{kMarker + "abab"});
  CHECK(Decode(model, seq.ids) == "abab");

  // Boundary markers survive multiple words.
  CHECK(Decode(model, Encode(model, "ab ab").ids) == "ab ab");
}

TEST_CASE("single-character corpus trains to the base vocabulary") {
  BpeModel model = TrainBpe({"a"}, 4);
  CHECK(model.merges.empty());
  CHECK(model.vocab ==
        std::vector<std::string>{"<blank>", "<unk>", kMarker, "a"});
  CHECK(model.vocab[BpeModel::kBlankId] == "<blank>");
  CHECK(model.vocab[BpeModel::kUnkId] == "<unk>");
}

TEST_CASE("training rejects undersized targets with the minimum") {
  // alphabet {a, b} + marker + 2 specials = 5.
  CHECK_THROWS_WITH_AS(TrainBpe({"ab"}, 3), doctest::Contains("minimum"),
                       std::invalid_argument);
  CHECK_THROWS_AS(TrainBpe({}, 10), std::invalid_argument);
}

TEST_CASE("training is deterministic") {
  std::vector<std::string> corpus = SyntheticCorpus(200, 99);
  BpeModel a = TrainBpe(corpus, 120);
  BpeModel b = TrainBpe(corpus, 120);
  CHECK(SerializeBpeModel(a) == SerializeBpeModel(b));
}

TEST_CASE("encode basics") {
  BpeModel model = TrainBpe({"abab", "abab"}, 8);
  CHECK(Encode(model, "").ids.empty());
  CHECK(Encode(model, "   ").ids.empty());

  // Unseen characters fall back to <unk>.
  TokenSequence unk = Encode(model, "axb");
  REQUIRE(unk.ids.size() == 4);  // marker, a, x->unk, b
  CHECK(unk.ids[2] == BpeModel::kUnkId);
  CHECK(unk.pieces[2] == "<unk>");
}

TEST_CASE("decode basics") {
  BpeModel model = TrainBpe({"abab"}, 6);
  CHECK(Decode(model, {BpeModel::kUnkId}) == "<unk>");
  CHECK_THROWS_AS(Decode(model, {999}), std::invalid_argument);
  CHECK_THROWS_AS(Decode(model, {-1}), std::invalid_argument);
}

TEST_CASE("round trip over a mixed synthetic corpus") {
  std::vector<std::string> corpus = SyntheticCorpus(300, 4);
  BpeModel model = TrainBpe(corpus, 150);
  for (const std::string& line : corpus) {
    CHECK(Decode(model, Encode(model, line).ids) == line);
  }
}

TEST_CASE("token count is bounded by characters plus words") {
  std::vector<std::string> corpus = SyntheticCorpus(100, 12);
  BpeModel model = TrainBpe(corpus, 100);
  for (const std::string& line : corpus) {
    size_t chars = csasr::DecodeUtf8(line).size();
    size_t words = csasr::SplitTokens(line).size();
    CHECK(Encode(model, line).ids.size() <= chars + words);
  }
}

TEST_CASE("minimum-size training degenerates to characters") {
  std::vector<std::string> corpus = {"abc abc", "cab"};
  // alphabet {a,b,c} + marker + specials = 6.
  BpeModel model = TrainBpe(corpus, 6);
  CHECK(model.merges.empty());
  TokenSequence seq = Encode(model, "abc");
  CHECK(seq.pieces ==
        std::vector<std::string>{kMarker, "a", "b", "c"});
}

TEST_CASE("model files round trip byte for byte") {
  namespace fs = std::filesystem;
  std::vector<std::string> corpus = SyntheticCorpus(120, 31);
  BpeModel model = TrainBpe(corpus, 90);

  fs::path dir = fs::temp_directory_path() / "csasr-bpe-test";
  fs::create_directories(dir);
  fs::path path = dir / "model.bpe";
  SaveBpeModel(model, path.string());
  BpeModel reloaded = LoadBpeModel(path.string());
  CHECK(SerializeBpeModel(reloaded) == SerializeBpeModel(model));
  CHECK(reloaded.vocab == model.vocab);
  CHECK(reloaded.merges == model.merges);
  CHECK(reloaded.target_size == model.target_size);
  // Encoding agrees after reload.
  CHECK(Encode(reloaded, corpus[0]).ids == Encode(model, corpus[0]).ids);
  fs::remove_all(dir);

  std::istringstream bad_header("not a model\n");
  CHECK_THROWS_AS(ParseBpeModel(bad_header), std::invalid_argument);
  std::istringstream no_merges("bpe v1 10\n<blank>\n<unk>\nX\n");
  CHECK_THROWS_AS(ParseBpeModel(no_merges), std::invalid_argument);
}

TEST_CASE("header carries the target size") {
  BpeModel model = TrainBpe({"abab"}, 8);
  std::string serialized = SerializeBpeModel(model);
  CHECK(serialized.rfind("bpe v1 8\n", 0) == 0);
}
