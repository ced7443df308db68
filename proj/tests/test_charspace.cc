// tests/test_charspace.cc

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

#include "csasr/charspace.h"

#include <random>
#include <stdexcept>
#include <set>

#include "csasr/unicode.h"
#include "doctest.h"

using csasr::ApplyCharMap;
using csasr::BuildCharMap;
using csasr::CharMapTable;
using csasr::CharSpaceMode;
using csasr::InvertCharMap;
using csasr::InvertResult;
using csasr::ParseTagged;
using csasr::RenderTagged;

namespace {

std::string RandomText(std::mt19937& rng, bool latin_only = false) {
  static const char32_t kLatin[] = {U'a', U'e', U'l', U'r', U'z', U'é',
                                    U'è', U'ç', U'o', U'u'};
  static const char32_t kOther[] = {0x0645, 0x0631, 0x062D, 0x0628,  // Arabic
                                    U'1',   U'9',   U'%',   U' '};
  std::uniform_int_distribution<int> len_dist(0, 24);
  std::u32string s;
  int len = len_dist(rng);
  for (int i = 0; i < len; ++i) {
    if (latin_only || rng() % 2) {
      s.push_back(kLatin[rng() % std::size(kLatin)]);
    } else {
      s.push_back(kOther[rng() % std::size(kOther)]);
    }
  }
  return csasr::EncodeUtf8(s);
}

}  // namespace

TEST_CASE("default mode is the identity") {
  CharMapTable table = BuildCharMap(CharSpaceMode::kDefault);
  std::mt19937 rng(1);
  for (int it = 0; it < 500; ++it) {
    std::string s = RandomText(rng);
    CHECK(ApplyCharMap(table, s) == s);
  }
  CHECK(ApplyCharMap(table, "caf\xC3\xA9") == "caf\xC3\xA9");
}

TEST_CASE("distinct mode separates languages and round-trips") {
  CharMapTable table = BuildCharMap(CharSpaceMode::kDistinct);
  CHECK(ApplyCharMap(table, "a", std::string("en")) !=
        ApplyCharMap(table, "a", std::string("fr")));

  std::string mapped = ApplyCharMap(table, "le", std::string("fr"));
  InvertResult back = InvertCharMap(table, mapped);
  CHECK(back.text == "le");
  CHECK(back.lang_tags == std::vector<std::string>{"fr", "fr"});

  std::mt19937 rng(2);
  for (int it = 0; it < 300; ++it) {
    std::string s = RandomText(rng, /*latin_only=*/true);
    InvertResult result =
        InvertCharMap(table, ApplyCharMap(table, s, std::string("fr")));
    CHECK(result.text == s);
    for (const auto& tag : result.lang_tags) CHECK(tag == "fr");
  }
}

TEST_CASE("distinct mode errors") {
  CharMapTable table = BuildCharMap(CharSpaceMode::kDistinct);
  CHECK_THROWS_AS(ApplyCharMap(table, "abc"), std::invalid_argument);
  CHECK_THROWS_AS(ApplyCharMap(table, "abc", std::string("de")),
                  std::invalid_argument);
  // Arabic-only text needs no tag even in distinct mode.
  std::string arabic = "\xD9\x85\xD8\xB1\xD8\xAD\xD8\xA8\xD8\xA7";
  CHECK(ApplyCharMap(table, arabic) == arabic);

  CharMapTable identity = BuildCharMap(CharSpaceMode::kDefault);
  CHECK_THROWS_AS(InvertCharMap(identity, "x"), std::invalid_argument);
  // Untagged Latin symbol in distinct-mode input.
  CHECK_THROWS_WITH_AS(InvertCharMap(table, "x"), doctest::Contains("x"),
                       std::invalid_argument);
}

TEST_CASE("forced shared folds accents and is idempotent") {
  CharMapTable table = BuildCharMap(CharSpaceMode::kForcedShared);
  CHECK(ApplyCharMap(table, "caf\xC3\xA9") == "cafe");
  CHECK(ApplyCharMap(table, "\xC5\x93uf") == "oeuf");        // œuf
  CHECK(ApplyCharMap(table, "gar\xC3\xA7on") == "garcon");   // garçon
  CHECK(ApplyCharMap(table, "\xC3\x89T\xC3\x89") == "ETE");  // ÉTÉ

  std::mt19937 rng(3);
  for (int it = 0; it < 500; ++it) {
    std::string s = RandomText(rng);
    std::string once = ApplyCharMap(table, s);
    CHECK(ApplyCharMap(table, once) == once);
    // The fold never grows the set of distinct characters.
    std::u32string in = csasr::DecodeUtf8(s);
    std::u32string out = csasr::DecodeUtf8(once);
    std::set<char32_t> in_set(in.begin(), in.end());
    std::set<char32_t> out_set(out.begin(), out.end());
    CHECK(out_set.size() <= in_set.size() + 1);  // oe/ae add one char at most
  }
}

TEST_CASE("arabic, digits and punctuation are fixed points in every mode") {
  std::string arabic = "\xD9\x85\xD8\xB1 12 %";
  for (CharSpaceMode mode : {CharSpaceMode::kDefault, CharSpaceMode::kDistinct,
                             CharSpaceMode::kForcedShared}) {
    CharMapTable table = BuildCharMap(mode);
    CHECK(ApplyCharMap(table, arabic, std::string("en")) == arabic);
  }
}

TEST_CASE("tagged rendering round-trips") {
  CharMapTable table = BuildCharMap(CharSpaceMode::kDistinct);
  std::string mapped = ApplyCharMap(table, "le", std::string("fr"));
  std::string rendered = RenderTagged(table, mapped);
  CHECK(rendered ==
        "\xE2\x9F\xA8" "fr:l" "\xE2\x9F\xA9" "\xE2\x9F\xA8" "fr:e"
        "\xE2\x9F\xA9");
  CHECK(ParseTagged(table, rendered) == mapped);

  // Mixed Arabic/Latin line with pass-through characters.
  std::string line = ApplyCharMap(
      table, "ok \xD9\x85\xD8\xB1 1", std::string("en"));
  CHECK(ParseTagged(table, RenderTagged(table, line)) == line);

  // Literal brackets in the surface text survive the escape.
  std::string brackets = "\xE2\x9F\xA8\xE2\x9F\xA9";
  CHECK(ParseTagged(table, RenderTagged(table, brackets)) == brackets);

  CHECK_THROWS_AS(ParseTagged(table, "\xE2\x9F\xA8" "fr:l"),
                  std::invalid_argument);
}
