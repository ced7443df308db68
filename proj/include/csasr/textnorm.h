// csasr/textnorm.h

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

#ifndef CSASR_TEXTNORM_H_
#define CSASR_TEXTNORM_H_

#include <string>
#include <string_view>
#include <vector>

namespace csasr {

// Transcript cleaning configuration. Defaults implement the full recipe:
// strip punctuation except % and @, strip Arabic diacritics (incl. tatweel),
// map Arabic-Indic digits to ASCII, lowercase Latin, collapse whitespace.
struct NormalizationConfig {
  std::u32string keep_punct = U"%@";
  bool strip_diacritics = true;
  bool map_digits = true;
  bool lowercase_latin = true;
};

// Applies the cleaning rules in fixed order: punctuation -> diacritics ->
// digits -> lowercase -> whitespace collapse. Idempotent; never increases
// the whitespace-token count. Throws std::invalid_argument if keep_punct
// holds a character that is not punctuation/symbol, or on invalid UTF-8.
std::string NormalizeText(std::string_view text,
                          const NormalizationConfig& config = {});

// Deletes the Arabic diacritic set (harakat U+064B-065F, dagger alif
// U+0670, U+06D6-06ED, tatweel U+0640). Idempotent.
std::string StripDiacritics(std::string_view text);

enum class ScriptClass { kArabic, kLatin, kDigit, kMixed, kOther };

// Arabic/Latin if all letters fall in that block, Mixed if both blocks
// contribute letters, Digit if the token is digits only, Other otherwise.
// Throws std::invalid_argument on an empty token.
ScriptClass ClassifyTokenScript(std::string_view token);

const char* ScriptClassName(ScriptClass script);

// Whitespace tokenization; the token unit shared by WER, CMI and lang_tags
// alignment.
std::vector<std::string> SplitTokens(std::string_view text);

std::string JoinTokens(const std::vector<std::string>& tokens);

}  // namespace csasr

#endif  // CSASR_TEXTNORM_H_
