// csasr/textnorm.cc

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

#include "csasr/textnorm.h"

#include <algorithm>
#include <stdexcept>

#include "csasr/unicode.h"

namespace csasr {

std::string NormalizeText(std::string_view text,
                          const NormalizationConfig& config) {
  for (char32_t cp : config.keep_punct) {
    if (!IsPunctOrSymbol(cp)) {
      std::string repr;
      AppendUtf8(&repr, cp);
      throw std::invalid_argument(
          "keep_punct character '" + repr +
          "' is not classified as punctuation or symbol");
    }
  }
  std::u32string in = DecodeUtf8(text);
  std::u32string kept;
  kept.reserve(in.size());
  for (char32_t cp : in) {
    if (IsPunctOrSymbol(cp) &&
        config.keep_punct.find(cp) == std::u32string::npos) {
      continue;
    }
    if (config.strip_diacritics && IsArabicDiacritic(cp)) continue;
    if (config.map_digits) cp = MapDigitToAscii(cp);
    if (config.lowercase_latin) cp = ToLowerLatin(cp);
    kept.push_back(cp);
  }
  // Collapse whitespace runs to single spaces and trim the ends.
  std::u32string out;
  out.reserve(kept.size());
  bool pending_space = false;
  for (char32_t cp : kept) {
    if (IsWhitespaceChar(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(U' ');
      pending_space = false;
    }
    out.push_back(cp);
  }
  return EncodeUtf8(out);
}

std::string StripDiacritics(std::string_view text) {
  std::u32string in = DecodeUtf8(text);
  std::u32string out;
  out.reserve(in.size());
  for (char32_t cp : in) {
    if (!IsArabicDiacritic(cp)) out.push_back(cp);
  }
  return EncodeUtf8(out);
}

ScriptClass ClassifyTokenScript(std::string_view token) {
  if (token.empty()) {
    throw std::invalid_argument("cannot classify an empty token");
  }
  std::u32string cps = DecodeUtf8(token);
  bool has_arabic = false, has_latin = false, has_other_letter = false;
  bool all_digits = true;
  for (char32_t cp : cps) {
    if (!IsDigitChar(cp)) all_digits = false;
    if (IsArabicLetter(cp)) {
      has_arabic = true;
    } else if (IsLatinLetter(cp)) {
      has_latin = true;
    } else if (!IsDigitChar(cp) && !IsPunctOrSymbol(cp) &&
               !IsWhitespaceChar(cp) && cp > 0x7F) {
      // A letter outside the two scripts of interest (e.g. Cyrillic).
      has_other_letter = true;
    }
  }
  if (has_arabic && has_latin) return ScriptClass::kMixed;
  if (has_arabic && !has_other_letter) return ScriptClass::kArabic;
  if (has_latin && !has_other_letter) return ScriptClass::kLatin;
  if (!has_arabic && !has_latin && !has_other_letter && all_digits) {
    return ScriptClass::kDigit;
  }
  return ScriptClass::kOther;
}

const char* ScriptClassName(ScriptClass script) {
  switch (script) {
    case ScriptClass::kArabic:
      return "arabic";
    case ScriptClass::kLatin:
      return "latin";
    case ScriptClass::kDigit:
      return "digit";
    case ScriptClass::kMixed:
      return "mixed";
    case ScriptClass::kOther:
      return "other";
  }
  return "other";
}

std::vector<std::string> SplitTokens(std::string_view text) {
  std::u32string cps = DecodeUtf8(text);
  std::vector<std::string> tokens;
  std::string current;
  for (char32_t cp : cps) {
    if (IsWhitespaceChar(cp)) {
      if (!current.empty()) {
        tokens.push_back(std::move(current));
        current.clear();
      }
    } else {
      AppendUtf8(&current, cp);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::string JoinTokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace csasr
