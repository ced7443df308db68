// csasr/unicode.h

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

#ifndef CSASR_UNICODE_H_
#define CSASR_UNICODE_H_

#include <string>
#include <string_view>

namespace csasr {

// Strict UTF-8 decoding: rejects overlong forms, surrogates and truncated
// sequences with std::invalid_argument.
std::u32string DecodeUtf8(std::string_view text);

std::string EncodeUtf8(std::u32string_view code_points);

// Appends one code point in UTF-8.
void AppendUtf8(std::string* out, char32_t cp);

// Script and character-class predicates over the blocks this toolkit
// handles (Arabic incl. supplements/presentation forms; Latin through
// Extended-B). They are deliberately table-driven and self-consistent:
// every classification used elsewhere in the library goes through here.
bool IsArabicLetter(char32_t cp);
bool IsLatinLetter(char32_t cp);
bool IsLetter(char32_t cp);

// ASCII 0-9, Arabic-Indic U+0660-0669 and Eastern Arabic-Indic U+06F0-06F9.
bool IsDigitChar(char32_t cp);

// Approximates Unicode general categories P* and S* over the common BMP
// blocks plus the pictograph planes.
bool IsPunctOrSymbol(char32_t cp);

bool IsWhitespaceChar(char32_t cp);

// Arabic harakat and extensions U+064B-065F, dagger alif U+0670, the
// U+06D6-06ED span, and tatweel U+0640.
bool IsArabicDiacritic(char32_t cp);

// '0' + digit value for Arabic-Indic digits, identity otherwise.
char32_t MapDigitToAscii(char32_t cp);

// Lowercases ASCII, Latin-1 and Latin Extended-A letters; identity for
// everything else.
char32_t ToLowerLatin(char32_t cp);

inline bool IsUpperLatin(char32_t cp) { return ToLowerLatin(cp) != cp; }

}  // namespace csasr

#endif  // CSASR_UNICODE_H_
