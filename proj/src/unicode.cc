// csasr/unicode.cc

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

#include "csasr/unicode.h"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace csasr {

namespace {

struct Range {
  char32_t lo;
  char32_t hi;
};

bool InRanges(char32_t cp, const Range* ranges, size_t n) {
  for (size_t i = 0; i < n; ++i) {
    if (cp >= ranges[i].lo && cp <= ranges[i].hi) return true;
  }
  return false;
}

// Punctuation (P*) and symbol (S*) ranges over the blocks that show up in
// broadcast transcripts: ASCII, Latin-1, Arabic punctuation, general and
// supplemental punctuation, currency, arrows/math/geometric/misc symbol
// blocks, CJK symbols, fullwidth forms and the pictograph planes.
constexpr Range kPunctSymbolRanges[] = {
    {0x0021, 0x002F}, {0x003A, 0x0040}, {0x005B, 0x0060}, {0x007B, 0x007E},
    {0x00A1, 0x00A9}, {0x00AB, 0x00AC}, {0x00AE, 0x00B1}, {0x00B4, 0x00B4},
    {0x00B6, 0x00B8}, {0x00BB, 0x00BB}, {0x00BF, 0x00BF}, {0x00D7, 0x00D7},
    {0x00F7, 0x00F7},
    // Arabic punctuation and ornate parentheses.
    {0x060C, 0x060F}, {0x061B, 0x061B}, {0x061E, 0x061F}, {0x066A, 0x066D},
    {0x06D4, 0x06D4}, {0xFD3E, 0xFD3F},
    // General punctuation minus the Zs/Cf code points.
    {0x2010, 0x2027}, {0x2030, 0x205E},
    {0x20A0, 0x20BF},                    // currency
    {0x2116, 0x2116}, {0x2122, 0x2122},  // numero, trade mark
    {0x2190, 0x245F},                    // arrows .. OCR
    {0x2500, 0x2BFF},                    // box drawing .. misc symbols
    {0x2E00, 0x2E52},                    // supplemental punctuation
    {0x3001, 0x3003}, {0x3008, 0x3011}, {0x3014, 0x301F}, {0x3030, 0x3030},
    {0x303D, 0x303D},
    {0xFF01, 0xFF0F}, {0xFF1A, 0xFF20}, {0xFF3B, 0xFF40}, {0xFF5B, 0xFF65},
    {0x1F000, 0x1FBFF},
};

constexpr Range kArabicLetterBlocks[] = {
    {0x0600, 0x06FF}, {0x0750, 0x077F}, {0x08A0, 0x08FF},
    {0xFB50, 0xFDFF}, {0xFE70, 0xFEFF},
};

}  // namespace

std::u32string DecodeUtf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  size_t i = 0;
  auto fail = [&](size_t at) -> void {
    throw std::invalid_argument("invalid UTF-8 at byte offset " +
                                std::to_string(at));
  };
  while (i < text.size()) {
    unsigned char b0 = static_cast<unsigned char>(text[i]);
    char32_t cp = 0;
    size_t len = 0;
    if (b0 < 0x80) {
      cp = b0;
      len = 1;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      len = 4;
    } else {
      fail(i);
    }
    if (i + len > text.size()) fail(i);
    for (size_t k = 1; k < len; ++k) {
      unsigned char b = static_cast<unsigned char>(text[i + k]);
      if ((b & 0xC0) != 0x80) fail(i);
      cp = (cp << 6) | (b & 0x3F);
    }
    // Overlong forms, surrogates, out-of-range.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
        (len == 4 && cp < 0x10000) || (cp >= 0xD800 && cp <= 0xDFFF) ||
        cp > 0x10FFFF) {
      fail(i);
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

void AppendUtf8(std::string* out, char32_t cp) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string EncodeUtf8(std::u32string_view code_points) {
  std::string out;
  out.reserve(code_points.size() * 2);
  for (char32_t cp : code_points) AppendUtf8(&out, cp);
  return out;
}

bool IsArabicDiacritic(char32_t cp) {
  return (cp >= 0x064B && cp <= 0x065F) || cp == 0x0670 ||
         (cp >= 0x06D6 && cp <= 0x06ED) || cp == 0x0640;
}

bool IsDigitChar(char32_t cp) {
  return (cp >= '0' && cp <= '9') || (cp >= 0x0660 && cp <= 0x0669) ||
         (cp >= 0x06F0 && cp <= 0x06F9);
}

char32_t MapDigitToAscii(char32_t cp) {
  if (cp >= 0x0660 && cp <= 0x0669) return '0' + (cp - 0x0660);
  if (cp >= 0x06F0 && cp <= 0x06F9) return '0' + (cp - 0x06F0);
  return cp;
}

bool IsArabicLetter(char32_t cp) {
  if (!InRanges(cp, kArabicLetterBlocks, std::size(kArabicLetterBlocks))) {
    return false;
  }
  if (IsArabicDiacritic(cp) || IsDigitChar(cp) || IsPunctOrSymbol(cp)) {
    return false;
  }
  return true;
}

bool IsLatinLetter(char32_t cp) {
  if ((cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z')) return true;
  if (cp >= 0x00C0 && cp <= 0x00FF) return cp != 0x00D7 && cp != 0x00F7;
  return cp >= 0x0100 && cp <= 0x024F;  // Latin Extended-A and -B
}

bool IsLetter(char32_t cp) { return IsArabicLetter(cp) || IsLatinLetter(cp); }

bool IsPunctOrSymbol(char32_t cp) {
  return InRanges(cp, kPunctSymbolRanges, std::size(kPunctSymbolRanges));
}

bool IsWhitespaceChar(char32_t cp) {
  switch (cp) {
    case 0x09:
    case 0x0A:
    case 0x0B:
    case 0x0C:
    case 0x0D:
    case 0x20:
    case 0x85:
    case 0xA0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

char32_t ToLowerLatin(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 0x20;
  // Latin Extended-A upper/lower pairs.
  if (cp == 0x0130) return 'i';     // dotted capital I
  if (cp == 0x0178) return 0x00FF;  // Y with diaeresis
  if (cp >= 0x0100 && cp <= 0x0137 && cp % 2 == 0) return cp + 1;
  if (cp >= 0x0139 && cp <= 0x0147 && cp % 2 == 1) return cp + 1;
  if (cp >= 0x014A && cp <= 0x0176 && cp % 2 == 0) return cp + 1;
  if (cp >= 0x0179 && cp <= 0x017D && cp % 2 == 1) return cp + 1;
  return cp;
}

}  // namespace csasr
